import numpy as np
import pytest

from cokrig import Design


# normalized gap vector of a 17-station river monitoring network, used
# throughout as the canonical irregular design
XI0_GAPS = (0.04, 0.02, 0.04, 0.09, 0.20, 0.06, 0.12, 0.13,
            0.04, 0.04, 0.02, 0.05, 0.04, 0.07, 0.02, 0.02)


@pytest.fixture
def xi0() -> Design:
    return Design(0.0, 1.0, XI0_GAPS)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240815)
