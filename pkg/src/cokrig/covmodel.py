"""Bivariate covariance models for a pair of collocated processes.

The package predicts the primary process ``Z1`` using both its own
observations and those of a secondary process ``Z2`` recorded at the
same sites.  A model here supplies the three stationary covariance
functions ``C11``, ``C12``, ``C22`` of distance.  Eight families are
implemented:

========================  ====================================================
``GeneralizedMarkov``     ``C12`` proportional to ``C11``; ``C22`` adds an
                          independent residual on top of the shared component.
``Proportional``          a single correlogram scaled by a 2x2 coefficient
                          matrix (intrinsic coregionalization).
``NS1``                   exponential direct covariances; ``C22`` mixes two
                          decay ranges.  Representable as GeneralizedMarkov.
``Mat05/Mat15/MatInf``    proportional models with exponential, once-
                          differentiable and Gaussian-shaped correlograms.
``NS2``                   exponential direct covariances with a *slower*
                          decaying cross term; genuinely non-reducible.
``NS3``                   different smoothness for each process (exponential
                          vs. twice-differentiable); non-reducible.
========================  ====================================================

For every family with ``C12 = c * C11`` the secondary observations add
nothing to the best linear predictor of ``Z1``; ``reduction_applies``
reports that constant so callers can drop to plain kriging.

Model constructors check only that parameters are evaluable (finite,
positive variances, decay bases inside (0, 1)).  Whether the *joint*
model is a valid covariance is the job of :func:`validate`, which
returns a report instead of raising so that boundary cases can be
constructed and inspected deliberately.
"""

import math
from dataclasses import dataclass

import numpy as np

from .design import Design
from .exceptions import DomainError, ParseError

__all__ = [
    "Correlogram",
    "ExponentialCorrelogram",
    "SquaredExponentialCorrelogram",
    "Matern15Correlogram",
    "NuggetCorrelogram",
    "ValidityReport",
    "BivariateCovariance",
    "GeneralizedMarkov",
    "Proportional",
    "NS1",
    "Mat05",
    "Mat15",
    "MatInf",
    "NS2",
    "NS3",
    "eval_pair",
    "build_joint_covariance",
    "build_cross_vector",
    "validate",
    "reduction_applies",
    "parse_config",
    "format_config",
]

# Cross-correlation bound for NS3, from comparing the spectral densities
# of the three half-integer-smoothness correlograms involved: the ratio
# s12(u)^2 / (s11(u) s22(u)) is constant in frequency and equals
# 3/2 * lamc^2, so the joint model is valid iff lamc^2 <= 2/3.
NS3_CROSS_BOUND = math.sqrt(2.0 / 3.0)


# --------------------------------------------------------------------------
# correlograms (unit-variance correlation functions of distance)
# --------------------------------------------------------------------------

def _as_distance(h) -> np.ndarray:
    return np.abs(np.asarray(h, dtype=float))


class Correlogram:
    """Correlation function of distance; subclasses define ``value``."""

    kind = "abstract"

    def value(self, h):
        raise NotImplementedError

    def __call__(self, h):
        return self.value(h)


@dataclass(frozen=True)
class ExponentialCorrelogram(Correlogram):
    """``exp(-rate * h)``, the rough Markovian correlogram."""

    rate: float
    kind = "exponential"

    def __post_init__(self):
        if not (np.isfinite(self.rate) and self.rate > 0):
            raise DomainError(f"decay rate must be positive, got {self.rate}")

    @classmethod
    def from_base(cls, base: float) -> "ExponentialCorrelogram":
        """Same correlogram parametrized as ``base ** h`` with base in (0, 1)."""
        if not (np.isfinite(base) and 0.0 < base < 1.0):
            raise DomainError(f"base must lie in (0, 1), got {base}")
        return cls(-math.log(base))

    @property
    def base(self) -> float:
        return math.exp(-self.rate)

    def value(self, h):
        return np.exp(-self.rate * _as_distance(h))


@dataclass(frozen=True)
class SquaredExponentialCorrelogram(Correlogram):
    """``base ** (h^2)``: infinitely smooth, Gaussian-shaped."""

    base: float
    kind = "squared-exponential"

    def __post_init__(self):
        if not (np.isfinite(self.base) and 0.0 < self.base < 1.0):
            raise DomainError(f"base must lie in (0, 1), got {self.base}")

    def value(self, h):
        hh = _as_distance(h)
        return np.exp(math.log(self.base) * hh * hh)


@dataclass(frozen=True)
class Matern15Correlogram(Correlogram):
    """``(1 + rate * h) * exp(-rate * h)`` with ``rate = -log(base)``.

    Once mean-square differentiable, between the exponential and the
    squared-exponential in smoothness.
    """

    base: float
    kind = "matern15"

    def __post_init__(self):
        if not (np.isfinite(self.base) and 0.0 < self.base < 1.0):
            raise DomainError(f"base must lie in (0, 1), got {self.base}")

    @property
    def rate(self) -> float:
        return -math.log(self.base)

    def value(self, h):
        hh = _as_distance(h)
        return (1.0 + self.rate * hh) * np.exp(-self.rate * hh)


@dataclass(frozen=True)
class NuggetCorrelogram(Correlogram):
    """1 at distance zero, 0 elsewhere (white-noise residual)."""

    kind = "nugget"

    def value(self, h):
        return np.where(_as_distance(h) == 0.0, 1.0, 0.0)


# --------------------------------------------------------------------------
# validity reporting
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidityReport:
    """Outcome of a family validity check.

    ``violations`` are conditions under which the joint model is not a
    valid covariance; ``warnings`` flag legal but delicate choices
    (white-noise residuals, nonstandard parameter pairings).
    """

    violations: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


# --------------------------------------------------------------------------
# families
# --------------------------------------------------------------------------

class BivariateCovariance:
    """Base class; subclasses provide ``cov11``, ``cov12``, ``cov22``
    plus a ``sigma11`` attribute giving the primary marginal variance."""

    family = "abstract"

    def cov11(self, h):
        raise NotImplementedError

    def cov12(self, h):
        raise NotImplementedError

    def cov22(self, h):
        raise NotImplementedError

    def cov(self, i: int, j: int, h):
        """Covariance between processes ``i`` and ``j`` at distance ``h``."""
        pair = (i, j)
        if pair == (1, 1):
            return self.cov11(h)
        if pair in ((1, 2), (2, 1)):
            return self.cov12(h)
        if pair == (2, 2):
            return self.cov22(h)
        raise DomainError(f"process indices must be 1 or 2, got {pair}")

    def validity(self) -> "ValidityReport":
        raise NotImplementedError

    def reduction_constant(self) -> float | None:
        """Constant ``c`` with ``C12 = c * C11``, or None if there is none."""
        return None


def _check_pair_params(sigma11, sigma22, lam, lamc):
    if not (np.isfinite(sigma11) and sigma11 > 0 and np.isfinite(sigma22) and sigma22 > 0):
        raise DomainError("variances must be positive and finite")
    if not (np.isfinite(lam) and 0.0 < lam < 1.0):
        raise DomainError(f"decay base must lie in (0, 1), got {lam}")
    if not np.isfinite(lamc):
        raise DomainError("cross coefficient must be finite")


def _basic_pair_checks(m, violations: list[str]):
    if not (np.isfinite(m.lamc) and abs(m.lamc) < 1.0):
        violations.append(f"cross coefficient must lie in (-1, 1), got {m.lamc}")


@dataclass(frozen=True)
class GeneralizedMarkov(BivariateCovariance):
    """Shared-component model: ``Z2`` regresses on ``Z1`` plus residual.

    ``C11 = sigma11 * c11(h)``, ``C12 = rho * C11`` and
    ``C22 = rho^2 * C11 + (sigma22 - rho^2 * sigma11) * c_r(h)``.
    Valid whenever the residual variance ``sigma22 - rho^2 * sigma11``
    is positive; ``c11`` and ``c_r`` may be any correlograms.

    Since ``C12`` is proportional to ``C11``, secondary data never
    improve the primary predictor in this family.
    """

    sigma11: float
    sigma22: float
    rho: float
    c11: Correlogram
    c_r: Correlogram

    family = "generalized-markov"

    def __post_init__(self):
        for name in ("sigma11", "sigma22", "rho"):
            if not np.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.sigma11 <= 0 or self.sigma22 <= 0:
            raise DomainError("variances must be positive")

    @property
    def residual_margin(self) -> float:
        return self.sigma22 - self.rho**2 * self.sigma11

    def cov11(self, h):
        return self.sigma11 * self.c11.value(h)

    def cov12(self, h):
        return self.rho * self.sigma11 * self.c11.value(h)

    def cov22(self, h):
        shared = self.rho**2 * self.sigma11 * self.c11.value(h)
        return shared + self.residual_margin * self.c_r.value(h)

    def validity(self) -> ValidityReport:
        violations: list[str] = []
        warnings: list[str] = []
        if abs(self.rho) >= 1.0:
            violations.append(f"|rho| must be below 1, got {self.rho}")
        if self.residual_margin <= 0:
            violations.append(
                f"residual variance sigma22 - rho^2*sigma11 = "
                f"{self.residual_margin} must be positive"
            )
        if self.c_r.kind == "nugget":
            warnings.append(
                "residual correlogram is a nugget: the secondary residual is "
                "white noise, fine on a finite design but not a continuous field"
            )
        return ValidityReport(tuple(violations), tuple(warnings))

    def reduction_constant(self) -> float | None:
        return self.rho


@dataclass(frozen=True)
class Proportional(BivariateCovariance):
    """One correlogram, all three covariances scaled from it.

    ``Cij = sigma_ij * base(h)``.  Valid iff the coefficient matrix
    ``[[sigma11, sigma12], [sigma12, sigma22]]`` is positive definite.
    """

    sigma11: float
    sigma12: float
    sigma22: float
    base: Correlogram

    family = "proportional"

    def __post_init__(self):
        for name in ("sigma11", "sigma12", "sigma22"):
            if not np.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.sigma11 <= 0 or self.sigma22 <= 0:
            raise DomainError("variances must be positive")

    def cov11(self, h):
        return self.sigma11 * self.base.value(h)

    def cov12(self, h):
        return self.sigma12 * self.base.value(h)

    def cov22(self, h):
        return self.sigma22 * self.base.value(h)

    def validity(self) -> ValidityReport:
        violations: list[str] = []
        det = self.sigma11 * self.sigma22 - self.sigma12**2
        if det <= 0:
            violations.append(
                f"coefficient matrix determinant {det} must be positive"
            )
        return ValidityReport(tuple(violations))

    def reduction_constant(self) -> float | None:
        return self.sigma12 / self.sigma11


@dataclass(frozen=True)
class NS1(BivariateCovariance):
    """Two-range secondary process over a shared exponential component.

    ``C11 = sigma11 * lam^h``, ``C12 = sqrt(sigma11 sigma22) * lamc * lam^h``
    and ``C22 = sigma22 * (lamc^2 * lam^h + (1 - lamc^2) * lam^{2h})``.
    The cross covariance is proportional to ``C11``, so this is a
    GeneralizedMarkov model in disguise with ``rho = lamc *
    sqrt(sigma22/sigma11)`` and an exponential residual of base
    ``lam^2``.
    """

    sigma11: float
    sigma22: float
    lam: float
    lamc: float

    family = "ns1"

    def __post_init__(self):
        _check_pair_params(self.sigma11, self.sigma22, self.lam, self.lamc)

    def cov11(self, h):
        hh = _as_distance(h)
        return self.sigma11 * self.lam**hh

    def cov12(self, h):
        hh = _as_distance(h)
        return math.sqrt(self.sigma11 * self.sigma22) * self.lamc * self.lam**hh

    def cov22(self, h):
        hh = _as_distance(h)
        lc2 = self.lamc**2
        return self.sigma22 * (lc2 * self.lam**hh + (1.0 - lc2) * self.lam ** (2.0 * hh))

    def validity(self) -> ValidityReport:
        violations: list[str] = []
        _basic_pair_checks(self, violations)
        return ValidityReport(tuple(violations))

    def reduction_constant(self) -> float | None:
        return self.lamc * math.sqrt(self.sigma22 / self.sigma11)


@dataclass(frozen=True)
class _ProportionalPair(BivariateCovariance):
    """Shared plumbing for the proportional fixed-correlogram families."""

    sigma11: float
    sigma22: float
    lam: float
    lamc: float

    def __post_init__(self):
        _check_pair_params(self.sigma11, self.sigma22, self.lam, self.lamc)

    def _corr(self) -> Correlogram:
        raise NotImplementedError

    @property
    def sigma12(self) -> float:
        return math.sqrt(self.sigma11 * self.sigma22) * self.lamc

    def cov11(self, h):
        return self.sigma11 * self._corr().value(h)

    def cov12(self, h):
        return self.sigma12 * self._corr().value(h)

    def cov22(self, h):
        return self.sigma22 * self._corr().value(h)

    def validity(self) -> ValidityReport:
        violations: list[str] = []
        _basic_pair_checks(self, violations)
        return ValidityReport(tuple(violations))

    def reduction_constant(self) -> float | None:
        return self.sigma12 / self.sigma11


@dataclass(frozen=True)
class Mat05(_ProportionalPair):
    """Proportional model on the exponential correlogram ``lam^h``."""

    family = "mat05"

    def _corr(self) -> Correlogram:
        return ExponentialCorrelogram.from_base(self.lam)


@dataclass(frozen=True)
class Mat15(_ProportionalPair):
    """Proportional model on the once-differentiable correlogram
    ``(1 - h log(lam)) * lam^h``."""

    family = "mat15"

    def _corr(self) -> Correlogram:
        return Matern15Correlogram(self.lam)


@dataclass(frozen=True)
class MatInf(_ProportionalPair):
    """Proportional model on the Gaussian-shaped correlogram ``lam^{h^2}``."""

    family = "matinf"

    def _corr(self) -> Correlogram:
        return SquaredExponentialCorrelogram(self.lam)


# Published pairings of cross coefficient and cross decay exponent for
# the slow-cross family; other combinations need an explicit exponent.
NS2_STANDARD_PAIRS = ((0.2, 0.5), (0.5, 0.75), (0.8, 0.9))


def _ns2_standard_alpha(lamc: float) -> float | None:
    for lc, alpha in NS2_STANDARD_PAIRS:
        if abs(lamc - lc) <= 1e-9:
            return alpha
    return None


@dataclass(frozen=True)
class NS2(BivariateCovariance):
    """Exponential margins with a slower-decaying cross covariance.

    ``C11 = sigma11 * lam^h``, ``C22 = sigma22 * lam^h`` and
    ``C12 = sqrt(sigma11 sigma22) * lamc * lam^{alpha h}`` with
    ``0 < alpha < 1``.  The cross term is *not* proportional to
    ``C11``, so secondary observations genuinely improve primary
    prediction.

    ``alpha`` may be omitted for the published coefficient values
    (0.2, 0.5, 0.8), which map to exponents (0.5, 0.75, 0.9).  In
    frequency space the validity requirement is ``|lamc| <= alpha``;
    every published pairing satisfies it.
    """

    sigma11: float
    sigma22: float
    lam: float
    lamc: float
    alpha: float | None = None

    family = "ns2"

    def __post_init__(self):
        _check_pair_params(self.sigma11, self.sigma22, self.lam, self.lamc)
        alpha = self.alpha
        if alpha is None:
            alpha = _ns2_standard_alpha(self.lamc)
            if alpha is None:
                raise DomainError(
                    f"no standard cross exponent for lamc = {self.lamc}; "
                    "pass alpha explicitly"
                )
            object.__setattr__(self, "alpha", alpha)
        elif not (np.isfinite(alpha) and 0.0 < alpha < 1.0):
            raise DomainError(f"cross exponent must lie in (0, 1), got {alpha}")

    def cov11(self, h):
        hh = _as_distance(h)
        return self.sigma11 * self.lam**hh

    def cov12(self, h):
        hh = _as_distance(h)
        root = math.sqrt(self.sigma11 * self.sigma22)
        return root * self.lamc * self.lam ** (self.alpha * hh)

    def cov22(self, h):
        hh = _as_distance(h)
        return self.sigma22 * self.lam**hh

    def validity(self) -> ValidityReport:
        violations: list[str] = []
        warnings: list[str] = []
        _basic_pair_checks(self, violations)
        if abs(self.lamc) > self.alpha * (1.0 + 1e-12):
            violations.append(
                f"|lamc| = {abs(self.lamc)} exceeds the cross exponent "
                f"{self.alpha}: the cross covariance outlives the direct "
                "ones and the joint model is indefinite"
            )
        std = _ns2_standard_alpha(self.lamc)
        if std is None or abs(std - self.alpha) > 1e-9:
            warnings.append(
                f"nonstandard pairing (lamc={self.lamc}, alpha={self.alpha}); "
                "published models use " + repr(NS2_STANDARD_PAIRS)
            )
        return ValidityReport(tuple(violations), tuple(warnings))


@dataclass(frozen=True)
class NS3(BivariateCovariance):
    """Rough primary, smooth secondary; intermediate cross smoothness.

    With ``r = -log(lam)``: ``C11 = sigma11 * exp(-r h)``,
    ``C22 = sigma22 * (1 + r h + (r h)^2 / 3) * exp(-r h)`` and
    ``C12 = sqrt(sigma11 sigma22) * lamc * (1 + r h) * exp(-r h)``.
    No proportionality, so secondary observations carry information.
    Valid iff ``|lamc| <= sqrt(2/3)`` (see ``NS3_CROSS_BOUND``).
    """

    sigma11: float
    sigma22: float
    lam: float
    lamc: float

    family = "ns3"

    def __post_init__(self):
        _check_pair_params(self.sigma11, self.sigma22, self.lam, self.lamc)

    @property
    def rate(self) -> float:
        return -math.log(self.lam)

    def cov11(self, h):
        hh = _as_distance(h)
        return self.sigma11 * np.exp(-self.rate * hh)

    def cov12(self, h):
        hh = _as_distance(h)
        root = math.sqrt(self.sigma11 * self.sigma22)
        return root * self.lamc * (1.0 + self.rate * hh) * np.exp(-self.rate * hh)

    def cov22(self, h):
        hh = _as_distance(h)
        rh = self.rate * hh
        return self.sigma22 * (1.0 + rh + rh**2 / 3.0) * np.exp(-rh)

    def validity(self) -> ValidityReport:
        violations: list[str] = []
        _basic_pair_checks(self, violations)
        if abs(self.lamc) > NS3_CROSS_BOUND * (1.0 + 1e-12):
            violations.append(
                f"|lamc| = {abs(self.lamc)} exceeds {NS3_CROSS_BOUND:.6f}, the "
                "spectral bound for this smoothness combination"
            )
        return ValidityReport(tuple(violations))


# --------------------------------------------------------------------------
# module-level operations
# --------------------------------------------------------------------------

def eval_pair(model: BivariateCovariance, i: int, j: int, h):
    """Covariance ``C_ij`` at distance(s) ``h`` (scalar in, scalar out)."""
    out = model.cov(i, j, h)
    if np.isscalar(h) or np.ndim(h) == 0:
        return float(out)
    return out


def build_joint_covariance(model: BivariateCovariance, design: Design) -> np.ndarray:
    """Dense ``2n x 2n`` covariance of the stacked vector ``(Z1, Z2)``.

    Ordering is all primary observations first, then all secondary
    ones, matching the layout used by the cokriging solvers.
    """
    pts = design.points
    H = np.abs(pts[:, None] - pts[None, :])
    k11 = np.asarray(model.cov11(H), dtype=float)
    k12 = np.asarray(model.cov12(H), dtype=float)
    k22 = np.asarray(model.cov22(H), dtype=float)
    return np.block([[k11, k12], [k12.T, k22]])


def build_cross_vector(
    model: BivariateCovariance, design: Design, x0: float
) -> tuple[np.ndarray, float]:
    """Covariances between ``Z1(x0)`` and the stacked observations.

    Returns the length-``2n`` vector ``(C11(|x - x0|), C12(|x - x0|))``
    together with the target variance ``C11(0)``.
    """
    h0 = np.abs(design.points - float(x0))
    vec = np.concatenate([
        np.asarray(model.cov11(h0), dtype=float),
        np.asarray(model.cov12(h0), dtype=float),
    ])
    return vec, float(model.cov11(0.0))


def validate(model: BivariateCovariance) -> ValidityReport:
    """Full validity check for the family; see :class:`ValidityReport`."""
    return model.validity()


def reduction_applies(model: BivariateCovariance) -> tuple[bool, float | None]:
    """Whether ``C12 = c * C11`` for some constant, and that constant.

    When true, cokriging the primary process collapses to plain kriging
    on the primary data alone: the candidate solution with zero weight
    on the secondary block already satisfies the cokriging equations.
    """
    c = model.reduction_constant()
    return (c is not None), c


# --------------------------------------------------------------------------
# key = value config serialization
# --------------------------------------------------------------------------

_CORR_KINDS = ("exponential", "squared-exponential", "matern15", "nugget")


def _build_correlogram(prefix: str, kind: str, params: dict[str, float], lineno):
    if kind == "nugget":
        if params:
            raise ParseError(f"{prefix}: nugget takes no parameters", lineno)
        return NuggetCorrelogram()
    if kind == "exponential":
        if set(params) == {"theta"}:
            return ExponentialCorrelogram(params["theta"])
        if set(params) == {"lambda"}:
            return ExponentialCorrelogram.from_base(params["lambda"])
        raise ParseError(
            f"{prefix}: exponential needs exactly one of "
            f"'{prefix}.theta' or '{prefix}.lambda'", lineno)
    if kind == "squared-exponential":
        if set(params) == {"lambda"}:
            return SquaredExponentialCorrelogram(params["lambda"])
        raise ParseError(f"{prefix}: squared-exponential needs '{prefix}.lambda'", lineno)
    if kind == "matern15":
        if set(params) == {"lambda"}:
            return Matern15Correlogram(params["lambda"])
        raise ParseError(f"{prefix}: matern15 needs '{prefix}.lambda'", lineno)
    raise ParseError(f"{prefix}: unknown correlogram kind '{kind}', "
                     f"expected one of {_CORR_KINDS}", lineno)


def _format_correlogram(prefix: str, corr: Correlogram) -> list[str]:
    if isinstance(corr, NuggetCorrelogram):
        return [f"{prefix}.kind = nugget"]
    if isinstance(corr, ExponentialCorrelogram):
        return [f"{prefix}.kind = exponential", f"{prefix}.theta = {corr.rate!r}"]
    if isinstance(corr, SquaredExponentialCorrelogram):
        return [f"{prefix}.kind = squared-exponential", f"{prefix}.lambda = {corr.base!r}"]
    if isinstance(corr, Matern15Correlogram):
        return [f"{prefix}.kind = matern15", f"{prefix}.lambda = {corr.base!r}"]
    raise DomainError(f"cannot serialize correlogram {corr!r}")


class _Entries:
    """Parsed key/value lines with line numbers, consumed key by key."""

    def __init__(self, text: str):
        self.data: dict[str, tuple[int, str]] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip().lower(), value.strip()
            if not sep or not key or not value:
                raise ParseError(f"expected 'key = value', got {raw.strip()!r}", lineno)
            if key in self.data:
                raise ParseError(f"duplicate key '{key}'", lineno)
            self.data[key] = (lineno, value)

    def take(self, key: str) -> str:
        if key not in self.data:
            raise ParseError(f"missing required key '{key}'")
        return self.data.pop(key)[1]

    def take_float(self, key: str) -> float:
        if key not in self.data:
            raise ParseError(f"missing required key '{key}'")
        lineno, value = self.data.pop(key)
        try:
            return float(value)
        except ValueError:
            raise ParseError(f"'{key}' must be a number, got {value!r}", lineno) from None

    def take_optional_float(self, key: str) -> float | None:
        if key not in self.data:
            return None
        return self.take_float(key)

    def take_correlogram(self, prefix: str):
        kind_key = f"{prefix}.kind"
        lineno = self.data.get(kind_key, (None,))[0]
        kind = self.take(kind_key)
        params = {}
        for pname in ("theta", "lambda"):
            v = self.take_optional_float(f"{prefix}.{pname}")
            if v is not None:
                params[pname] = v
        return _build_correlogram(prefix, kind, params, lineno)

    def finish(self):
        if self.data:
            lineno = min(ln for ln, _ in self.data.values())
            keys = ", ".join(sorted(self.data))
            raise ParseError(f"unknown key(s): {keys}", lineno)


def parse_config(text: str) -> BivariateCovariance:
    """Build a covariance model from ``key = value`` config text.

    The grammar is one ``key = value`` pair per line with ``#``
    comments; see the command-line module for the full key listing per
    family.  Unknown or missing keys raise :class:`ParseError` with the
    offending line number.
    """
    entries = _Entries(text)
    family = entries.take("family").lower()
    try:
        if family == "generalized-markov":
            model = GeneralizedMarkov(
                entries.take_float("sigma11"),
                entries.take_float("sigma22"),
                entries.take_float("rho"),
                entries.take_correlogram("c11"),
                entries.take_correlogram("cr"),
            )
        elif family == "proportional":
            model = Proportional(
                entries.take_float("sigma11"),
                entries.take_float("sigma12"),
                entries.take_float("sigma22"),
                entries.take_correlogram("base"),
            )
        elif family in ("ns1", "mat05", "mat15", "matinf", "ns3"):
            cls = {"ns1": NS1, "mat05": Mat05, "mat15": Mat15,
                   "matinf": MatInf, "ns3": NS3}[family]
            model = cls(
                entries.take_float("sigma11"),
                entries.take_float("sigma22"),
                entries.take_float("lambda"),
                entries.take_float("lambdac"),
            )
        elif family == "ns2":
            model = NS2(
                entries.take_float("sigma11"),
                entries.take_float("sigma22"),
                entries.take_float("lambda"),
                entries.take_float("lambdac"),
                entries.take_optional_float("alpha"),
            )
        else:
            raise ParseError(f"unknown family '{family}'")
    except DomainError as exc:
        raise ParseError(f"invalid parameters for family '{family}': {exc}") from exc
    entries.finish()
    return model


def format_config(model: BivariateCovariance) -> str:
    """Serialize a model to the config text accepted by ``parse_config``."""
    lines: list[str]
    if isinstance(model, GeneralizedMarkov):
        lines = ["family = generalized-markov",
                 f"sigma11 = {model.sigma11!r}",
                 f"sigma22 = {model.sigma22!r}",
                 f"rho = {model.rho!r}"]
        lines += _format_correlogram("c11", model.c11)
        lines += _format_correlogram("cr", model.c_r)
    elif isinstance(model, Proportional):
        lines = ["family = proportional",
                 f"sigma11 = {model.sigma11!r}",
                 f"sigma12 = {model.sigma12!r}",
                 f"sigma22 = {model.sigma22!r}"]
        lines += _format_correlogram("base", model.base)
    elif isinstance(model, (NS1, Mat05, Mat15, MatInf, NS2, NS3)):
        lines = [f"family = {model.family}",
                 f"sigma11 = {model.sigma11!r}",
                 f"sigma22 = {model.sigma22!r}",
                 f"lambda = {model.lam!r}",
                 f"lambdac = {model.lamc!r}"]
        if isinstance(model, NS2):
            lines.append(f"alpha = {model.alpha!r}")
    else:
        raise DomainError(f"cannot serialize model {model!r}")
    return "\n".join(lines) + "\n"
