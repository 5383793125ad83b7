"""Design criteria: worst-case and integrated prediction error.

All criteria live on designs normalized to the unit interval (use
``design.rescale`` first; the exponential kernel only feels the product
of rate and distance, so nothing is lost).  With gaps ``d_i`` and
``w(d) = 1 - exp(-2 theta d)``:

* the simple-kriging error supremum over interval ``i`` is
  ``sigma11 * tanh(theta d_i / 2)``, attained at the midpoint;
* the ordinary variant adds
  ``sigma11 * (1 - 2 e^{-theta d_i/2} / (1 + e^{-theta d_i}))^2 / q0``
  with ``q0 = 1'P^{-1}1``, again peaking at the midpoint;
* the integrated simple-kriging error is
  ``sigma11 * (1 - (n-1)/theta + 2 sum_i phi(d_i))`` with
  ``phi(d) = d e^{-2 theta d} / w(d)``;
* the ordinary variant adds ``sigma11 * sum_i g(d_i) / q0`` where
  ``g(d) = d + (3 (e^{-2 theta d} - 1) + 2 theta d e^{-theta d})
  / (theta (1 + e^{-theta d})^2)``.

Every one of these is symmetric and convex in the gap vector, hence
Schur-convex, which is why the equispaced design minimizes each
criterion and their averages over any decay-rate prior.

Bayes risks average a criterion over a prior on ``theta`` and scale by
the prior mean of ``sigma11`` (criteria are linear in the variance).
The uniform-prior simple-model risks integrate in closed form; all
other combinations use Gauss-Legendre quadrature with node doubling.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from . import kernel as kern
from .design import Design
from .exceptions import DomainError, NumericError
from .kernel import ExponentialKernel

__all__ = [
    "ThetaPrior",
    "CriterionReport",
    "smspe",
    "imspe",
    "smspe_numeric",
    "imspe_numeric",
    "risk_smspe",
    "risk_imspe",
    "relative_efficiency",
]

MODELS = ("simple", "ordinary")

# Gauss-Legendre node counts tried by the risk quadrature: start at 64
# and double until two successive estimates agree to RISK_QUAD_TOL.
RISK_QUAD_START = 64
RISK_QUAD_MAX = 4096
RISK_QUAD_TOL = 1e-9


def _check_model(model: str) -> str:
    if model not in MODELS:
        raise DomainError(f"model must be one of {MODELS}, got {model!r}")
    return model


def _check_kernel(kernel) -> ExponentialKernel:
    if not isinstance(kernel, ExponentialKernel):
        raise DomainError("criteria require an ExponentialKernel")
    return kernel


def _require_unit(design: Design):
    if design.n < 2:
        raise DomainError("criteria need at least two sites")
    if not design.is_unit_interval():
        raise DomainError(
            "criteria are defined for designs on [0, 1]; rescale first"
        )


# --------------------------------------------------------------------------
# prior over the decay rate
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ThetaPrior:
    """Prior on the exponential decay rate, plus the mean variance scale.

    Two kinds are supported: ``uniform`` on ``[theta1, theta2]`` and
    ``tabulated``, a piecewise-linear density given by ``(rate,
    density)`` nodes.  ``e_sigma11`` is the prior mean of the variance
    scale; risks are proportional to it.

    Use the :meth:`uniform` / :meth:`tabulated` constructors.
    """

    kind: str
    theta1: float | None = None
    theta2: float | None = None
    nodes: tuple[tuple[float, float], ...] | None = None
    e_sigma11: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.e_sigma11) and self.e_sigma11 > 0):
            raise DomainError(f"e_sigma11 must be positive, got {self.e_sigma11}")
        if self.kind == "uniform":
            t1, t2 = self.theta1, self.theta2
            if t1 is None or t2 is None or self.nodes is not None:
                raise DomainError("uniform prior takes theta1 and theta2 only")
            if not (np.isfinite(t1) and np.isfinite(t2) and 0 < t1 < t2):
                raise DomainError(f"need 0 < theta1 < theta2, got [{t1}, {t2}]")
        elif self.kind == "tabulated":
            if self.nodes is None or self.theta1 is not None or self.theta2 is not None:
                raise DomainError("tabulated prior takes nodes only")
            t = np.array([p[0] for p in self.nodes], dtype=float)
            r = np.array([p[1] for p in self.nodes], dtype=float)
            if t.size < 2:
                raise DomainError("tabulated prior needs at least two nodes")
            if not np.all(np.isfinite(t)) or not np.all(np.isfinite(r)):
                raise DomainError("prior nodes must be finite")
            if t[0] <= 0 or np.any(np.diff(t) <= 0):
                raise DomainError("prior rates must be positive and strictly increasing")
            if np.any(r < 0):
                raise DomainError("prior density must be nonnegative")
            mass = float(np.trapezoid(r, t))
            if abs(mass - 1.0) > 1e-6:
                raise DomainError(
                    f"tabulated density integrates to {mass!r}, expected 1 "
                    "within 1e-6 under trapezoidal quadrature"
                )
        else:
            raise DomainError(f"prior kind must be 'uniform' or 'tabulated', got {self.kind!r}")

    @classmethod
    def uniform(cls, theta1: float, theta2: float, e_sigma11: float = 1.0) -> "ThetaPrior":
        return cls("uniform", theta1=float(theta1), theta2=float(theta2),
                   e_sigma11=float(e_sigma11))

    @classmethod
    def tabulated(cls, rates, densities, e_sigma11: float = 1.0) -> "ThetaPrior":
        nodes = tuple((float(t), float(r)) for t, r in zip(rates, densities, strict=True))
        return cls("tabulated", nodes=nodes, e_sigma11=float(e_sigma11))

    @property
    def support(self) -> tuple[float, float]:
        if self.kind == "uniform":
            return self.theta1, self.theta2
        return self.nodes[0][0], self.nodes[-1][0]

    def density(self, thetas) -> np.ndarray:
        thetas = np.asarray(thetas, dtype=float)
        if self.kind == "uniform":
            inside = (thetas >= self.theta1) & (thetas <= self.theta2)
            return np.where(inside, 1.0 / (self.theta2 - self.theta1), 0.0)
        t = np.array([p[0] for p in self.nodes])
        r = np.array([p[1] for p in self.nodes])
        return np.interp(thetas, t, r, left=0.0, right=0.0)


# --------------------------------------------------------------------------
# criterion reports
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CriterionReport:
    """A criterion value with its per-interval breakdown.

    For ``smspe`` the entries of ``per_interval`` are each interval's
    error supremum and ``value`` is their maximum; for ``imspe`` they
    are each interval's integral contribution and ``value`` is their
    sum.
    """

    criterion: str
    model: str
    value: float
    per_interval: tuple[float, ...]


# --------------------------------------------------------------------------
# vectorized closed forms (theta may be an array; gaps along last axis)
# --------------------------------------------------------------------------

def _smspe_values(theta, gaps, model: str):
    theta = np.asarray(theta, dtype=float)
    gaps = np.asarray(gaps, dtype=float)
    td = theta[..., None] * gaps
    per = np.tanh(0.5 * td)
    vals = per.max(axis=-1)
    if model == "ordinary":
        e = np.exp(-td)
        u_sup = (1.0 - 2.0 * np.exp(-0.5 * td) / (1.0 + e)) ** 2
        q0 = 1.0 + np.sum(np.tanh(0.5 * td), axis=-1)
        vals = np.max(per + u_sup / q0[..., None], axis=-1)
    return vals


def _imspe_values(theta, gaps, model: str):
    theta = np.asarray(theta, dtype=float)
    gaps = np.asarray(gaps, dtype=float)
    td = theta[..., None] * gaps
    u = np.exp(-2.0 * td)
    phi_sum = np.sum(gaps * u / (1.0 - u), axis=-1)
    k = gaps.shape[-1]
    vals = 1.0 - k / theta + 2.0 * phi_sum
    if model == "ordinary":
        e = np.exp(-td)
        g = gaps + (3.0 * np.expm1(-2.0 * td) + 2.0 * td * e) / (
            theta[..., None] * (1.0 + e) ** 2
        )
        q0 = 1.0 + np.sum(np.tanh(0.5 * td), axis=-1)
        vals = vals + np.sum(g, axis=-1) / q0
    return vals


# --------------------------------------------------------------------------
# criteria on a known kernel
# --------------------------------------------------------------------------

def smspe(kernel: ExponentialKernel, design: Design, model: str = "simple") -> CriterionReport:
    """Supremum of the kriging MSPE over the unit interval.

    The per-interval supremum sits at the interval midpoint and is
    increasing in the gap, so the criterion value is attained on (one
    of) the widest gap(s).
    """
    kernel = _check_kernel(kernel)
    model = _check_model(model)
    _require_unit(design)
    theta, s11 = kernel.theta, kernel.sigma11
    gaps = design.gap_array()
    td = theta * gaps
    per = np.tanh(0.5 * td)
    if model == "ordinary":
        e = np.exp(-td)
        u_sup = (1.0 - 2.0 * np.exp(-0.5 * td) / (1.0 + e)) ** 2
        q0 = kern.ones_quadratic_form(design, theta)
        per = per + u_sup / q0
    per = s11 * per
    return CriterionReport("smspe", model, float(per.max()), tuple(float(v) for v in per))


def imspe(kernel: ExponentialKernel, design: Design, model: str = "simple") -> CriterionReport:
    """Integral of the kriging MSPE over the unit interval."""
    kernel = _check_kernel(kernel)
    model = _check_model(model)
    _require_unit(design)
    theta, s11 = kernel.theta, kernel.sigma11
    gaps = design.gap_array()
    td = theta * gaps
    u = np.exp(-2.0 * td)
    per = gaps + 2.0 * gaps * u / (1.0 - u) - 1.0 / theta
    if model == "ordinary":
        e = np.exp(-td)
        g = gaps + (3.0 * np.expm1(-2.0 * td) + 2.0 * td * e) / (theta * (1.0 + e) ** 2)
        q0 = kern.ones_quadratic_form(design, theta)
        per = per + g / q0
    per = s11 * per
    return CriterionReport("imspe", model, float(per.sum()), tuple(float(v) for v in per))


# --------------------------------------------------------------------------
# brute-force numeric versions (oracles for the closed forms)
# --------------------------------------------------------------------------

def smspe_numeric(
    kernel: ExponentialKernel,
    design: Design,
    model: str = "simple",
    grid_points_per_interval: int = 64,
) -> float:
    """Grid maximum of the pointwise MSPE, midpoints always included.

    A deliberately naive check on :func:`smspe`: evaluates the closed
    pointwise error on a uniform grid in every interval, plus the exact
    midpoints where the suprema live.
    """
    kernel = _check_kernel(kernel)
    model = _check_model(model)
    _require_unit(design)
    if grid_points_per_interval < 64:
        raise DomainError(
            f"need at least 64 grid points per interval, got {grid_points_per_interval}"
        )
    theta, s11 = kernel.theta, kernel.sigma11
    q0 = kern.ones_quadratic_form(design, theta)
    best = 0.0
    for d in design.gaps:
        a = np.linspace(0.0, d, grid_points_per_interval)
        a = np.append(a, 0.5 * d)
        w = -np.expm1(-2.0 * theta * d)
        s_quad = (np.exp(-2.0 * theta * a) - 2.0 * np.exp(-2.0 * theta * d)
                  + np.exp(-2.0 * theta * (d - a))) / w
        vals = s11 * (1.0 - s_quad)
        if model == "ordinary":
            t = (np.exp(-theta * a) + np.exp(-theta * (d - a))) / (1.0 + np.exp(-theta * d))
            vals = vals + s11 * (1.0 - t) ** 2 / q0
        best = max(best, float(vals.max()))
    return best


def imspe_numeric(
    kernel: ExponentialKernel,
    design: Design,
    model: str = "simple",
    tol: float = 1e-10,
) -> float:
    """Adaptive-quadrature integral of the pointwise MSPE.

    Integrates interval by interval (the integrand is smooth inside
    each gap and kinked at the sites).  Raises ``NumericError`` if any
    panel fails to converge to ``tol``.
    """
    from .predict import mspe_closed_form

    kernel = _check_kernel(kernel)
    model = _check_model(model)
    _require_unit(design)
    if not (np.isfinite(tol) and tol > 0):
        raise DomainError(f"tol must be positive, got {tol}")
    pts = design.points
    total = 0.0
    for i in range(design.n - 1):
        val, err = integrate.quad(
            lambda x: mspe_closed_form(kernel, design, x, model),
            pts[i], pts[i + 1], epsabs=tol / design.n, epsrel=1e-12, limit=200,
        )
        if not np.isfinite(val) or err > max(tol, 1e-8):
            raise NumericError(
                f"quadrature failed on interval {i}: estimate {val}, error {err}"
            )
        total += val
    return total


# --------------------------------------------------------------------------
# Bayes risks
# --------------------------------------------------------------------------

def _check_prior(prior) -> ThetaPrior:
    if not isinstance(prior, ThetaPrior):
        raise DomainError("risk criteria require a ThetaPrior")
    return prior


@lru_cache(maxsize=16)
def _leggauss(m: int):
    return np.polynomial.legendre.leggauss(m)


def _prior_average(prior: ThetaPrior, values_of_theta) -> float:
    """Average ``values_of_theta(theta_array)`` over the prior.

    Gauss-Legendre quadrature, doubling the node count until two
    successive estimates agree to ``RISK_QUAD_TOL``.  A tabulated
    density is only piecewise smooth, so the quadrature runs segment by
    segment between its nodes; Gauss-Legendre stalls across kinks.
    """
    if prior.kind == "tabulated":
        cuts = [p[0] for p in prior.nodes]
    else:
        cuts = list(prior.support)

    total = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        m = RISK_QUAD_START
        prev = None
        while True:
            x, w = _leggauss(m)
            thetas = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
            weights = 0.5 * (hi - lo) * w
            est = float(np.sum(weights * values_of_theta(thetas) * prior.density(thetas)))
            if prev is not None and abs(est - prev) < RISK_QUAD_TOL:
                total += est
                break
            if m >= RISK_QUAD_MAX:
                raise NumericError(
                    f"risk quadrature did not stabilize to {RISK_QUAD_TOL} "
                    f"within {RISK_QUAD_MAX} nodes on [{lo}, {hi}]"
                )
            prev = est
            m *= 2
    return total


def risk_smspe(prior: ThetaPrior, design: Design, model: str = "simple") -> float:
    """Prior-averaged supremum criterion.

    For the uniform prior and the simple model the theta-integral of
    ``tanh(theta d_max / 2)`` is ``log cosh``, giving the closed form

        ``E_sigma * [1 + 2 (log1p(e^{-t2 d}) - log1p(e^{-t1 d}))
                       / (d (t2 - t1))]``

    with ``d`` the widest gap.  Everything else goes through the prior
    quadrature.
    """
    prior = _check_prior(prior)
    model = _check_model(model)
    _require_unit(design)
    gaps = design.gap_array()
    if model == "simple" and prior.kind == "uniform":
        d = float(gaps.max())
        t1, t2 = prior.theta1, prior.theta2
        bracket = np.log1p(np.exp(-t2 * d)) - np.log1p(np.exp(-t1 * d))
        return prior.e_sigma11 * (1.0 + 2.0 * bracket / (d * (t2 - t1)))
    value = _prior_average(prior, lambda th: _smspe_values(th, gaps, model))
    return prior.e_sigma11 * value


def risk_imspe(prior: ThetaPrior, design: Design, model: str = "simple") -> float:
    """Prior-averaged integrated criterion.

    For the uniform prior and the simple model:

        ``E_sigma * [1 - (n-1) log(t2/t1) / (t2 - t1)
                       + sum_i (log1p(-e^{-2 t2 d_i}) - log1p(-e^{-2 t1 d_i}))
                         / (t2 - t1)]``.

    Everything else goes through the prior quadrature.
    """
    prior = _check_prior(prior)
    model = _check_model(model)
    _require_unit(design)
    gaps = design.gap_array()
    if model == "simple" and prior.kind == "uniform":
        t1, t2 = prior.theta1, prior.theta2
        span = t2 - t1
        bracket = np.log1p(-np.exp(-2.0 * t2 * gaps)) - np.log1p(-np.exp(-2.0 * t1 * gaps))
        value = 1.0 - gaps.size * np.log(t2 / t1) / span + float(np.sum(bracket)) / span
        return prior.e_sigma11 * value
    value = _prior_average(prior, lambda th: _imspe_values(th, gaps, model))
    return prior.e_sigma11 * value


def relative_efficiency(reference_value: float, candidate_value: float) -> float:
    """Ratio of a reference (usually optimal) criterion to a candidate's.

    Both values must be positive; a candidate no better than the
    reference yields a ratio in (0, 1].
    """
    if not (np.isfinite(reference_value) and reference_value > 0):
        raise DomainError(f"reference value must be positive, got {reference_value}")
    if not (np.isfinite(candidate_value) and candidate_value > 0):
        raise DomainError(f"candidate value must be positive, got {candidate_value}")
    return float(reference_value) / float(candidate_value)
