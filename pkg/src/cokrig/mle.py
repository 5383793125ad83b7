"""Maximum-likelihood fitting of the shared-component covariance model.

The model fitted here suits collocated monitoring data: a primary
process with exponential correlation ``exp(-theta h)`` and variance
``sigma11``, secondary process regressing on the primary with slope
``rho`` plus an independent white-noise residual, so that

    C11 = sigma11 exp(-theta h),   C12 = rho C11,
    C22 = rho^2 C11 + (sigma22 - rho^2 sigma11) 1{h = 0}.

Under that structure the joint likelihood of the stacked vector
factorizes exactly: ``Z1 ~ N(0, sigma11 P)`` and, conditionally,
``Z2 - rho Z1 ~ N(0, tau I)`` with ``tau = sigma22 - rho^2 sigma11``.
Both pieces are cheap (the precision of ``P`` is tridiagonal), and the
factorized form makes the validity constraint ``tau > 0`` explicit.

Fitting reparametrizes to ``(log theta, log sigma11, log tau,
artanh rho)`` so every iterate of the derivative-free search is a valid
model by construction, and runs Nelder-Mead from four deterministic
decay-rate starts.  Standard errors come from a finite-difference
Hessian of the negative log-likelihood in the natural parameters.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize as spopt

from . import kernel as kern
from .design import Design
from .exceptions import ConditioningError, DomainError, NumericError

__all__ = [
    "MleFit",
    "loglikelihood",
    "fit_mle",
    "simulate_observations",
    "MLE_THETA_STARTS",
]

# Deterministic decay-rate starting points for the multi-start search.
MLE_THETA_STARTS = (2.0, 8.0, 32.0, 128.0)

_PENALTY = 1e12


@dataclass(frozen=True)
class MleFit:
    """Fitted parameters, log-likelihood at the optimum, and standard errors.

    ``stderr`` maps parameter names (``theta``, ``sigma11``, ``sigma22``,
    ``rho``) to observed-information standard errors, or is None when the
    finite-difference Hessian was not invertible.  ``converged`` reports
    whether the best search run met its internal tolerances.
    """

    theta_hat: float
    sigma11_hat: float
    sigma22_hat: float
    rho_hat: float
    loglik: float
    converged: bool
    stderr: dict[str, float] | None = None


def _as_replicates(z, n: int, what: str) -> np.ndarray:
    arr = np.asarray(z, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != n:
        raise DomainError(
            f"{what} must have {n} values per replicate, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{what} must be finite")
    return arr


def _check_params(theta, sigma11, sigma22, rho) -> float:
    for name, v in (("theta", theta), ("sigma11", sigma11),
                    ("sigma22", sigma22), ("rho", rho)):
        if not np.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v}")
    if theta <= 0 or sigma11 <= 0 or sigma22 <= 0:
        raise DomainError("theta and variances must be positive")
    tau = sigma22 - rho**2 * sigma11
    if tau <= 0:
        raise DomainError(
            f"invalid model: sigma22 - rho^2*sigma11 = {tau} must be positive"
        )
    return tau


def loglikelihood(
    design: Design, z1, z2, theta: float, sigma11: float, sigma22: float, rho: float
) -> float:
    """Exact joint Gaussian log-likelihood of collocated observations.

    ``z1`` and ``z2`` may be single vectors of length ``n`` or replicate
    matrices of shape ``(r, n)``; replicates are independent draws on
    the same design and their log-likelihoods add.
    """
    tau = _check_params(theta, sigma11, sigma22, rho)
    z1 = _as_replicates(z1, design.n, "z1")
    z2 = _as_replicates(z2, design.n, "z2")
    if z1.shape != z2.shape:
        raise DomainError(f"z1 and z2 shapes differ: {z1.shape} vs {z2.shape}")
    r, n = z1.shape
    pinv = kern.precision_matrix(design, theta)
    gaps = design.gap_array()
    logdet_p = float(np.sum(np.log(-np.expm1(-2.0 * theta * gaps))))
    quad1 = float(np.sum(z1 * (z1 @ pinv)))
    resid = z2 - rho * z1
    quad2 = float(np.sum(resid * resid))
    return (
        -r * n * math.log(2.0 * math.pi)
        - 0.5 * r * (n * math.log(sigma11) + logdet_p)
        - 0.5 * quad1 / sigma11
        - 0.5 * r * n * math.log(tau)
        - 0.5 * quad2 / tau
    )


def simulate_observations(
    design: Design,
    theta: float,
    sigma11: float,
    sigma22: float,
    rho: float,
    replicates: int = 1,
    seed: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``(z1, z2)`` replicate matrices of shape ``(replicates, n)``."""
    tau = _check_params(theta, sigma11, sigma22, rho)
    if replicates < 1:
        raise DomainError(f"replicates must be >= 1, got {replicates}")
    rng = np.random.default_rng(seed)
    chol = np.linalg.cholesky(kern.corr_matrix(design, theta))
    white = rng.standard_normal((replicates, design.n))
    z1 = math.sqrt(sigma11) * (white @ chol.T)
    z2 = rho * z1 + math.sqrt(tau) * rng.standard_normal((replicates, design.n))
    return z1, z2


# --------------------------------------------------------------------------
# fitting
# --------------------------------------------------------------------------

def _standardize(z: np.ndarray) -> np.ndarray:
    sd = float(z.std(ddof=1))
    if sd <= 0:
        raise DomainError("cannot standardize a constant variable")
    return (z - float(z.mean())) / sd


def _natural(v: np.ndarray) -> tuple[float, float, float, float]:
    theta = math.exp(v[0])
    sigma11 = math.exp(v[1])
    tau = math.exp(v[2])
    rho = math.tanh(v[3])
    return theta, sigma11, tau + rho**2 * sigma11, rho


def fit_mle(
    design: Design,
    z1,
    z2,
    standardize: bool = True,
    max_iters: int = 4000,
    tol: float = 1e-9,
) -> MleFit:
    """Fit ``(theta, sigma11, sigma22, rho)`` by maximum likelihood.

    Runs Nelder-Mead in an unconstrained parametrization (validity
    holds at every iterate) from the four decay rates in
    ``MLE_THETA_STARTS`` combined with moment-based variance and slope
    starts, then polishes the best run with a restart.  ``standardize``
    centers and scales each variable first, in which case the returned
    variances refer to the standardized data.
    """
    if design.n < 4:
        raise DomainError(f"need at least 4 sites to fit, got {design.n}")
    z1 = _as_replicates(z1, design.n, "z1")
    z2 = _as_replicates(z2, design.n, "z2")
    if z1.shape != z2.shape:
        raise DomainError(f"z1 and z2 shapes differ: {z1.shape} vs {z2.shape}")
    if standardize:
        z1, z2 = _standardize(z1), _standardize(z2)

    def nll(v: np.ndarray) -> float:
        if not np.all(np.isfinite(v)) or np.max(np.abs(v[:3])) > 40.0:
            return _PENALTY
        theta, s11, s22, rho = _natural(v)
        try:
            return -loglikelihood(design, z1, z2, theta, s11, s22, rho)
        except (ConditioningError, DomainError, FloatingPointError):
            return _PENALTY

    # moment starts: slope of z2 on z1 at lag zero, clipped to keep a
    # comfortable residual margin
    s11_0 = max(float(z1.var(ddof=1)), 1e-8)
    s22_0 = max(float(z2.var(ddof=1)), 1e-8)
    c12_0 = float(np.mean((z1 - z1.mean()) * (z2 - z2.mean())))
    bound = 0.9 * min(1.0, math.sqrt(s22_0 / s11_0))
    rho_0 = float(np.clip(c12_0 / s11_0, -bound, bound))
    tau_0 = s22_0 - rho_0**2 * s11_0

    best = None
    converged = False
    for theta_0 in MLE_THETA_STARTS:
        v0 = np.array([math.log(theta_0), math.log(s11_0),
                       math.log(tau_0), math.atanh(rho_0)])
        res = spopt.minimize(
            nll, v0, method="Nelder-Mead",
            options={"xatol": 1e-8, "fatol": tol, "maxiter": max_iters,
                     "maxfev": max_iters},
        )
        res2 = spopt.minimize(
            nll, res.x, method="Nelder-Mead",
            options={"xatol": 1e-8, "fatol": tol, "maxiter": max_iters,
                     "maxfev": max_iters},
        )
        if res2.fun <= res.fun:
            res = res2
        if best is None or res.fun < best.fun:
            best = res
            converged = bool(res.success)
    if best is None or best.fun >= _PENALTY:
        raise NumericError("likelihood search failed from every start")

    theta_hat, s11_hat, s22_hat, rho_hat = _natural(best.x)
    ll_hat = -float(best.fun)
    stderr = _stderr(design, z1, z2, theta_hat, s11_hat, s22_hat, rho_hat)
    return MleFit(theta_hat, s11_hat, s22_hat, rho_hat, ll_hat, converged, stderr)


def _stderr(design, z1, z2, theta, s11, s22, rho) -> dict[str, float] | None:
    """Observed-information standard errors via a central FD Hessian.

    Steps shrink automatically so every evaluation stays inside the
    valid region; returns None when the information matrix is not
    positive definite (optimum on or near the validity boundary).
    """
    p = np.array([theta, s11, s22, rho])
    names = ("theta", "sigma11", "sigma22", "rho")
    steps = 1e-4 * np.maximum(np.abs(p), 0.1)
    margin = s22 - rho**2 * s11
    # worst-case margin erosion per unit step: d(margin) terms
    erosion = np.array([0.0, rho**2, 1.0, 2.0 * abs(rho) * s11 + 1e-8])
    with np.errstate(all="ignore"):
        scale = np.where(erosion > 0, 0.1 * margin / erosion, np.inf)
    steps = np.minimum(steps, scale)
    if not np.all(steps > 0):
        return None

    def f(q: np.ndarray) -> float:
        return -loglikelihood(design, z1, z2, q[0], q[1], q[2], q[3])

    k = p.size
    hess = np.empty((k, k))
    try:
        f0 = f(p)
        for i in range(k):
            ei = np.zeros(k)
            ei[i] = steps[i]
            for j in range(i, k):
                ej = np.zeros(k)
                ej[j] = steps[j]
                if i == j:
                    val = (f(p + ei) - 2.0 * f0 + f(p - ei)) / steps[i] ** 2
                else:
                    val = (
                        f(p + ei + ej) - f(p + ei - ej)
                        - f(p - ei + ej) + f(p - ei - ej)
                    ) / (4.0 * steps[i] * steps[j])
                hess[i, j] = hess[j, i] = val
        cov = np.linalg.inv(hess)
    except (DomainError, ConditioningError, np.linalg.LinAlgError):
        return None
    diag = np.diag(cov)
    if not np.all(np.isfinite(diag)) or np.any(diag <= 0):
        return None
    return {name: float(math.sqrt(d)) for name, d in zip(names, diag)}
