"""Exponential-correlation matrix algebra on transect designs.

For sites ``x_1 < ... < x_n`` and decay rate ``theta`` the correlation
matrix ``P`` has entries ``exp(-theta * |x_i - x_j|)``.  Because the
exponential correlation is Markov in one dimension, ``P`` factors in
closed form and its inverse is tridiagonal.  Everything downstream
(prediction weights, error formulas, design criteria) rests on the
closed forms in this module, so each routine returns exact expressions
rather than output of a generic solver.

Throughout, ``w(d) = 1 - exp(-2 * theta * d)`` is the conditional
variance picked up over a gap of width ``d``.
"""

from dataclasses import dataclass

import numpy as np

from .design import Design
from .exceptions import ConditioningError, DomainError, ExtrapolationError

# Gaps with theta * d below this would make w(d) numerically
# indistinguishable from zero; refuse to form the noisy inverse.
MIN_THETA_GAP = 1e-10


@dataclass(frozen=True)
class ExponentialKernel:
    """Stationary exponential covariance ``sigma11 * exp(-theta * h)``.

    Parameters
    ----------
    theta : float
        Positive decay rate.  Correlation at distance ``h`` is
        ``exp(-theta * h)``.
    sigma11 : float, optional
        Positive variance scale, 1 by default.
    """

    theta: float
    sigma11: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.theta) and self.theta > 0):
            raise DomainError(f"decay rate must be positive, got {self.theta}")
        if not (np.isfinite(self.sigma11) and self.sigma11 > 0):
            raise DomainError(f"variance must be positive, got {self.sigma11}")

    def corr(self, h) -> np.ndarray:
        """Correlation at (array of) distances ``h``."""
        return np.exp(-self.theta * np.abs(np.asarray(h, dtype=float)))

    def cov(self, h) -> np.ndarray:
        return self.sigma11 * self.corr(h)


def _check_theta(theta: float) -> float:
    theta = float(theta)
    if not (np.isfinite(theta) and theta > 0):
        raise DomainError(f"decay rate must be positive, got {theta}")
    return theta


def _check_gaps(design: Design, theta: float) -> np.ndarray:
    gaps = design.gap_array()
    if gaps.size and theta * gaps.min() < MIN_THETA_GAP:
        raise ConditioningError(
            f"theta * gap = {theta * gaps.min():.3e} below {MIN_THETA_GAP:.0e}; "
            "sites are numerically coincident"
        )
    return gaps


def corr_matrix(design: Design, theta: float) -> np.ndarray:
    """Dense correlation matrix ``P`` with ``P_ij = exp(-theta |x_i - x_j|)``."""
    theta = _check_theta(theta)
    pts = design.points
    return np.exp(-theta * np.abs(pts[:, None] - pts[None, :]))


def ldl_factor(design: Design, theta: float) -> tuple[np.ndarray, np.ndarray]:
    """Exact unit-lower-triangular LDL' factorization of ``P``.

    Returns
    -------
    L : ndarray, shape (n, n)
        ``L_ij = exp(-theta * (x_i - x_j))`` for ``i >= j``, zero above
        the diagonal.
    D : ndarray, shape (n, n)
        Diagonal matrix ``diag(1, w(d_1), ..., w(d_{n-1}))`` with
        ``w(d) = 1 - exp(-2 theta d)``: the screening effect of the
        nearest preceding site is total, so each pivot only sees one gap.

    ``L @ D @ L.T`` reconstructs ``corr_matrix`` exactly, and the
    log-determinant of ``P`` is the log-sum of ``D``'s diagonal.
    """
    theta = _check_theta(theta)
    gaps = _check_gaps(design, theta)
    pts = design.points
    diff = pts[:, None] - pts[None, :]
    L = np.tril(np.exp(-theta * np.maximum(diff, 0.0)))
    d = np.empty(design.n)
    d[0] = 1.0
    if gaps.size:
        d[1:] = -np.expm1(-2.0 * theta * gaps)
    return L, np.diag(d)


def precision_matrix(design: Design, theta: float) -> np.ndarray:
    """Tridiagonal inverse of the exponential correlation matrix.

    With ``w_i = 1 - exp(-2 theta d_i)`` the nonzero entries are

    * corners: ``1 / w_1`` and ``1 / w_{n-1}``,
    * interior diagonal: ``1 / w_{i-1} + exp(-2 theta d_i) / w_i``,
    * off-diagonal: ``-exp(-theta d_i) / w_i``.

    Raises a conditioning error when any ``theta * d_i`` falls below
    ``MIN_THETA_GAP``.
    """
    theta = _check_theta(theta)
    gaps = _check_gaps(design, theta)
    n = design.n
    if n == 1:
        return np.array([[1.0]])
    w = -np.expm1(-2.0 * theta * gaps)
    diag = np.empty(n)
    diag[0] = 1.0
    diag[1:] = 1.0 / w
    diag[:-1] += np.exp(-2.0 * theta * gaps) / w
    off = -np.exp(-theta * gaps) / w
    return np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)


def ones_quadratic_form(design: Design, theta: float) -> float:
    """Quadratic form ``1' P^{-1} 1`` in closed form.

    Equals ``1 + sum_i tanh(theta * d_i / 2)``; with gaps summing to one
    this is also ``sum_i omega(d_i)`` for ``omega(d) = d + tanh(theta d / 2)``.
    Strictly increasing in every gap, which is what makes the ordinary
    criteria Schur-convex.
    """
    theta = _check_theta(theta)
    gaps = design.gap_array()
    if not gaps.size:
        return 1.0
    return 1.0 + float(np.sum(np.tanh(0.5 * theta * gaps)))


def quad_forms_at(design: Design, theta: float, x0: float) -> tuple[float, float]:
    """Quadratic forms linking a target site to its bracketing interval.

    For ``x0`` inside interval ``i`` at offset ``a = x0 - x_i`` of width
    ``d = d_i``, the cross-covariance vector ``sigma0`` with entries
    ``exp(-theta |x_j - x0|)`` satisfies

    * ``sigma0' P^{-1} sigma0
        = (e^{-2 theta a} - 2 e^{-2 theta d} + e^{-2 theta (d - a)}) / w(d)``
    * ``1' P^{-1} sigma0
        = (e^{-theta a} + e^{-theta (d - a)}) / (1 + e^{-theta d})``

    so only the bracketing sites matter, again by the Markov screening
    property.  Returns the pair in that order.  Both are exactly 1 when
    ``x0`` coincides with a design site.

    Raises
    ------
    ExtrapolationError
        If ``x0`` lies outside ``[x_start, x_end]``; the closed error
        formulas do not extend beyond the sampled interval.
    """
    theta = _check_theta(theta)
    if design.n < 2:
        raise DomainError("need at least two sites to bracket a target")
    x0 = float(x0)
    slack = 1e-12 * max(1.0, abs(design.x_start), abs(design.x_end))
    if not (design.x_start - slack <= x0 <= design.x_end + slack):
        raise ExtrapolationError(
            f"target {x0} outside sampled interval "
            f"[{design.x_start}, {design.x_end}]"
        )
    x0 = min(max(x0, design.x_start), design.x_end)
    pts = design.points
    i = int(np.clip(np.searchsorted(pts, x0, side="right") - 1, 0, design.n - 2))
    d = design.gaps[i]
    if theta * d < MIN_THETA_GAP:
        raise ConditioningError(
            f"theta * gap = {theta * d:.3e} below {MIN_THETA_GAP:.0e} "
            f"in interval {i}"
        )
    a = x0 - pts[i]
    w = -np.expm1(-2.0 * theta * d)
    s_quad = (np.exp(-2.0 * theta * a) - 2.0 * np.exp(-2.0 * theta * d)
              + np.exp(-2.0 * theta * (d - a))) / w
    ones_cross = (np.exp(-theta * a) + np.exp(-theta * (d - a))) / (1.0 + np.exp(-theta * d))
    return float(s_quad), float(ones_cross)
