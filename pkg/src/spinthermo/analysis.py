"""Curves, surfaces, difference maps, extremum search, and ensemble fitting.

Everything here is a grid- or scalar-level combination of the two models:
the Boltzmann ensemble over the geometric disk measure (:mod:`spinthermo.bures`)
and the maximum-entropy stationary state (:mod:`spinthermo.semiclassical`).
Difference surfaces subtract the semiclassical value from the ensemble value
at the same grid point, identifying the multipliers (lam1, lam2) with the
inverse temperatures (beta1, beta2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from spinthermo import bures, semiclassical, specfun
from spinthermo.quadrature import QuadratureError, Tolerance

__all__ = [
    "GridSpec",
    "SurfaceGrid",
    "ExtremumReport",
    "QUANTITIES",
    "MODELS",
    "DEFAULT_GRID",
    "curve_difference",
    "find_max_difference",
    "surface",
    "difference_surface",
    "fit_bures",
]

QUANTITIES = ("mean1", "mean2", "var1", "var2", "cov", "partition")
MODELS = ("bures", "semiclassical", "difference")


@dataclass(frozen=True)
class GridSpec:
    """Rectangular evaluation grid over (beta1, beta2)."""

    min1: float
    max1: float
    steps1: int
    min2: float
    max2: float
    steps2: int

    def __post_init__(self) -> None:
        if not (self.min1 < self.max1 and self.min2 < self.max2):
            raise ValueError("grid requires min < max on both axes")
        if self.steps1 < 2 or self.steps2 < 2:
            raise ValueError("grid requires at least 2 steps per axis")
        if self.steps1 * self.steps2 > 1_000_000:
            raise ValueError("grid exceeds the 1e6 point budget")

    def axis1(self) -> np.ndarray:
        return np.linspace(self.min1, self.max1, self.steps1)

    def axis2(self) -> np.ndarray:
        return np.linspace(self.min2, self.max2, self.steps2)


DEFAULT_GRID = GridSpec(-5.0, 5.0, 41, -5.0, 5.0, 41)


@dataclass(frozen=True)
class SurfaceGrid:
    """A scalar quantity sampled on a :class:`GridSpec`.

    ``values`` is row-major over (axis1, axis2): flat index i1*steps2 + i2.
    ``errors`` carries per-point quadrature error estimates where quadrature
    was involved, ``None`` otherwise.  Points whose quadrature failed are
    listed in ``failures`` and hold NaN; a surface with empty ``failures``
    contains no NaN.
    """

    spec: GridSpec
    quantity: str
    model: str
    values: np.ndarray
    errors: np.ndarray | None
    failures: tuple[int, ...]


@dataclass(frozen=True)
class ExtremumReport:
    """Result of a bracketed one-dimensional maximization."""

    argmax: float
    max_value: float
    bracket: tuple[float, float]
    iterations: int


def curve_difference(beta_grid) -> list[tuple[float, float, float]]:
    """Tabulate (beta, tanh(beta), I_2(beta)/I_1(beta)) over the given grid.

    The difference of the two magnetization laws is the first entry minus the
    second.  Grid values must satisfy |beta| <= 50.
    """
    out = []
    for b in beta_grid:
        b = float(b)
        if abs(b) > 50.0:
            raise ValueError(f"curve grid limited to |beta| <= 50, got {b!r}")
        out.append((b, math.tanh(b), specfun.magnetization(4, b)))
    return out


def _golden_max(f, lo: float, hi: float, tol: float = 1e-9) -> tuple[float, int]:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = f(c), f(d)
    iterations = 0
    while hi - lo > tol:
        iterations += 1
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi), iterations


def find_max_difference() -> ExtremumReport:
    """Locate the largest gap tanh(beta) - I_2(beta)/I_1(beta) for beta > 0.

    A coarse scan over [0.1, 5] brackets the maximum of the smooth unimodal
    difference; golden-section search then refines the bracket to ~1e-9.
    """
    objective = lambda b: math.tanh(b) - specfun.magnetization(4, b)
    grid = [0.1 + 4.9 * i / 199.0 for i in range(200)]
    values = [objective(b) for b in grid]
    k = max(range(len(grid)), key=lambda i: values[i])
    if k == 0 or k == len(grid) - 1:
        raise RuntimeError("coarse scan failed to bracket an interior maximum")
    lo, hi = grid[k - 1], grid[k + 1]
    argmax, iterations = _golden_max(objective, lo, hi)
    return ExtremumReport(argmax=argmax, max_value=objective(argmax),
                          bracket=(lo, hi), iterations=iterations)


def _semiclassical_value(quantity: str, lam1: float, lam2: float) -> float:
    # Surfaces compare second derivatives of the two log-partition functions,
    # so the semiclassical var/cov here are the susceptibilities, not the
    # single-state quantum variances of semiclassical.moments.
    if quantity == "partition":
        return math.exp(-semiclassical.omega(lam1, lam2))
    if quantity in ("mean1", "mean2"):
        m1, m2 = semiclassical.mean(lam1, lam2)
        return m1 if quantity == "mean1" else m2
    s = semiclassical.susceptibilities(lam1, lam2)
    return getattr(s, quantity)


def _bures_value(quantity: str, beta1: float, beta2: float,
                 tol: Tolerance) -> tuple[float, float]:
    if quantity == "partition":
        r = bures.partition_2(beta1, beta2, tol)
        if not r.converged:
            raise QuadratureError(
                f"partition quadrature did not converge at ({beta1}, {beta2})")
        return r.value, r.error_estimate
    m = bures.moments_2(beta1, beta2, tol)
    return getattr(m, quantity), m.quadrature_error


def surface(model: str, quantity: str, spec: GridSpec = DEFAULT_GRID,
            tol: Tolerance | None = None) -> SurfaceGrid:
    """Evaluate one quantity of one model on every grid point.

    For ``model="semiclassical"`` the multipliers are identified with the
    grid coordinates; its var/cov surfaces are the log-partition
    susceptibilities (see :func:`spinthermo.semiclassical.susceptibilities`),
    the construction that matches the ensemble-side quantities.  Per-point
    quadrature failures are recorded in ``failures`` (value NaN), never
    silently zeroed.  Deterministic: grid points are visited in row-major
    order and each evaluation is itself deterministic.
    """
    if model == "difference":
        return difference_surface(quantity, spec, tol)
    if model not in ("bures", "semiclassical"):
        raise ValueError(f"model must be one of {MODELS}, got {model!r}")
    if quantity not in QUANTITIES:
        raise ValueError(f"quantity must be one of {QUANTITIES}, got {quantity!r}")
    if tol is None:
        tol = Tolerance()

    a1, a2 = spec.axis1(), spec.axis2()
    n = spec.steps1 * spec.steps2
    values = np.empty(n)
    errors = np.zeros(n) if model == "bures" else None
    failures: list[int] = []
    for i1, b1 in enumerate(a1):
        for i2, b2 in enumerate(a2):
            idx = i1 * spec.steps2 + i2
            if model == "semiclassical":
                values[idx] = _semiclassical_value(quantity, float(b1), float(b2))
                continue
            try:
                v, e = _bures_value(quantity, float(b1), float(b2), tol)
            except QuadratureError:
                failures.append(idx)
                values[idx] = math.nan
                errors[idx] = math.inf
                continue
            values[idx] = v
            errors[idx] = e
    return SurfaceGrid(spec=spec, quantity=quantity, model=model, values=values,
                       errors=errors, failures=tuple(failures))


def difference_surface(quantity: str, spec: GridSpec = DEFAULT_GRID,
                       tol: Tolerance | None = None) -> SurfaceGrid:
    """Ensemble surface minus semiclassical surface on the identical grid."""
    b = surface("bures", quantity, spec, tol)
    s = surface("semiclassical", quantity, spec, tol)
    return SurfaceGrid(spec=spec, quantity=quantity, model="difference",
                       values=b.values - s.values, errors=b.errors,
                       failures=b.failures)


def fit_bures(target1: float, target2: float,
              tol: Tolerance | None = None) -> tuple[float, float]:
    """Invert the ensemble mean map: find (beta1, beta2) hitting the targets.

    Initialized from the radial closed form (bisection of I_2/I_1 on
    [0, 50]), then Newton iteration on the quadrature means with the exact
    Jacobian d mean_i / d beta_j = -cov_ij of the Boltzmann density.
    Converges when the residual norm drops below 1e-8.
    """
    t1, t2 = float(target1), float(target2)
    if not (math.isfinite(t1) and math.isfinite(t2)):
        raise ValueError(f"targets must be finite, got ({t1!r}, {t2!r})")
    m = math.hypot(t1, t2)
    if m >= 1.0:
        raise ValueError(
            f"targets must lie strictly inside the unit disk, got |t| = {m!r}")
    if m == 0.0:
        return (0.0, 0.0)
    if tol is None:
        tol = Tolerance()

    lo, hi = 0.0, bures.BETA_MAX_2
    if specfun.magnetization(4, hi) <= m:
        raise ValueError(
            f"target magnitude {m!r} is outside the invertible range of the "
            f"radial law within beta <= {bures.BETA_MAX_2}")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if specfun.magnetization(4, mid) < m:
            lo = mid
        else:
            hi = mid
    radius = 0.5 * (lo + hi)
    beta = np.array([-t1 / m * radius, -t2 / m * radius])

    target = np.array([t1, t2])
    for _ in range(50):
        mom = bures.moments_2(beta[0], beta[1], tol)
        resid = np.array([mom.mean1, mom.mean2]) - target
        if math.hypot(resid[0], resid[1]) < 1e-8:
            return (float(beta[0]), float(beta[1]))
        jac = -np.array([[mom.var1, mom.cov], [mom.cov, mom.var2]])
        step = np.linalg.solve(jac, resid)
        beta = beta - step
        cap = bures.BETA_MAX_2
        beta = np.clip(beta, -cap, cap)
    raise RuntimeError(
        f"mean-map inversion did not converge for targets ({t1}, {t2}); "
        f"residual {math.hypot(resid[0], resid[1]):.3e}")
