"""Deterministic adaptive numerical integration.

Three integrators built on one adaptive Gauss-Kronrod (7-15) kernel:

* :func:`integrate_1d` -- one-dimensional intervals,
* :func:`integrate_disk` -- the closed unit disk, as an iterated integral
  with adaptive inner and outer levels,
* :func:`integrate_ball_bures` -- the unit ball against the singular weight
  1/(8*sqrt(1 - x^2 - y^2 - z^2)), with the boundary singularity removed
  analytically by the radial substitution rho = sin(phi).

All routines are pure functions of their arguments: repeated invocation with
the same inputs yields bit-identical results.  Integrands returning NaN or
infinity abort with :class:`QuadratureError` instead of propagating silent
garbage into results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Tolerance",
    "QuadResult",
    "QuadratureError",
    "integrate_1d",
    "integrate_disk",
    "integrate_ball_bures",
]

_EPS = 2.220446049250313e-16


class QuadratureError(RuntimeError):
    """Non-finite integrand value, or a malformed integration request."""


@dataclass(frozen=True)
class Tolerance:
    """Accuracy request: converge when error <= max(absolute, relative*|value|)."""

    absolute: float = 1e-10
    relative: float = 1e-10
    max_subdivisions: int = 2000

    def __post_init__(self) -> None:
        if not (self.absolute >= 0.0 and self.relative >= 0.0):
            raise ValueError("tolerances must be nonnegative")
        if self.absolute == 0.0 and self.relative == 0.0:
            raise ValueError("at least one of absolute/relative must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be a positive integer")

    def met_by(self, value: float, error: float) -> bool:
        return error <= max(self.absolute, self.relative * abs(value))

    def scaled(self, factor: float) -> "Tolerance":
        """Tightened copy for inner levels of iterated integrals."""
        return Tolerance(self.absolute * factor, self.relative * factor,
                         self.max_subdivisions)


@dataclass(frozen=True)
class QuadResult:
    """Integral value with an error estimate and an honest convergence flag."""

    value: float
    error_estimate: float
    evaluations: int
    converged: bool


# 15-point Kronrod extension of 7-point Gauss on [-1, 1].  Positive abscissae;
# even nodes (0, 2, 4, 6) carry the embedded Gauss rule.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def _gk15(fv, a: float, b: float):
    """Apply the Gauss-Kronrod pair on [a, b].

    ``fv(x)`` must return ``(value, extra_error)`` where ``extra_error`` is an
    absolute uncertainty carried by the evaluation itself (nonzero only for
    iterated integrals).  Returns (value, error, extra, evaluations).
    """
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)

    fval = [0.0] * 15
    extra = 0.0
    # node order: pairs (+xi, -xi) then center
    idx = 0
    for j in range(7):
        xi = _XGK[j]
        for x in (center + half * xi, center - half * xi):
            y, e = fv(x)
            if not math.isfinite(y):
                raise QuadratureError(
                    f"integrand returned non-finite value {y!r} at x={x!r}")
            fval[idx] = y
            extra += _WGK[j] * e
            idx += 1
    y, e = fv(center)
    if not math.isfinite(y):
        raise QuadratureError(
            f"integrand returned non-finite value {y!r} at x={center!r}")
    fval[14] = y
    extra += _WGK[7] * e

    resk = _WGK[7] * fval[14]
    resg = _WG[3] * fval[14]
    resabs = _WGK[7] * abs(fval[14])
    for j in range(7):
        s = fval[2 * j] + fval[2 * j + 1]
        resk += _WGK[j] * s
        resabs += _WGK[j] * (abs(fval[2 * j]) + abs(fval[2 * j + 1]))
        if j % 2 == 1:  # Gauss nodes interleave at odd Kronrod indices
            resg += _WG[j // 2] * s

    reskh = 0.5 * resk
    resasc = _WGK[7] * abs(fval[14] - reskh)
    for j in range(7):
        resasc += _WGK[j] * (abs(fval[2 * j] - reskh) + abs(fval[2 * j + 1] - reskh))

    value = resk * half
    err = abs((resk - resg) * half)
    scaled_asc = resasc * half
    if scaled_asc != 0.0 and err != 0.0:
        err = scaled_asc * min(1.0, (200.0 * err / scaled_asc) ** 1.5)
    err = max(err, 50.0 * _EPS * resabs * half)
    return value, err, extra * half, 15


def _adapt(fv, a: float, b: float, tol: Tolerance) -> QuadResult:
    """Adaptive bisection driven by the largest per-interval error."""
    value, err, extra, n = _gk15(fv, a, b)
    # each entry: (left, right, value, rule_error, extra_error)
    panels = [(a, b, value, err, extra)]
    evaluations = n
    subdivisions = 0

    while True:
        total = math.fsum(p[2] for p in panels)
        toterr = math.fsum(p[3] + p[4] for p in panels)
        if tol.met_by(total, toterr):
            return QuadResult(total, toterr, evaluations, True)
        if subdivisions >= tol.max_subdivisions:
            return QuadResult(total, toterr, evaluations, False)

        worst = 0
        worst_err = panels[0][3] + panels[0][4]
        for i in range(1, len(panels)):
            e = panels[i][3] + panels[i][4]
            if e > worst_err:
                worst, worst_err = i, e
        left, right = panels[worst][0], panels[worst][1]
        mid = 0.5 * (left + right)
        if mid <= left or mid >= right:
            # interval exhausted at machine resolution; freeze it
            total = math.fsum(p[2] for p in panels)
            toterr = math.fsum(p[3] + p[4] for p in panels)
            return QuadResult(total, toterr, evaluations, tol.met_by(total, toterr))
        lv, le, lx, ln = _gk15(fv, left, mid)
        rv, re, rx, rn = _gk15(fv, mid, right)
        panels[worst] = (left, mid, lv, le, lx)
        panels.append((mid, right, rv, re, rx))
        evaluations += ln + rn
        subdivisions += 1


def integrate_1d(f, a: float, b: float, tol: Tolerance | None = None) -> QuadResult:
    """Integrate ``f`` over [a, b] with adaptive Gauss-Kronrod bisection.

    Deterministic for fixed inputs.  The returned ``converged`` flag is honest:
    it is set only when the accumulated error estimate satisfies ``tol``.
    Non-convergence after ``max_subdivisions`` returns the best estimate with
    ``converged=False``; NaN/infinite integrand values raise
    :class:`QuadratureError`.
    """
    if tol is None:
        tol = Tolerance()
    if not (a < b):
        raise ValueError(f"require a < b, got a={a!r}, b={b!r}")
    return _adapt(lambda x: (f(x), 0.0), a, b, tol)


def integrate_disk(f, tol: Tolerance | None = None) -> QuadResult:
    """Integrate ``f(x, y)`` over the closed unit disk x^2 + y^2 <= 1.

    Iterated Cartesian form: an adaptive outer integral in x of adaptive inner
    integrals over y in [-sqrt(1-x^2), +sqrt(1-x^2)].  Inner error estimates
    are propagated into the outer error estimate, so the convergence flag
    accounts for both levels.
    """
    if tol is None:
        tol = Tolerance()
    inner_tol = tol.scaled(0.125)
    state = {"evals": 0, "inner_ok": True}

    def outer(x: float):
        g = 1.0 - x * x
        if g <= 0.0:
            return 0.0, 0.0
        g = math.sqrt(g)
        r = _adapt(lambda y: (f(x, y), 0.0), -g, g, inner_tol)
        state["evals"] += r.evaluations
        if not r.converged:
            state["inner_ok"] = False
        return r.value, r.error_estimate

    res = _adapt(outer, -1.0, 1.0, tol)
    return QuadResult(res.value, res.error_estimate, state["evals"],
                      res.converged and state["inner_ok"])


def integrate_ball_bures(f, tol: Tolerance | None = None) -> QuadResult:
    """Integrate ``f(x, y, z) / (8*sqrt(1 - x^2 - y^2 - z^2))`` over the unit ball.

    The singular radial factor is removed exactly by rho = sin(phi), which
    turns the measure into sin(phi)^2/8 * dphi * dOmega.  What remains is a
    smooth iterated integral (phi, then polar angle, then azimuth), each level
    handled by the same adaptive Gauss-Kronrod kernel.
    """
    if tol is None:
        tol = Tolerance()
    mid_tol = tol.scaled(0.125)
    inner_tol = tol.scaled(0.015625)
    state = {"evals": 0, "inner_ok": True}
    two_pi = 2.0 * math.pi

    def outer(phi: float):
        rho = math.sin(phi)
        weight = rho * rho * 0.125

        def middle(theta: float):
            st = math.sin(theta)
            ct = math.cos(theta)
            rxy = rho * st
            z = rho * ct

            def inner(psi: float):
                return f(rxy * math.cos(psi), rxy * math.sin(psi), z), 0.0

            r = _adapt(inner, 0.0, two_pi, inner_tol)
            state["evals"] += r.evaluations
            if not r.converged:
                state["inner_ok"] = False
            return r.value * st, r.error_estimate * st

        r = _adapt(middle, 0.0, math.pi, mid_tol)
        if not r.converged:
            state["inner_ok"] = False
        return r.value * weight, r.error_estimate * weight

    res = _adapt(outer, 0.0, 0.5 * math.pi, tol)
    return QuadResult(res.value, res.error_estimate, state["evals"],
                      res.converged and state["inner_ok"])
