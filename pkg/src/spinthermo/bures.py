"""Boltzmann ensembles over the geometric measure of the spin-1/2 state space.

Two observables
---------------
Integrating the singular ball measure 1/(8 sqrt(1 - |s|^2)) over one Bloch
coordinate leaves a uniform density pi/8 on the unit disk of the remaining
two.  Weighting that structure function with exp(-beta1*x - beta2*y) gives

    marginal_density(x) = exp(-beta1 x) * pi * sinh(beta2 sqrt(1-x^2)) / (4 beta2)

after the inner y-integral, and the partition function is its numeric
integral over x in [-1, 1].  Ensemble means, variances and the covariance of
(x, y) = (<sigma_1>, <sigma_2>) follow from one adaptive outer quadrature
with the inner y-moments in elementary closed form.

Three observables
-----------------
The trivariate weight acts on the ball measure itself.  Two candidate
disk-reduced integrands are provided: ``reduced_integrand_3_direct`` (the
I_0 kernel of sqrt(1-x^2-y^2) obtained by symbolically integrating out the
z-coordinate) and ``reduced_integrand_3_j0`` (an alternative form whose J_0
kernel acts on the disk radius sqrt(x^2+y^2) instead).  The two disagree for
beta3 != 0; ``partition_3`` also evaluates the full three-dimensional ball
integral, which serves as the arbiter between them.

Inverse-temperature components are capped (|beta_i| <= 50 for the disk,
<= 10 for the ball) to keep unscaled exponentials well-conditioned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from spinthermo import specfun
from spinthermo.quadrature import QuadResult, QuadratureError, Tolerance, integrate_1d, \
    integrate_ball_bures, integrate_disk

__all__ = [
    "BETA_MAX_2",
    "BETA_MAX_3",
    "EnsembleMoments",
    "marginal_density",
    "partition_2",
    "closed_partition_2",
    "moments_2",
    "closed_mean_2",
    "reduced_integrand_3_j0",
    "reduced_integrand_3_direct",
    "partition_3",
    "mean_3",
]

_PI_8 = math.pi / 8.0
BETA_MAX_2 = 50.0
BETA_MAX_3 = 10.0


@dataclass(frozen=True)
class EnsembleMoments:
    """Boltzmann-ensemble moments of (<sigma_1>, <sigma_2>) on the unit disk.

    ``partition`` is the total weighted mass (pi/8 normalization included);
    ``quadrature_error`` is a conservative absolute error scale for the
    moment values, from the underlying integral error estimates.
    """

    mean1: float
    mean2: float
    var1: float
    var2: float
    cov: float
    partition: float
    quadrature_error: float


def _check_temps_2(beta1: float, beta2: float) -> tuple[float, float]:
    beta1, beta2 = float(beta1), float(beta2)
    for b in (beta1, beta2):
        if not math.isfinite(b):
            raise ValueError(f"inverse temperatures must be finite, got {b!r}")
        if abs(b) > BETA_MAX_2:
            raise ValueError(
                f"|beta| <= {BETA_MAX_2} required for well-conditioned "
                f"unscaled quadrature, got {b!r}")
    return beta1, beta2


def _check_temps_3(beta1: float, beta2: float, beta3: float):
    out = []
    for b in (beta1, beta2, beta3):
        b = float(b)
        if not math.isfinite(b) or abs(b) > BETA_MAX_3:
            raise ValueError(
                f"three-observable components must be finite with "
                f"|beta| <= {BETA_MAX_3}, got {b!r}")
        out.append(b)
    return tuple(out)


def _inner_moments(beta2: float, g: float) -> tuple[float, float, float]:
    """Closed forms of int y^k exp(-beta2 y) dy over [-g, g] for k = 0, 1, 2.

    Small |beta2*g| switches to the Taylor forms; the direct expressions lose
    relative accuracy below |t| ~ 1e-3 while the truncated series are exact
    to well under 1e-12 there.
    """
    t = beta2 * g
    if abs(t) < 1e-3:
        t2 = t * t
        i0 = 2.0 * g * (1.0 + t2 / 6.0 + t2 * t2 / 120.0)
        i1 = 2.0 * g * g * (-t / 3.0 - t * t2 / 30.0)
        i2 = 2.0 * g ** 3 * (1.0 / 3.0 + t2 / 10.0 + t2 * t2 / 168.0)
        return i0, i1, i2
    s = math.sinh(t)
    c = math.cosh(t)
    b = beta2
    i0 = 2.0 * s / b
    i1 = 2.0 * s / (b * b) - 2.0 * g * c / b
    i2 = 2.0 * (g * g * s / b - 2.0 * g * c / (b * b) + 2.0 * s / b ** 3)
    return i0, i1, i2


def marginal_density(x: float, beta1: float, beta2: float) -> float:
    """The x-marginal of the weighted disk density, |x| <= 1.

    exp(-beta1 x) * pi * sinh(beta2 g)/(4 beta2) with g = sqrt(1 - x^2); the
    analytic beta2 -> 0 limit (pi/4) g exp(-beta1 x) is used for small
    |beta2 g| where the quotient form loses precision.
    """
    beta1, beta2 = _check_temps_2(beta1, beta2)
    x = float(x)
    if abs(x) > 1.0:
        raise ValueError(f"require |x| <= 1, got {x!r}")
    g = math.sqrt(max(0.0, 1.0 - x * x))
    i0, _, _ = _inner_moments(beta2, g) if g > 0.0 else (0.0, 0.0, 0.0)
    return _PI_8 * math.exp(-beta1 * x) * i0


def closed_partition_2(beta1: float, beta2: float) -> float:
    """Rotationally reduced closed form pi^2 I_1(beta)/(4 beta), beta = |(b1,b2)|."""
    beta1, beta2 = _check_temps_2(beta1, beta2)
    beta = math.hypot(beta1, beta2)
    if beta < 1e-8:
        # I_1(b)/b -> 1/2 + b^2/16
        return math.pi ** 2 / 4.0 * (0.5 + beta * beta / 16.0)
    return math.pi ** 2 * specfun.bessel_i(1, beta) / (4.0 * beta)


def partition_2(beta1: float, beta2: float, tol: Tolerance | None = None) -> QuadResult:
    """Partition function: numeric integral of :func:`marginal_density` over [-1, 1]."""
    beta1, beta2 = _check_temps_2(beta1, beta2)
    return integrate_1d(lambda x: marginal_density(x, beta1, beta2), -1.0, 1.0,
                        tol if tol is not None else Tolerance())


def moments_2(beta1: float, beta2: float, tol: Tolerance | None = None) -> EnsembleMoments:
    """Boltzmann-weighted moments of (x, y) under the pi/8 disk density.

    One adaptive outer quadrature in x per moment; the inner y-integrals of
    1, y, y^2 against exp(-beta2 y) are elementary.  Raises
    :class:`QuadratureError` if any integral fails to converge.
    """
    beta1, beta2 = _check_temps_2(beta1, beta2)
    if tol is None:
        tol = Tolerance()

    def raw(weight):
        def f(x: float) -> float:
            g = math.sqrt(max(0.0, 1.0 - x * x))
            if g == 0.0:
                return 0.0
            i0, i1, i2 = _inner_moments(beta2, g)
            return _PI_8 * math.exp(-beta1 * x) * weight(x, i0, i1, i2)
        return integrate_1d(f, -1.0, 1.0, tol)

    z = raw(lambda x, i0, i1, i2: i0)
    sx = raw(lambda x, i0, i1, i2: x * i0)
    sy = raw(lambda x, i0, i1, i2: i1)
    sxx = raw(lambda x, i0, i1, i2: x * x * i0)
    syy = raw(lambda x, i0, i1, i2: i2)
    sxy = raw(lambda x, i0, i1, i2: x * i1)

    results = (z, sx, sy, sxx, syy, sxy)
    if not all(r.converged for r in results):
        raise QuadratureError(
            f"moment quadrature did not converge at beta=({beta1}, {beta2})")
    zv = z.value
    m1 = sx.value / zv
    m2 = sy.value / zv
    err = max(r.error_estimate for r in results) / zv
    return EnsembleMoments(
        mean1=m1,
        mean2=m2,
        var1=sxx.value / zv - m1 * m1,
        var2=syy.value / zv - m2 * m2,
        cov=sxy.value / zv - m1 * m2,
        partition=zv,
        quadrature_error=err,
    )


def closed_mean_2(beta1: float, beta2: float) -> tuple[float, float]:
    """Closed-form ensemble means -(beta_i/beta) I_2(beta)/I_1(beta).

    Follows from the rotational invariance of the uniform disk measure; the
    radial profile is the D=4 magnetization law.  Returns (0, 0) at beta = 0.
    Validated against :func:`moments_2` by the test suite before use.
    """
    beta1, beta2 = _check_temps_2(beta1, beta2)
    beta = math.hypot(beta1, beta2)
    if beta == 0.0:
        return (0.0, 0.0)
    r = specfun.bessel_ratio(2, beta)
    return (-beta1 / beta * r, -beta2 / beta * r)


def reduced_integrand_3_j0(x: float, y: float, beta1: float, beta2: float,
                           beta3: float) -> float:
    """Disk-reduced three-observable integrand with the J_0(radius) kernel.

    (pi/8) exp(-beta1 x - beta2 y) J_0(beta3 sqrt(x^2 + y^2)): the candidate
    reduction whose kernel acts on the disk radius rather than on the
    complementary coordinate.  It does not agree with
    :func:`reduced_integrand_3_direct` for beta3 != 0; the full 3D quadrature
    arbitrates between them.
    """
    beta1, beta2, beta3 = _check_temps_3(beta1, beta2, beta3)
    x, y = float(x), float(y)
    rsq = x * x + y * y
    if rsq > 1.0 + 1e-12:
        raise ValueError(f"point ({x!r}, {y!r}) lies outside the unit disk")
    return _PI_8 * math.exp(-beta1 * x - beta2 * y) * specfun.bessel_j0(
        abs(beta3) * math.sqrt(min(rsq, 1.0)))


def reduced_integrand_3_direct(x: float, y: float, beta1: float, beta2: float,
                               beta3: float) -> float:
    """Disk-reduced three-observable integrand from the direct z-integration.

    Integrating exp(-beta3 z)/(8 sqrt(h^2 - z^2)) over |z| <= h with
    h = sqrt(1 - x^2 - y^2) gives (pi/8) I_0(beta3 h) exactly, so the reduced
    integrand is (pi/8) exp(-beta1 x - beta2 y) I_0(beta3 h).  The test suite
    validates this pointwise against one-dimensional quadrature of the
    unreduced integrand.
    """
    beta1, beta2, beta3 = _check_temps_3(beta1, beta2, beta3)
    x, y = float(x), float(y)
    rsq = x * x + y * y
    if rsq > 1.0 + 1e-12:
        raise ValueError(f"point ({x!r}, {y!r}) lies outside the unit disk")
    h = math.sqrt(max(0.0, 1.0 - rsq))
    return _PI_8 * math.exp(-beta1 * x - beta2 * y) * specfun.bessel_i(
        0, abs(beta3) * h)


_INTEGRAND_CHOICES = ("j0", "direct", "full3d")


def partition_3(beta1: float, beta2: float, beta3: float,
                tol: Tolerance | None = None,
                integrand: str = "full3d") -> QuadResult:
    """Three-observable partition function.

    ``integrand`` selects the evaluation route: ``"j0"`` or ``"direct"``
    integrate the corresponding reduced form over the unit disk; ``"full3d"``
    integrates exp(-beta . s) against the singular ball measure and is the
    arbiter of correctness between the two reduced forms.
    """
    beta1, beta2, beta3 = _check_temps_3(beta1, beta2, beta3)
    if tol is None:
        tol = Tolerance()
    if integrand not in _INTEGRAND_CHOICES:
        raise ValueError(
            f"integrand must be one of {_INTEGRAND_CHOICES}, got {integrand!r}")
    if integrand == "j0":
        return integrate_disk(
            lambda x, y: reduced_integrand_3_j0(x, y, beta1, beta2, beta3), tol)
    if integrand == "direct":
        return integrate_disk(
            lambda x, y: reduced_integrand_3_direct(x, y, beta1, beta2, beta3), tol)
    return integrate_ball_bures(
        lambda x, y, z: math.exp(-beta1 * x - beta2 * y - beta3 * z), tol)


def mean_3(beta1: float, beta2: float, beta3: float,
           tol: Tolerance | None = None) -> tuple[float, float, float]:
    """Boltzmann-weighted mean Bloch vector under the singular ball measure.

    Computed by full three-dimensional quadrature (numerators and partition
    function separately).  The derived closed form -(beta_i/beta) I_2/I_1 is
    checked against this routine by the test suite, never assumed.
    """
    beta1, beta2, beta3 = _check_temps_3(beta1, beta2, beta3)
    if tol is None:
        tol = Tolerance(1e-8, 1e-8, 2000)

    def weighted(component):
        return integrate_ball_bures(
            lambda x, y, z: component(x, y, z) * math.exp(
                -beta1 * x - beta2 * y - beta3 * z), tol)

    z = weighted(lambda x, y, zz: 1.0)
    nx = weighted(lambda x, y, zz: x)
    ny = weighted(lambda x, y, zz: y)
    nz = weighted(lambda x, y, zz: zz)
    if not all(r.converged for r in (z, nx, ny, nz)):
        raise QuadratureError(
            f"mean quadrature did not converge at beta="
            f"({beta1}, {beta2}, {beta3})")
    return (nx.value / z.value, ny.value / z.value, nz.value / z.value)
