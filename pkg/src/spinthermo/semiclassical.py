"""Maximum-entropy model for two noncommuting spin-1/2 observables.

The stationary density matrix constrained to reproduce measured expectation
values of the Pauli observables sigma_1 and sigma_2 is

    rho = exp(Omega * I - lam1 * sigma_1 - lam2 * sigma_2),

with Omega = -ln Tr exp(-lam1 sigma_1 - lam2 sigma_2) enforcing unit trace.
Because (lam1 sigma_1 + lam2 sigma_2)^2 = lam^2 I with lam = hypot(lam1, lam2),
everything is available in closed form:

    Omega        = -ln(2 cosh lam)
    rho          = I/2 - tanh(lam) (lam1 sigma_1 + lam2 sigma_2) / (2 lam)
    <sigma_i>    = -lam_i tanh(lam) / lam

Two distinct second-moment notions coexist and are both exposed:

* :func:`moments` -- quantum variances and the symmetrized covariance under
  rho (full-Pauli convention sigma_i^2 = I, so var_i = 1 - <sigma_i>^2 and
  cov = -<sigma_1><sigma_2>; the anticommutator of distinct Pauli matrices
  vanishes).
* :func:`susceptibilities` -- the curvature of the log-partition function,
  d^2 ln Tr exp(-lam.sigma) / dlam_i dlam_j.  This is the construction that
  parallels the Boltzmann-ensemble variances/covariance of the geometric
  model (which are exactly the curvature of ITS log-partition function), and
  it is what the surface comparison plots.  The two notions agree on the
  coordinate axes for var of the driven observable but differ off-axis.

The lam -> 0 limits are returned analytically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SIGMA1",
    "SIGMA2",
    "SIGMA3",
    "PAULI",
    "SemiclassicalMoments",
    "Susceptibilities",
    "omega",
    "density_matrix",
    "mean",
    "moments",
    "susceptibilities",
    "fit",
]

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

PAULI = {"sigma1": SIGMA1, "sigma2": SIGMA2, "sigma3": SIGMA3}


@dataclass(frozen=True)
class SemiclassicalMoments:
    """First and second moments of (sigma_1, sigma_2) in the stationary state."""

    mean1: float
    mean2: float
    var1: float
    var2: float
    cov: float


@dataclass(frozen=True)
class Susceptibilities:
    """Curvature of the log-partition function in the multipliers."""

    var1: float
    var2: float
    cov: float


def _check_multipliers(lam1: float, lam2: float) -> tuple[float, float]:
    lam1, lam2 = float(lam1), float(lam2)
    if not (math.isfinite(lam1) and math.isfinite(lam2)):
        raise ValueError(f"multipliers must be finite, got ({lam1!r}, {lam2!r})")
    return lam1, lam2


def omega(lam1: float, lam2: float) -> float:
    """Normalization multiplier Omega = -ln Tr exp(-lam1 sigma1 - lam2 sigma2).

    Equals -ln(2 cosh lam) with lam = hypot(lam1, lam2); evaluated in the
    overflow-free form -(lam + ln(1 + e^(-2 lam))).
    """
    lam1, lam2 = _check_multipliers(lam1, lam2)
    lam = math.hypot(lam1, lam2)
    return -(lam + math.log1p(math.exp(-2.0 * lam)))


def density_matrix(lam1: float, lam2: float) -> np.ndarray:
    """The maximum-entropy density matrix as a 2x2 complex array.

    Closed form via the eigendecomposition of lam1 sigma1 + lam2 sigma2
    (eigenvalues +-lam): rho = I/2 - tanh(lam) H / (2 lam).  Hermitian with
    unit trace and eigenvalues (1 +- tanh lam)/2 >= 0.
    """
    lam1, lam2 = _check_multipliers(lam1, lam2)
    lam = math.hypot(lam1, lam2)
    if lam == 0.0:
        return np.eye(2, dtype=complex) / 2.0
    scale = math.tanh(lam) / (2.0 * lam)
    return np.eye(2, dtype=complex) / 2.0 - scale * (lam1 * SIGMA1 + lam2 * SIGMA2)


def mean(lam1: float, lam2: float) -> tuple[float, float]:
    """Constrained expectation values (<sigma_1>, <sigma_2>).

    <sigma_i> = -lam_i tanh(lam)/lam; the lam = 0 limit is (0, 0).  With
    lam2 = 0 the first component reduces to -tanh(lam1), the one-observable
    magnetization law.
    """
    lam1, lam2 = _check_multipliers(lam1, lam2)
    lam = math.hypot(lam1, lam2)
    if lam == 0.0:
        return (0.0, 0.0)
    factor = math.tanh(lam) / lam
    return (-lam1 * factor, -lam2 * factor)


def moments(lam1: float, lam2: float) -> SemiclassicalMoments:
    """Means plus quantum variances and symmetrized covariance under rho.

    var_i = Tr(rho sigma_i^2) - Tr(rho sigma_i)^2 and
    cov = Tr(rho {sigma_1, sigma_2})/2 - Tr(rho sigma_1) Tr(rho sigma_2),
    computed literally from the density matrix; with full Pauli matrices they
    equal 1 - mean_i^2 and -mean1*mean2.
    """
    m1, m2 = mean(lam1, lam2)
    rho = density_matrix(lam1, lam2)
    tr_s1s1 = float(np.trace(rho @ SIGMA1 @ SIGMA1).real)
    tr_s2s2 = float(np.trace(rho @ SIGMA2 @ SIGMA2).real)
    anti = SIGMA1 @ SIGMA2 + SIGMA2 @ SIGMA1
    tr_anti = float(np.trace(rho @ anti).real)
    return SemiclassicalMoments(
        mean1=m1,
        mean2=m2,
        var1=tr_s1s1 - m1 * m1,
        var2=tr_s2s2 - m2 * m2,
        cov=0.5 * tr_anti - m1 * m2,
    )


def susceptibilities(lam1: float, lam2: float) -> Susceptibilities:
    """Second derivatives of ln Tr exp(-lam.sigma) = -Omega in the multipliers.

    With lam = hypot(lam1, lam2), t = tanh(lam):

        d^2(-Omega)/dlam_i dlam_j
            = (t/lam) delta_ij + (lam_i lam_j/lam^2) (1 - t^2 - t/lam)

    This mirrors the ensemble model, whose variances and covariance are the
    same second derivatives of its own log-partition function in (beta1,
    beta2); difference surfaces therefore compare like with like.  The
    lam -> 0 limit is var = 1, cov = 0.  On the lam2 = 0 axis var1 reduces
    to sech^2(lam1), where it coincides with the quantum variance of
    :func:`moments`.
    """
    lam1, lam2 = _check_multipliers(lam1, lam2)
    lam = math.hypot(lam1, lam2)
    if lam < 1e-8:
        return Susceptibilities(var1=1.0, var2=1.0, cov=0.0)
    t = math.tanh(lam)
    transverse = t / lam
    radial_excess = (1.0 - t * t) - transverse
    u1 = lam1 / lam
    u2 = lam2 / lam
    return Susceptibilities(
        var1=transverse + u1 * u1 * radial_excess,
        var2=transverse + u2 * u2 * radial_excess,
        cov=u1 * u2 * radial_excess,
    )


def fit(target1: float, target2: float) -> tuple[float, float]:
    """Multipliers reproducing the requested expectation values.

    Closed-form inverse of :func:`mean`: with m = hypot(target1, target2),
    lam = artanh(m) and lam_i = -target_i * lam / m.  Targets must lie in the
    open unit disk; on or outside the boundary the multipliers diverge.
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
    lam = math.atanh(m)
    return (-t1 * lam / m, -t2 * lam / m)
