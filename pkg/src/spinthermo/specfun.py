"""Modified Bessel functions, their ratios, and magnetization laws.

Evaluation strategy
-------------------
* ``bessel_i``: ascending power series for x <= 30 (all terms positive, so
  plain double summation keeps full relative accuracy); hyperbolic closed
  forms for orders +-1/2; large-argument asymptotic expansion above 30, with
  overflow signaled rather than saturated.
* ``bessel_i_scaled``: e^(-x) I_nu(x), finite over [0, 1e6] via the same
  asymptotic expansion.
* ``bessel_ratio``: I_nu(x)/I_(nu-1)(x) by the Gauss continued fraction
  (modified Lentz) below 30 and by a quotient of scaled asymptotic values
  above, never by dividing two overflowed numbers.
* ``bessel_j0``: alternating series for x <= 12, Hankel asymptotic form above.

Supported orders are integers and half-integers with nu >= -1/2.

The magnetization family maps a dimension parameter D >= 1 to the law
I_(D/2)(beta)/I_(D/2-1)(beta), extended oddly to beta < 0: D=1 is tanh(beta),
D=3 the Langevin function, D=4 the ratio I_2/I_1, D=6 the ratio I_3/I_2.
"""

from __future__ import annotations

import math

__all__ = [
    "bessel_i",
    "bessel_i_scaled",
    "bessel_ratio",
    "bessel_j0",
    "magnetization",
    "magnetization_slope",
    "heat_capacity",
]

_EPS = 2.220446049250313e-16
_SERIES_CUTOFF = 30.0
_LOG_DBL_MAX = 709.782712893384

# test hook: selftest fault injection scales every bessel_ratio result
# by (1 + _PERTURB_RATIO)
_PERTURB_RATIO = 0.0


def _check_order(nu: float) -> float:
    """Validate an integer or half-integer order with nu >= -1/2."""
    nu = float(nu)
    if not math.isfinite(nu) or (2.0 * nu) != round(2.0 * nu):
        raise ValueError(f"order must be an integer or half-integer, got {nu!r}")
    if nu < -0.5:
        raise ValueError(f"order must satisfy nu >= -1/2, got {nu!r}")
    return nu


def _series_i(nu: float, x: float) -> float:
    # ascending series: sum_k (x/2)^(2k+nu) / (k! Gamma(nu+k+1))
    half = 0.5 * x
    term = math.exp(nu * math.log(half) - math.lgamma(nu + 1.0)) if x > 0.0 else (
        1.0 if nu == 0.0 else 0.0)
    total = term
    q = half * half
    for k in range(1, 500):
        term *= q / (k * (nu + k))
        total += term
        if term <= total * 1e-17:
            return total
    raise ArithmeticError(f"series for I_{nu}({x}) failed to converge")


def _asym_i_scaled(nu: float, x: float) -> float:
    # e^(-x) I_nu(x) ~ (2 pi x)^(-1/2) * sum_k c_k, c_0 = 1,
    # c_k = -c_(k-1) * (4 nu^2 - (2k-1)^2) / (8 x k); truncated at the
    # smallest term (series is asymptotic, not convergent).
    mu = 4.0 * nu * nu
    term = 1.0
    total = 1.0
    prev = abs(term)
    for k in range(1, 60):
        term *= -(mu - (2.0 * k - 1.0) ** 2) / (8.0 * x * k)
        if abs(term) >= prev:
            break
        total += term
        prev = abs(term)
        if abs(term) <= abs(total) * 1e-17:
            break
    return total / math.sqrt(2.0 * math.pi * x)


def bessel_i(order: float, x: float) -> float:
    """Modified Bessel function of the first kind, I_nu(x), for x >= 0.

    Raises ``OverflowError`` once e^x growth leaves the double range; use
    :func:`bessel_i_scaled` there instead.
    """
    nu = _check_order(order)
    x = float(x)
    if x < 0.0:
        raise ValueError(f"require x >= 0, got {x!r}")
    if x == 0.0:
        if nu == 0.0:
            return 1.0
        return math.inf if nu < 0.0 else 0.0
    if nu == 0.5:
        return math.sqrt(2.0 / (math.pi * x)) * math.sinh(x)
    if nu == -0.5:
        return math.sqrt(2.0 / (math.pi * x)) * math.cosh(x)
    if x <= _SERIES_CUTOFF:
        return _series_i(nu, x)
    scaled = _asym_i_scaled(nu, x)
    if x + math.log(scaled) > _LOG_DBL_MAX:
        raise OverflowError(
            f"I_{nu}({x}) exceeds the double range; use bessel_i_scaled")
    return scaled * math.exp(x)


def bessel_i_scaled(order: float, x: float) -> float:
    """Exponentially scaled modified Bessel function e^(-x) I_nu(x), x >= 0."""
    nu = _check_order(order)
    x = float(x)
    if x < 0.0:
        raise ValueError(f"require x >= 0, got {x!r}")
    if x == 0.0:
        if nu == 0.0:
            return 1.0
        return math.inf if nu < 0.0 else 0.0
    if x <= _SERIES_CUTOFF:
        if nu == 0.5:
            # e^(-x) sinh(x) = (1 - e^(-2x))/2, stable for all x
            return math.sqrt(2.0 / (math.pi * x)) * 0.5 * -math.expm1(-2.0 * x)
        if nu == -0.5:
            return math.sqrt(2.0 / (math.pi * x)) * 0.5 * (1.0 + math.exp(-2.0 * x))
        return _series_i(nu, x) * math.exp(-x)
    return _asym_i_scaled(nu, x)


def bessel_ratio(order: float, x: float) -> float:
    """Ratio I_nu(x) / I_(nu-1)(x) for x > 0 and nu >= 1/2.

    Uses the Gauss continued fraction (modified Lentz), which recurses in the
    numerically stable downward direction; for x > 30 the ratio of scaled
    asymptotic values is used instead.  Lies in (0, 1) for nu >= 1/2, x > 0,
    saturating to 1.0 only where the exact value rounds there in double
    precision.
    """
    nu = _check_order(order)
    if nu < 0.5:
        raise ValueError(f"ratio needs nu >= 1/2 so that nu-1 >= -1/2, got {nu!r}")
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"require x > 0, got {x!r}")

    if x > _SERIES_CUTOFF:
        r = _asym_i_scaled(nu, x) / _asym_i_scaled(nu - 1.0, x)
    else:
        # r = 1 / (b_1 + 1 / (b_2 + ...)), b_k = 2(nu + k - 1)/x
        tiny = 1e-300
        fval = tiny
        c = fval
        d = 0.0
        for k in range(1, 400):
            bk = 2.0 * (nu + k - 1.0) / x
            d = bk + d
            if d == 0.0:
                d = tiny
            c = bk + 1.0 / c
            if c == 0.0:
                c = tiny
            d = 1.0 / d
            delta = c * d
            fval *= delta
            if abs(delta - 1.0) < 1e-16:
                break
        else:
            raise ArithmeticError(
                f"continued fraction for I_{nu}/I_{nu - 1} at x={x} did not converge")
        r = fval
    # the ratio is strictly below 1 for nu >= 1/2; rounding can overshoot by
    # an ulp once the true value saturates at double precision
    if r > 1.0:
        r = 1.0
    return r * (1.0 + _PERTURB_RATIO)


def bessel_j0(x: float) -> float:
    """Bessel function of the first kind J_0(x) for x >= 0."""
    x = float(x)
    if x < 0.0:
        raise ValueError(f"require x >= 0, got {x!r}")
    if x <= 12.0:
        q = 0.25 * x * x
        term = 1.0
        total = 1.0
        for k in range(1, 60):
            term *= -q / (k * k)
            total += term
            if abs(term) < 1e-18:
                return total
        return total
    # Hankel asymptotic form: J0 = sqrt(2/(pi x)) (P cos(chi) + Q sin(chi)),
    # chi = x - pi/4, P = 1 - A2/x^2 + A4/x^4 - ..., Q = A1/x - A3/x^3 + ...,
    # A_k = prod_(j<=k) (2j-1)^2 / (k! 8^k); truncated at the smallest term.
    p = 1.0
    q = 0.0
    u = 1.0
    prev = math.inf
    for k in range(1, 40):
        u *= (2.0 * k - 1.0) ** 2 / (8.0 * k * x)
        if u >= prev:
            break
        prev = u
        sign = 1.0 if (k // 2) % 2 == 0 else -1.0
        if k % 2 == 1:
            q += sign * u
        else:
            p += sign * u
        if u < 1e-18:
            break
    chi = x - 0.25 * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(chi) + q * math.sin(chi))


def magnetization(dimension: int, beta: float) -> float:
    """Magnetization law I_(D/2)(|beta|)/I_(D/2-1)(|beta|), odd in beta.

    D=1 reduces to tanh(beta), D=3 to the Langevin function
    coth(beta) - 1/beta, D=4 to I_2/I_1, D=6 to I_3/I_2.  The value lies in
    [0, 1) for beta >= 0 (saturating to 1.0 only at double-precision rounding)
    and is increasing in beta.
    """
    d = _check_dimension(dimension)
    beta = float(beta)
    if not math.isfinite(beta):
        raise ValueError(f"beta must be finite, got {beta!r}")
    if beta == 0.0:
        return 0.0
    r = bessel_ratio(0.5 * d, abs(beta))
    return math.copysign(r, beta)


def magnetization_slope(dimension: int, beta: float) -> float:
    """d/dbeta of :func:`magnetization`, evaluated via the ratio identity.

    With R = I_(D/2)/I_(D/2-1): R' = 1 - (D-1) R/beta - R^2, which avoids the
    cancellation of differenced Bessel values; the analytic limit at beta = 0
    is 1/D.  Even in beta.
    """
    d = _check_dimension(dimension)
    x = abs(float(beta))
    if x < 1e-4:
        # R = x/D - x^3/(D^2 (D+2)) + O(x^5)  =>  R' = 1/D - 3 x^2/(D^2 (D+2))
        return 1.0 / d - 3.0 * x * x / (d * d * (d + 2.0))
    r = bessel_ratio(0.5 * d, x)
    return 1.0 - (d - 1.0) * r / x - r * r


def heat_capacity(dimension: int, beta: float) -> float:
    """Heat capacity beta^2 * d(magnetization)/dbeta at inverse temperature beta.

    Under T = 1/beta this is dE/dT.  For D=1 it decays to zero as beta grows;
    for D=4 it approaches the positive constant 3/2, a nonzero zero-temperature
    limit.
    """
    d = _check_dimension(dimension)
    beta = float(beta)
    if beta < 0.0:
        raise ValueError(f"require beta >= 0, got {beta!r}")
    if beta == 0.0:
        return 0.0
    return beta * beta * magnetization_slope(d, beta)


def _check_dimension(dimension: int) -> int:
    if dimension != int(dimension) or int(dimension) < 1:
        raise ValueError(f"dimension must be a positive integer, got {dimension!r}")
    return int(dimension)
