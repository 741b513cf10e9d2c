"""Cross-module invariant suite behind the command-line selftest.

Each check is a named predicate over library behavior with a one-line detail
string.  The suite is deterministic (seeded sampling, fixed grids) and
finishes in well under a minute; it is the release gate run by
``spinthermo selftest`` and is also exercised by the pytest suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from spinthermo import analysis, bures, output, semiclassical, specfun
from spinthermo.quadrature import Tolerance, integrate_1d, integrate_disk

__all__ = ["CheckResult", "GROUPS", "run_checks"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, worst: float, bound: float, extra: str = "") -> CheckResult:
    detail = f"worst {worst:.3e} vs bound {bound:.3e}"
    if extra:
        detail += f" ({extra})"
    return CheckResult(name, worst <= bound, detail)


# --- special functions --------------------------------------------------------

def check_bessel_recurrence() -> CheckResult:
    worst = 0.0
    xs = [0.1, 0.25, 0.7, 1.5, 3.0, 6.0, 10.0, 15.0, 22.0, 30.0]
    orders = [0.5 * k for k in range(1, 11)]  # 0.5 .. 5.0
    for nu in orders:
        for x in xs:
            lhs = specfun.bessel_i(nu - 1, x) - specfun.bessel_i(nu + 1, x) \
                - 2.0 * nu / x * specfun.bessel_i(nu, x)
            worst = max(worst, abs(lhs) / specfun.bessel_i(nu - 1, x))
    return _result("specfun.bessel_recurrence", worst, 1e-11)


def check_tanh_identity() -> CheckResult:
    worst = max(abs(math.tanh(b) - specfun.bessel_ratio(0.5, b))
                for b in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0))
    return _result("specfun.tanh_identity", worst, 1e-12)


# For D=1 the law is tanh(beta), which saturates at double precision: within
# ~1e-13 of 1 the true increment per grid step shrinks to a few ulp, below
# the rounding noise of any evaluation, and the value rounds to exactly 1.0
# beyond beta ~ 19.  Strictness is therefore required only below saturation;
# inside the saturated band only ulp-scale noise (1e-14) is tolerated.
_SATURATION_GAP = 1e-13
_SATURATION_NOISE = 1e-14
_TANH_SATURATION = 18.0


def check_monotonicity() -> CheckResult:
    grid = np.linspace(1e-3, 30.0, 1000)
    for d in (1, 3, 4, 6):
        vals = [specfun.magnetization(d, b) for b in grid]
        for a, b, beta in zip(vals, vals[1:], grid[1:]):
            ok = (b > a) if a < 1.0 - _SATURATION_GAP else (b >= a - _SATURATION_NOISE)
            if not ok:
                return CheckResult("specfun.monotonicity", False,
                                   f"non-increasing step for D={d} at beta={beta}")
    return CheckResult("specfun.monotonicity", True,
                       "increasing on (0, 30) for D in {1,3,4,6}")


def check_bounds() -> CheckResult:
    grid = np.linspace(1e-3, 30.0, 1000)
    for d in (1, 3, 4, 6):
        for b in grid:
            v = specfun.magnetization(d, b)
            hi_ok = v < 1.0 if (d != 1 or b <= _TANH_SATURATION) else v <= 1.0
            if not (0.0 < v and hi_ok):
                return CheckResult("specfun.bounds", False,
                                   f"magnetization({d}, {b}) = {v}")
    return CheckResult("specfun.bounds", True,
                       "0 < m < 1 for beta > 0 (<= 1 at tanh saturation)")


def check_ordering() -> CheckResult:
    grid = np.linspace(0.01, 10.0, 200)
    for b in grid:
        seq = [specfun.magnetization(d, b) for d in (1, 3, 4, 6)]
        if not (seq[0] > seq[1] > seq[2] > seq[3]):
            return CheckResult("specfun.ordering", False,
                               f"ordering violated at beta={b}")
    return CheckResult("specfun.ordering", True,
                       "D=1 > D=3 > D=4 > D=6 on (0, 10]")


def check_scaled_consistency() -> CheckResult:
    worst = 0.0
    for nu in (0, 1, 2, 3, 5.5):
        for x in (0.5, 5.0, 29.0, 31.0, 100.0, 600.0):
            a = specfun.bessel_i_scaled(nu, x) * math.exp(x)
            b = specfun.bessel_i(nu, x)
            worst = max(worst, abs(a - b) / b)
    return _result("specfun.scaled_consistency", worst, 1e-10)


# --- quadrature ----------------------------------------------------------------

def check_quad_linearity() -> CheckResult:
    f = lambda x: math.exp(-x)
    g = lambda x: x * x * math.cos(x)
    a, b = 0.0, 2.0
    rf = integrate_1d(f, a, b)
    rg = integrate_1d(g, a, b)
    rc = integrate_1d(lambda x: 2.0 * f(x) + 3.0 * g(x), a, b)
    gap = abs(rc.value - 2.0 * rf.value - 3.0 * rg.value)
    budget = rc.error_estimate + 2.0 * rf.error_estimate + 3.0 * rg.error_estimate
    return _result("quadrature.linearity", gap, max(budget, 1e-13))


def check_disk_symmetry() -> CheckResult:
    f = lambda x, y: math.exp(-(x * x + y * y)) + math.cos(3.0 * (x * x + y * y))
    a = integrate_disk(f)
    b = integrate_disk(lambda x, y: f(y, x))
    same = (a.value == b.value and a.error_estimate == b.error_estimate)
    return CheckResult("quadrature.disk_symmetry", same,
                       f"swap gap {abs(a.value - b.value):.3e}")


def check_error_honesty() -> CheckResult:
    cases = [
        (lambda x: x ** 2, 0.0, 1.0, 1.0 / 3.0),
        (lambda x: x ** 7, 0.0, 1.0, 1.0 / 8.0),
        (lambda x: math.exp(x), 0.0, 1.0, math.e - 1.0),
        (lambda x: math.exp(-x), 0.0, 5.0, 1.0 - math.exp(-5.0)),
        (lambda x: math.sin(x), 0.0, math.pi, 2.0),
        (lambda x: math.cos(10.0 * x), 0.0, 1.0, math.sin(10.0) / 10.0),
        (lambda x: 1.0 / (1.0 + 25.0 * x * x), -1.0, 1.0,
         2.0 * math.atan(5.0) / 5.0),
        (lambda x: math.sqrt(x), 0.0, 1.0, 2.0 / 3.0),
        (lambda x: x ** 1.5, 0.0, 4.0, 0.4 * 32.0),
        (lambda x: math.sqrt(max(0.0, 1.0 - x * x)), -1.0, 1.0, math.pi / 2.0),
        (lambda x: 1.0 / (1.0 + x), 0.0, 1.0, math.log(2.0)),
        (lambda x: math.exp(-x * x), -3.0, 3.0, math.sqrt(math.pi) * math.erf(3.0)),
        (lambda x: math.sinh(2.0 * x), 0.0, 1.0, (math.cosh(2.0) - 1.0) / 2.0),
        (lambda x: math.log(1.0 + x), 0.0, 1.0, 2.0 * math.log(2.0) - 1.0),
        (lambda x: abs(x - 0.5), 0.0, 1.0, 0.25),
        (lambda x: 1.0 / math.sqrt(1.0 + x), 0.0, 3.0, 2.0),
        (lambda x: x * math.exp(-x), 0.0, 10.0, 1.0 - 11.0 * math.exp(-10.0)),
        (lambda x: math.cos(x) ** 2, 0.0, 2.0 * math.pi, math.pi),
        (lambda x: x ** 3 - 2.0 * x, -1.0, 2.0, 0.75),
        (lambda x: math.atan(x), 0.0, 1.0,
         math.pi / 4.0 - 0.5 * math.log(2.0)),
    ]
    worst = 0.0
    for f, a, b, exact in cases:
        r = integrate_1d(f, a, b)
        true_err = abs(r.value - exact)
        allowed = 10.0 * max(r.error_estimate, 1e-15 * max(1.0, abs(exact)))
        worst = max(worst, true_err / allowed)
    return _result("quadrature.error_honesty", worst, 1.0,
                   "true error vs 10x estimate over 20 closed forms")


def check_quad_determinism() -> CheckResult:
    f = lambda x: math.exp(-x) * math.sin(3.0 * x)
    a = integrate_1d(f, 0.0, 4.0)
    b = integrate_1d(f, 0.0, 4.0)
    d1 = integrate_disk(lambda x, y: math.exp(-x + 0.5 * y))
    d2 = integrate_disk(lambda x, y: math.exp(-x + 0.5 * y))
    ok = a == b and d1 == d2
    return CheckResult("quadrature.determinism", ok,
                       "repeated runs bit-identical")


# --- semiclassical model --------------------------------------------------------

def _random_pairs(n: int = 25, span: float = 3.0, seed: int = 20240) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.uniform(-span, span, size=(n, 2))


def check_constraint_gradient() -> CheckResult:
    worst = 0.0
    h = 1e-5
    for lam1, lam2 in _random_pairs():
        m1, m2 = semiclassical.mean(lam1, lam2)
        fd1 = (semiclassical.omega(lam1 + h, lam2)
               - semiclassical.omega(lam1 - h, lam2)) / (2.0 * h)
        fd2 = (semiclassical.omega(lam1, lam2 + h)
               - semiclassical.omega(lam1, lam2 - h)) / (2.0 * h)
        worst = max(worst, abs(fd1 - m1), abs(fd2 - m2))
    return _result("semiclassical.constraint_gradient", worst, 1e-8)


def _expm_taylor(a: np.ndarray) -> np.ndarray:
    """Brute-force scaling-and-squaring matrix exponential (2x2 oracle)."""
    norm = float(np.abs(a).sum(axis=1).max())
    squarings = max(0, int(math.ceil(math.log2(max(norm, 1e-30) / 0.5))))
    b = a / (2.0 ** squarings)
    term = np.eye(2, dtype=complex)
    total = np.eye(2, dtype=complex)
    for k in range(1, 40):
        term = term @ b / k
        total = total + term
        if float(np.abs(term).max()) < 1e-18:
            break
    for _ in range(squarings):
        total = total @ total
    return total


def check_matrix_oracle() -> CheckResult:
    worst = 0.0
    for lam1, lam2 in _random_pairs():
        h = -(lam1 * semiclassical.SIGMA1 + lam2 * semiclassical.SIGMA2)
        rho_ref = _expm_taylor(h)
        rho_ref = rho_ref / np.trace(rho_ref)
        m1_ref = float(np.trace(rho_ref @ semiclassical.SIGMA1).real)
        m2_ref = float(np.trace(rho_ref @ semiclassical.SIGMA2).real)
        mom = semiclassical.moments(lam1, lam2)
        worst = max(worst,
                    abs(mom.mean1 - m1_ref), abs(mom.mean2 - m2_ref),
                    abs(mom.var1 - (1.0 - m1_ref ** 2)),
                    abs(mom.var2 - (1.0 - m2_ref ** 2)),
                    abs(mom.cov - (-m1_ref * m2_ref)))
        rho = semiclassical.density_matrix(lam1, lam2)
        worst = max(worst, float(np.abs(rho - rho_ref).max()))
    return _result("semiclassical.matrix_oracle", worst, 1e-10)


def check_rotation_covariance() -> CheckResult:
    worst = 0.0
    for lam1, lam2 in _random_pairs(10):
        for theta in (0.3, 1.2, 2.5):
            c, s = math.cos(theta), math.sin(theta)
            r1 = c * lam1 - s * lam2
            r2 = s * lam1 + c * lam2
            m1, m2 = semiclassical.mean(lam1, lam2)
            n1, n2 = semiclassical.mean(r1, r2)
            worst = max(worst, abs(n1 - (c * m1 - s * m2)),
                        abs(n2 - (s * m1 + c * m2)))
    return _result("semiclassical.rotation_covariance", worst, 1e-12)


def check_radial_reduction() -> CheckResult:
    worst = 0.0
    for lam1, lam2 in _random_pairs():
        m1, m2 = semiclassical.mean(lam1, lam2)
        worst = max(worst, abs(math.hypot(m1, m2)
                               - math.tanh(math.hypot(lam1, lam2))))
    return _result("semiclassical.radial_reduction", worst, 1e-12)


def check_susceptibility_curvature() -> CheckResult:
    worst = 0.0
    h = 1e-4
    neg_omega = lambda l1, l2: -semiclassical.omega(l1, l2)
    for lam1, lam2 in _random_pairs(10):
        s = semiclassical.susceptibilities(lam1, lam2)
        d11 = (neg_omega(lam1 + h, lam2) - 2.0 * neg_omega(lam1, lam2)
               + neg_omega(lam1 - h, lam2)) / (h * h)
        d12 = (neg_omega(lam1 + h, lam2 + h) - neg_omega(lam1 + h, lam2 - h)
               - neg_omega(lam1 - h, lam2 + h)
               + neg_omega(lam1 - h, lam2 - h)) / (4.0 * h * h)
        worst = max(worst, abs(d11 - s.var1), abs(d12 - s.cov))
    return _result("semiclassical.susceptibility_curvature", worst, 1e-6)


def check_semiclassical_fit_roundtrip() -> CheckResult:
    worst = 0.0
    for lam1, lam2 in _random_pairs(20, span=3.5):
        if math.hypot(lam1, lam2) > 5.0:
            continue
        t1, t2 = semiclassical.mean(lam1, lam2)
        r1, r2 = semiclassical.fit(t1, t2)
        worst = max(worst, abs(r1 - lam1), abs(r2 - lam2))
    return _result("semiclassical.fit_roundtrip", worst, 1e-8)


# --- ensemble (disk / ball) model ----------------------------------------------

_TIGHT = Tolerance(1e-12, 1e-12, 2000)


def check_gradient_consistency() -> CheckResult:
    worst = 0.0
    h = 1e-4
    grid = np.linspace(-3.0, 3.0, 5)
    for b1 in grid:
        for b2 in grid:
            mom = bures.moments_2(b1, b2, _TIGHT)
            lp = math.log(bures.partition_2(b1 + h, b2, _TIGHT).value)
            lm = math.log(bures.partition_2(b1 - h, b2, _TIGHT).value)
            fd1 = (lp - lm) / (2.0 * h)
            lp = math.log(bures.partition_2(b1, b2 + h, _TIGHT).value)
            lm = math.log(bures.partition_2(b1, b2 - h, _TIGHT).value)
            fd2 = (lp - lm) / (2.0 * h)
            worst = max(worst,
                        abs(fd1 + mom.mean1) / max(abs(mom.mean1), 1e-2),
                        abs(fd2 + mom.mean2) / max(abs(mom.mean2), 1e-2))
    return _result("bures.gradient_consistency", worst, 1e-5)


def check_second_derivatives() -> CheckResult:
    worst = 0.0
    h = 1e-2
    grid = np.linspace(-3.0, 3.0, 5)
    for b1 in grid:
        for b2 in grid:
            mom = bures.moments_2(b1, b2, _TIGHT)
            lz = lambda x, y: math.log(bures.partition_2(x, y, _TIGHT).value)
            center = lz(b1, b2)
            d11 = (lz(b1 + h, b2) - 2.0 * center + lz(b1 - h, b2)) / (h * h)
            d12 = (lz(b1 + h, b2 + h) - lz(b1 + h, b2 - h)
                   - lz(b1 - h, b2 + h) + lz(b1 - h, b2 - h)) / (4.0 * h * h)
            worst = max(worst,
                        abs(d11 - mom.var1) / max(abs(mom.var1), 1e-2),
                        abs(d12 - mom.cov) / max(abs(mom.cov), 1e-2))
    return _result("bures.second_derivatives", worst, 1e-4)


def check_rotational_invariance() -> CheckResult:
    worst = 0.0
    for beta in (0.5, 2.0, 5.0):
        z1 = bures.partition_2(beta, 0.0, _TIGHT).value
        z2 = bures.partition_2(0.0, beta, _TIGHT).value
        s = beta / math.sqrt(2.0)
        z3 = bures.partition_2(s, s, _TIGHT).value
        worst = max(worst, abs(z1 - z2) / z1, abs(z1 - z3) / z1)
    return _result("bures.rotational_invariance", worst, 1e-10)


def check_parity() -> CheckResult:
    worst = 0.0
    for b1, b2 in ((1.0, 2.0), (-0.5, 1.5), (2.5, -2.0)):
        mp_ = bures.moments_2(b1, b2, _TIGHT)
        mm = bures.moments_2(-b1, -b2, _TIGHT)
        worst = max(worst, abs(mp_.mean1 + mm.mean1), abs(mp_.mean2 + mm.mean2),
                    abs(mp_.var1 - mm.var1), abs(mp_.var2 - mm.var2),
                    abs(mp_.cov - mm.cov))
    for b in (0.7, 2.0):
        worst = max(worst, abs(bures.moments_2(0.0, b, _TIGHT).cov),
                    abs(bures.moments_2(b, 0.0, _TIGHT).cov))
    return _result("bures.parity", worst, 1e-10)


def check_marginalization() -> CheckResult:
    worst = 0.0
    for b1, b2 in ((1.0, 2.0), (-2.0, 0.5)):
        z3 = bures.partition_3(b1, b2, 0.0, Tolerance(1e-10, 1e-10, 2000),
                               integrand="direct")
        z2 = bures.partition_2(b1, b2, _TIGHT)
        worst = max(worst, abs(z3.value - z2.value))
    return _result("bures.marginalization", worst, 1e-9)


def check_moment_bounds() -> CheckResult:
    grid = np.linspace(-4.0, 4.0, 4)
    for b1 in grid:
        for b2 in grid:
            mom = bures.moments_2(b1, b2, _TIGHT)
            if not (abs(mom.mean1) < 1.0 and abs(mom.mean2) < 1.0):
                return CheckResult("bures.moment_bounds", False,
                                   f"mean out of range at ({b1}, {b2})")
            if not (0.0 < mom.var1 <= 0.25 + 1e-9
                    and 0.0 < mom.var2 <= 0.25 + 1e-9):
                return CheckResult("bures.moment_bounds", False,
                                   f"variance out of range at ({b1}, {b2})")
            if abs(mom.cov) > math.sqrt(mom.var1 * mom.var2) + 1e-12:
                return CheckResult("bures.moment_bounds", False,
                                   f"covariance bound violated at ({b1}, {b2})")
    return CheckResult("bures.moment_bounds", True,
                       "|mean| < 1, 0 < var <= 1/4, |cov| <= sqrt(var1 var2)")


# --- analysis -------------------------------------------------------------------

def check_extremum() -> CheckResult:
    rep = analysis.find_max_difference()
    ok = abs(rep.argmax - 1.45489) <= 1e-3 and abs(rep.max_value - 0.561292) <= 1e-4
    return CheckResult("analysis.extremum", ok,
                       f"argmax {rep.argmax:.6f}, max {rep.max_value:.6f}")


def check_origin_difference() -> CheckResult:
    spec = analysis.GridSpec(-1.0, 1.0, 3, -1.0, 1.0, 3)
    worst = 0.0
    for quantity in ("mean1", "mean2", "cov"):
        d = analysis.difference_surface(quantity, spec, _TIGHT)
        center = d.values[1 * 3 + 1]
        worst = max(worst, abs(center))
    return _result("analysis.origin_difference", worst, 1e-10)


def check_reproducibility() -> CheckResult:
    spec = analysis.GridSpec(-2.0, 2.0, 3, -2.0, 2.0, 3)
    s1 = analysis.surface("bures", "cov", spec)
    s2 = analysis.surface("bures", "cov", spec)
    ok = bool(np.array_equal(s1.values, s2.values))
    return CheckResult("analysis.reproducibility", ok,
                       "repeated surfaces bit-identical")


def check_fit_roundtrip() -> CheckResult:
    worst = 0.0
    for b1 in (-3.0, 0.0, 3.0):
        for b2 in (-3.0, 0.0, 3.0):
            t1, t2 = bures.closed_mean_2(b1, b2)
            r1, r2 = analysis.fit_bures(t1, t2)
            worst = max(worst, abs(r1 - b1), abs(r2 - b2))
    return _result("analysis.fit_roundtrip", worst, 1e-6)


def check_sign_agreement() -> CheckResult:
    grid = np.linspace(-3.0, 3.0, 5)
    for b1 in grid:
        for b2 in grid:
            q = bures.closed_mean_2(b1, b2)[0]
            s = semiclassical.mean(b1, b2)[0]
            if abs(q) >= 1.0 or abs(s) >= 1.0:
                return CheckResult("analysis.sign_agreement", False,
                                   f"mean magnitude >= 1 at ({b1}, {b2})")
            if q * s < 0.0:
                return CheckResult("analysis.sign_agreement", False,
                                   f"sign mismatch at ({b1}, {b2})")
    return CheckResult("analysis.sign_agreement", True,
                       "mean surfaces agree in sign, magnitudes < 1")


# --- serialization ---------------------------------------------------------------

def check_output_roundtrip() -> CheckResult:
    spec = analysis.GridSpec(-1.0, 1.0, 3, -1.0, 1.0, 3)
    grid = analysis.surface("semiclassical", "mean1", spec)
    meta = {"tool": "spinthermo", "check": "roundtrip"}
    text = output.surface_csv(grid, meta)
    comments, header, rows = output.parse_csv(text)
    rebuilt = "\n".join(comments) + "\n" + header + "\n" + "\n".join(
        ",".join(output.format_float(v) for v in row) for row in rows) + "\n"
    csv_ok = rebuilt == text
    jtext = output.surface_json(grid, meta)
    import json as _json
    json_ok = output.dumps_json(_json.loads(jtext)) == jtext
    ok = csv_ok and json_ok
    return CheckResult("output.roundtrip", ok,
                       f"csv={'ok' if csv_ok else 'MISMATCH'} "
                       f"json={'ok' if json_ok else 'MISMATCH'}")


GROUPS: dict[str, tuple] = {
    "specfun": (check_bessel_recurrence, check_tanh_identity, check_monotonicity,
                check_bounds, check_ordering, check_scaled_consistency),
    "quadrature": (check_quad_linearity, check_disk_symmetry,
                   check_error_honesty, check_quad_determinism),
    "semiclassical": (check_constraint_gradient, check_matrix_oracle,
                      check_rotation_covariance, check_radial_reduction,
                      check_susceptibility_curvature,
                      check_semiclassical_fit_roundtrip),
    "bures": (check_gradient_consistency, check_second_derivatives,
              check_rotational_invariance, check_parity, check_marginalization,
              check_moment_bounds),
    "analysis": (check_extremum, check_origin_difference, check_reproducibility,
                 check_fit_roundtrip, check_sign_agreement),
    "output": (check_output_roundtrip,),
}


def run_checks(groups=None) -> list[CheckResult]:
    """Run the invariant suite (all groups by default) and collect results."""
    results = []
    for name, checks in GROUPS.items():
        if groups is not None and name not in groups:
            continue
        for check in checks:
            try:
                results.append(check())
            except Exception as exc:  # a crashed check is a failed check
                results.append(CheckResult(
                    f"{name}.{check.__name__}", False,
                    f"raised {type(exc).__name__}: {exc}"))
    return results
