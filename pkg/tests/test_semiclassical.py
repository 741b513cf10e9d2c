"""Maximum-entropy model against the brute-force matrix-exponential oracle."""

import math

import numpy as np
import pytest

from spinthermo import semiclassical as sc


def expm_oracle(a: np.ndarray) -> np.ndarray:
    """Scaling-and-squaring Taylor exponential, independent of the closed form."""
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


def pairs(n=25, span=3.0, seed=777):
    rng = np.random.default_rng(seed)
    return rng.uniform(-span, span, size=(n, 2))


class TestOmega:
    def test_at_origin(self):
        assert abs(sc.omega(0.0, 0.0) + math.log(2.0)) <= 1e-15

    def test_single_axis(self):
        assert abs(sc.omega(1.0, 0.0) + math.log(2.0 * math.cosh(1.0))) <= 1e-14

    def test_rotational_invariance(self):
        assert abs(sc.omega(3.0, 4.0) + math.log(2.0 * math.cosh(5.0))) <= 1e-13

    def test_large_multipliers_no_overflow(self):
        # ln(2 cosh lam) -> lam for large lam; naive cosh would overflow
        v = sc.omega(500.0, 500.0)
        assert math.isfinite(v)
        assert abs(v + math.hypot(500.0, 500.0)) <= 1e-9

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            sc.omega(math.inf, 0.0)


class TestDensityMatrix:
    def test_maximally_mixed(self):
        rho = sc.density_matrix(0.0, 0.0)
        assert np.allclose(rho, np.eye(2) / 2.0, atol=0.0)

    def test_eigenvalues_single_axis(self):
        rho = sc.density_matrix(1.0, 0.0)
        eig = np.sort(np.linalg.eigvalsh(rho))
        expect = np.sort([math.exp(-1.0), math.exp(1.0)]) / (2.0 * math.cosh(1.0))
        assert np.max(np.abs(eig - expect)) <= 1e-14

    def test_invariants(self):
        for lam1, lam2 in pairs(10):
            rho = sc.density_matrix(lam1, lam2)
            assert np.abs(rho - rho.conj().T).max() <= 1e-14
            assert abs(np.trace(rho).real - 1.0) <= 1e-14
            assert np.linalg.eigvalsh(rho).min() >= -1e-14

    def test_purity(self):
        rho = sc.density_matrix(1.0, 1.0)
        purity = float(np.trace(rho @ rho).real)
        expect = (1.0 + math.tanh(math.sqrt(2.0)) ** 2) / 2.0
        assert abs(purity - expect) <= 1e-13
        oracle = expm_oracle(-(sc.SIGMA1 + sc.SIGMA2))
        oracle = oracle / np.trace(oracle)
        assert abs(purity - float(np.trace(oracle @ oracle).real)) <= 1e-13

    def test_traces_reproduce_means(self):
        for lam1, lam2 in pairs(10):
            rho = sc.density_matrix(lam1, lam2)
            m1, m2 = sc.mean(lam1, lam2)
            assert abs(float(np.trace(rho @ sc.SIGMA1).real) - m1) <= 1e-13
            assert abs(float(np.trace(rho @ sc.SIGMA2).real) - m2) <= 1e-13


class TestMean:
    def test_origin(self):
        assert sc.mean(0.0, 0.0) == (0.0, 0.0)

    def test_single_axis(self):
        m1, m2 = sc.mean(1.0, 0.0)
        assert abs(m1 + math.tanh(1.0)) <= 1e-15
        assert m2 == 0.0

    def test_radial_form(self):
        m1, m2 = sc.mean(3.0, 4.0)
        assert abs(m1 + 0.6 * math.tanh(5.0)) <= 1e-14
        assert abs(m2 + 0.8 * math.tanh(5.0)) <= 1e-14

    def test_matrix_oracle(self):
        for lam1, lam2 in pairs():
            ref = expm_oracle(-(lam1 * sc.SIGMA1 + lam2 * sc.SIGMA2))
            ref = ref / np.trace(ref)
            m1, m2 = sc.mean(lam1, lam2)
            assert abs(m1 - float(np.trace(ref @ sc.SIGMA1).real)) <= 1e-10
            assert abs(m2 - float(np.trace(ref @ sc.SIGMA2).real)) <= 1e-10

    def test_constraint_gradient(self):
        h = 1e-5
        for lam1, lam2 in pairs():
            m1, m2 = sc.mean(lam1, lam2)
            fd1 = (sc.omega(lam1 + h, lam2) - sc.omega(lam1 - h, lam2)) / (2.0 * h)
            fd2 = (sc.omega(lam1, lam2 + h) - sc.omega(lam1, lam2 - h)) / (2.0 * h)
            assert abs(fd1 - m1) <= 1e-8
            assert abs(fd2 - m2) <= 1e-8

    def test_rotational_covariance(self):
        for lam1, lam2 in pairs(8):
            for theta in (0.4, 1.1, 2.8):
                c, s = math.cos(theta), math.sin(theta)
                m1, m2 = sc.mean(lam1, lam2)
                n1, n2 = sc.mean(c * lam1 - s * lam2, s * lam1 + c * lam2)
                assert abs(n1 - (c * m1 - s * m2)) <= 1e-12
                assert abs(n2 - (s * m1 + c * m2)) <= 1e-12

    def test_radial_reduction(self):
        for lam1, lam2 in pairs():
            m1, m2 = sc.mean(lam1, lam2)
            assert abs(math.hypot(m1, m2)
                       - math.tanh(math.hypot(lam1, lam2))) <= 1e-12


class TestMoments:
    def test_maximally_mixed(self):
        m = sc.moments(0.0, 0.0)
        assert m.var1 == 1.0 and m.var2 == 1.0 and m.cov == 0.0

    def test_single_axis_variance(self):
        m = sc.moments(1.0, 0.0)
        assert abs(m.var1 - 1.0 / math.cosh(1.0) ** 2) <= 1e-14
        assert m.cov == 0.0

    def test_diagonal_covariance(self):
        m = sc.moments(1.0, 1.0)
        assert abs(m.cov + math.tanh(math.sqrt(2.0)) ** 2 / 2.0) <= 1e-14

    def test_pauli_identities(self):
        for lam1, lam2 in pairs():
            m = sc.moments(lam1, lam2)
            assert abs(m.var1 - (1.0 - m.mean1 ** 2)) <= 1e-12
            assert abs(m.var2 - (1.0 - m.mean2 ** 2)) <= 1e-12
            assert abs(m.cov + m.mean1 * m.mean2) <= 1e-12

    def test_matrix_oracle(self):
        for lam1, lam2 in pairs():
            ref = expm_oracle(-(lam1 * sc.SIGMA1 + lam2 * sc.SIGMA2))
            ref = ref / np.trace(ref)
            m1 = float(np.trace(ref @ sc.SIGMA1).real)
            m2 = float(np.trace(ref @ sc.SIGMA2).real)
            anti = sc.SIGMA1 @ sc.SIGMA2 + sc.SIGMA2 @ sc.SIGMA1
            mom = sc.moments(lam1, lam2)
            assert abs(mom.var1 - (float(np.trace(
                ref @ sc.SIGMA1 @ sc.SIGMA1).real) - m1 * m1)) <= 1e-10
            assert abs(mom.cov - (0.5 * float(np.trace(ref @ anti).real)
                                  - m1 * m2)) <= 1e-10


class TestSusceptibilities:
    def test_origin_limit(self):
        s = sc.susceptibilities(0.0, 0.0)
        assert s.var1 == 1.0 and s.var2 == 1.0 and s.cov == 0.0

    def test_axis_matches_quantum_variance(self):
        # on the lam2 = 0 axis both notions give sech^2(lam1) for var1
        s = sc.susceptibilities(1.0, 0.0)
        assert abs(s.var1 - 1.0 / math.cosh(1.0) ** 2) <= 1e-14
        assert abs(s.var2 - math.tanh(1.0)) <= 1e-14
        assert s.cov == 0.0

    def test_curvature_oracle(self):
        h = 1e-4
        for lam1, lam2 in pairs(12):
            s = sc.susceptibilities(lam1, lam2)
            f = lambda a, b: -sc.omega(a, b)
            d11 = (f(lam1 + h, lam2) - 2.0 * f(lam1, lam2)
                   + f(lam1 - h, lam2)) / (h * h)
            d22 = (f(lam1, lam2 + h) - 2.0 * f(lam1, lam2)
                   + f(lam1, lam2 - h)) / (h * h)
            d12 = (f(lam1 + h, lam2 + h) - f(lam1 + h, lam2 - h)
                   - f(lam1 - h, lam2 + h) + f(lam1 - h, lam2 - h)) / (4.0 * h * h)
            assert abs(d11 - s.var1) <= 1e-6
            assert abs(d22 - s.var2) <= 1e-6
            assert abs(d12 - s.cov) <= 1e-6

    def test_positive_definite(self):
        for lam1, lam2 in pairs(12):
            s = sc.susceptibilities(lam1, lam2)
            assert s.var1 > 0.0 and s.var2 > 0.0
            assert s.cov ** 2 < s.var1 * s.var2 + 1e-15


class TestFit:
    def test_origin(self):
        assert sc.fit(0.0, 0.0) == (0.0, 0.0)

    def test_roundtrip_of_mean(self):
        t1, t2 = sc.mean(1.0, 0.0)
        lam1, lam2 = sc.fit(t1, t2)
        assert abs(lam1 - 1.0) <= 1e-10
        assert abs(lam2) <= 1e-10

    def test_closed_form_inverse(self):
        lam1, lam2 = sc.fit(0.6, 0.0)
        assert abs(lam1 + math.atanh(0.6)) <= 1e-14
        assert lam2 == 0.0

    def test_fit_mean_identity(self):
        for lam1, lam2 in pairs(20, span=3.5):
            if math.hypot(lam1, lam2) > 5.0:
                continue
            r1, r2 = sc.fit(*sc.mean(lam1, lam2))
            assert abs(r1 - lam1) <= 1e-8
            assert abs(r2 - lam2) <= 1e-8

    def test_boundary_rejected(self):
        with pytest.raises(ValueError):
            sc.fit(1.0, 0.0)
        with pytest.raises(ValueError):
            sc.fit(0.8, 0.7)
