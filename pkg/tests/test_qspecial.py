import math

import numpy as np
import pytest

from suq2 import (
    HalfInt,
    QParam,
    QFunctionMethod,
    l_function,
    norm_constant,
    psi,
    q_factorial,
    q_finite_product,
    q_function,
    q_infinite_product,
    q_integral_exp,
    q_number,
    r_polynomial,
    vilenkin,
)

FUNCEQ_TOL_PRODUCT = 1e-12
FUNCEQ_TOL_INTEGRAL = 1e-8
L_EQ_TOL = 1e-9
CROSS_METHOD_TOL = 1e-12

P_HALF = QParam.positive_real(0.5)
P_TWO = QParam.positive_real(2.0)
P_CIRC = QParam.unit_circle(math.pi / 5)
P_CLASS = QParam.classical()

ETA_GRID = np.logspace(-2, 2, 25)


def funceq_residual(J, p, eta, method=None):
    """max |Q(q^2 eta)(1+eta) - Q(eta)(1+q^(-2J) eta)| / |Q(eta)| over the grid."""
    eta = np.asarray(eta, dtype=complex)
    qv = np.asarray(q_function(J, p, eta, method), complex)
    lhs = np.asarray(q_function(J, p, p.power(2) * eta, method), complex) * (1 + eta)
    rhs = qv * (1 + p.power(-2 * float(HalfInt.of(J))) * eta)
    return float(np.max(np.abs(lhs - rhs) / np.abs(qv)))


class TestRPolynomial:
    def test_linear_case(self):
        # J=1, M=N=0: [1]![1]! (1/([0]![1]![1]![0]!) - eta/([1]![0]![0]![1]!)) = 1 - eta
        for p in (P_TWO, P_CIRC, P_CLASS):
            assert r_polynomial(1, 0, 0, p, 2.0) == pytest.approx(-1.0)
            assert r_polynomial(1, 0, 0, p, 0.25) == pytest.approx(0.75)

    def test_stretched_state_is_constant(self):
        # M = J leaves the single k=0 term 1/[J+N]!
        p = P_TWO
        assert r_polynomial(2, 2, 1, p, 3.3) == pytest.approx(1 / q_factorial(3, p))
        assert r_polynomial(2, 2, 1, p, -7.0) == pytest.approx(1 / q_factorial(3, p))

    def test_degree(self):
        # leading power is min(J-M, J-N)
        eta = np.array([10.0, 100.0, 1000.0])
        vals = np.abs(np.asarray(r_polynomial(2, 0, 1, P_TWO, eta)))
        # degree 1: tenfold eta scales value tenfold asymptotically
        assert vals[2] / vals[1] == pytest.approx(10.0, rel=0.05)

    def test_negative_mode_sum_skips_poles(self):
        # M+N < 0 truncates the low end of k instead of dividing by zero
        v = r_polynomial(1, -1, 0, P_TWO, 1.5)
        assert np.isfinite(v)

    def test_symmetry_in_m_n(self):
        for eta in (0.2, 1.0, 5.0):
            assert r_polynomial(2, 1, 0, P_TWO, eta) == pytest.approx(
                r_polynomial(2, 0, 1, P_TWO, eta))

    def test_rejects_invalid_triple(self):
        with pytest.raises(ValueError):
            r_polynomial(1, 0.5, 0, P_TWO, 1.0)


class TestQConstructions:
    def test_finite_oracle(self):
        # J=2, q=2: 1/((1+eta/16)(1+eta/4)) at eta=1 -> 64/85
        assert q_finite_product(2, P_TWO, 1.0) == pytest.approx(64 / 85, rel=1e-15)
        assert q_finite_product(0, P_TWO, 123.0) == 1.0

    def test_finite_rejects_half_integer(self):
        with pytest.raises(ValueError):
            q_finite_product(1.5, P_TWO, 1.0)

    def test_finite_pole_reported(self):
        with pytest.raises(ValueError, match="k=0"):
            q_finite_product(1, P_TWO, -4.0)  # 1 + eta q^{-2} = 0

    def test_classical_dispatch(self):
        assert q_function(1, P_CLASS, 3.0) == pytest.approx(0.25)
        v = q_function(0.5, P_CLASS, 3.0)
        assert v == pytest.approx(0.5)

    def test_classical_rejects_explicit_method(self):
        with pytest.raises(ValueError):
            q_function(1, P_CLASS, 1.0, QFunctionMethod.FINITE_PRODUCT)

    def test_infinite_requires_real_regime(self):
        with pytest.raises(ValueError):
            q_infinite_product(1, P_CIRC, 1.0)

    def test_integral_requires_circle_regime(self):
        with pytest.raises(ValueError):
            q_integral_exp(1, P_TWO, 1.0)

    @pytest.mark.parametrize("J", [1, 2, 3])
    @pytest.mark.parametrize("p", [P_HALF, P_TWO])
    def test_finite_vs_infinite(self, J, p):
        a = np.asarray(q_finite_product(J, p, ETA_GRID))
        b = np.asarray(q_infinite_product(J, p, ETA_GRID))
        assert np.max(np.abs(a - b)) < CROSS_METHOD_TOL

    @pytest.mark.parametrize("J", [1, 2])
    def test_finite_vs_integral_on_circle(self, J):
        # (2J+1) tau must stay below pi or the integral construction's
        # L argument lands on the log branch cut; pi/23 is safe through J=11
        p = QParam.unit_circle(math.pi / 23)
        a = np.asarray(q_finite_product(J, p, ETA_GRID))
        b = np.asarray(q_integral_exp(J, p, ETA_GRID))
        assert np.max(np.abs(a - b)) < 1e-8

    def test_integral_ratio_is_q2_periodic(self):
        # the defining equation pins Q only up to a q^2-periodic factor, so
        # the two circle constructions must agree up to one; their ratio has
        # to be invariant under eta -> q^2 eta
        p = QParam.unit_circle(math.pi / 23)
        for J in (1, 2):
            eta = np.logspace(-1, 1, 9)
            r0 = np.asarray(q_finite_product(J, p, eta)) / np.asarray(q_integral_exp(J, p, eta))
            e2 = p.power(2) * eta
            r2 = np.asarray(q_finite_product(J, p, e2)) / np.asarray(q_integral_exp(J, p, e2))
            assert np.max(np.abs(r0 - r2)) < 1e-8

    @pytest.mark.parametrize("J", [0, 0.5, 1, 1.5, 2])
    @pytest.mark.parametrize("p", [P_HALF, P_TWO])
    def test_functional_equation_products(self, J, p):
        assert funceq_residual(J, p, ETA_GRID) < FUNCEQ_TOL_PRODUCT

    @pytest.mark.parametrize("J", [0, 0.5, 1, 1.5, 2])
    def test_functional_equation_integral(self, J):
        assert funceq_residual(J, P_CIRC, ETA_GRID) < FUNCEQ_TOL_INTEGRAL

    def test_decays_at_large_eta(self):
        v = q_function(1.5, P_TWO, 1e6)
        assert abs(v) < 1e-6


# independently computed with mpmath.quad at 30 digits on the raw contour
# integral Int_0^inf log(1 + sqrt(t)) / (t (1+t)) dt / (2 pi i):
L_GOLDEN_TAU = math.pi / 2
L_GOLDEN = -0.32724923474893679j


class TestLFunction:
    def test_golden_value(self):
        p = QParam.unit_circle(L_GOLDEN_TAU)
        v = l_function(p, 1.0)
        assert abs(v - L_GOLDEN) < 1e-10

    def test_zero_argument(self):
        assert l_function(P_CIRC, 0.0) == 0

    @pytest.mark.parametrize("tau", [math.pi / 5, -math.pi / 5, 0.45 * math.pi, -0.45 * math.pi])
    @pytest.mark.parametrize("eta", [0.3, 1.0, 4.0])
    def test_difference_equation(self, tau, eta):
        # L(q eta) - L(q^-1 eta) = Log(1 + eta)
        p = QParam.unit_circle(tau)
        r = l_function(p, p.power(1) * eta) - l_function(p, p.power(-1) * eta)
        assert abs(r - np.log(1 + eta)) < L_EQ_TOL

    def test_sign_flip_conjugates(self):
        p = QParam.unit_circle(math.pi / 5)
        a = l_function(p, 0.7)
        b = l_function(p.inverse(), 0.7)
        assert abs(a + b) < 1e-12  # odd in tau for real eta

    def test_array_shape(self):
        out = l_function(P_CIRC, np.array([0.5, 1.0, 2.0]))
        assert out.shape == (3,)

    def test_rejects_real_regime(self):
        with pytest.raises(ValueError):
            l_function(P_TWO, 1.0)

    def test_branch_cut_proximity_warns_then_fails(self):
        # eta close to the negative real axis pushes 1 + eta t^a across the
        # cut: the proximity warning fires, and the quadrature (facing a log
        # singularity a distance 1e-9 off the contour) refuses to converge
        p = QParam.unit_circle(math.pi / 5)
        with pytest.warns(RuntimeWarning, match="branch cut"):
            with pytest.raises(RuntimeError):
                l_function(p, -0.5 + 1e-9j)


class TestNormConstant:
    def test_oracles(self):
        assert norm_constant(0, 0, 0, P_TWO) == pytest.approx(1 / math.sqrt(2 * math.pi))
        want = math.sqrt(q_number(2, P_TWO) / (2 * math.pi))
        assert norm_constant(0.5, 0.5, 0.5, P_TWO) == pytest.approx(want)
        # classical J=1, M=N=0: sqrt(1! 3!/1!) sqrt(1/(1 2!)) / sqrt(2 pi)
        assert norm_constant(1, 0, 0, P_CLASS) == pytest.approx(0.690988298942671)

    def test_circle_negative_radicand_rejected(self):
        # tau = pi/4: [4]_q = 0 and [5]_q < 0 poison [2J+1]! for J = 2
        p = QParam.unit_circle(math.pi / 4 + 0.05)
        with pytest.raises(ValueError, match="positivity"):
            norm_constant(2, 0, 0, p)


class TestPsi:
    def test_origin_regular(self):
        # negative M+N would naively put v^{M+N} poles at v=0; the combined
        # polynomial form must stay finite
        v = psi(1, -1, 0, P_TWO, 0.0, 0.0)
        assert np.isfinite(v)
        v = psi(1.5, -0.5, -1.5, P_CIRC, 0.0, 0.0)
        assert np.isfinite(v)

    def test_ground_state_value(self):
        # J=M=N=0: psi = Q_0 / sqrt(2 pi) = 1/sqrt(2 pi) everywhere
        for p in (P_TWO, P_CIRC, P_CLASS):
            assert psi(0, 0, 0, p, 0.7, 0.2) == pytest.approx(1 / math.sqrt(2 * math.pi))

    def test_mode_scaling(self):
        # under (u, v) -> (e^{i a} u, e^{-i a} ... ) only v carries the phase
        # physically; with u = r e^{i phi}, v = conj(u), psi ~ e^{-i (M+N) phi}
        p = P_TWO
        J, M, N = 1, 1, 0
        r = 0.8
        for phi in (0.3, 1.1):
            u = r * np.exp(1j * phi)
            a = psi(J, M, N, p, u, np.conj(u))
            b = psi(J, M, N, p, r, r)
            assert abs(a - b * np.exp(-1j * (float(M) + float(N)) * phi)) < 1e-13

    def test_broadcasts(self):
        u = np.linspace(0.1, 1.0, 7)
        out = psi(1, 0, 1, P_TWO, u, u)
        assert out.shape == (7,)


class TestVilenkin:
    def test_trivial(self):
        assert vilenkin(0, 0, 0, P_TWO, 0.3) == pytest.approx(1.0)

    def test_classical_legendre(self):
        # q = 1, N = 0 reduces to (-i)^M sqrt((J-M)!/(J+M)!) P_J^M(xi)
        xi = np.linspace(-0.9, 0.9, 7)
        v10 = np.asarray(vilenkin(1, 0, 0, P_CLASS, xi))
        assert np.max(np.abs(v10 - xi)) < 1e-12
        v11 = np.asarray(vilenkin(1, 1, 0, P_CLASS, xi))
        want = (-1j) * math.sqrt(1 / 2) * (-np.sqrt(1 - xi ** 2))
        assert np.max(np.abs(v11 - want)) < 1e-12
        v20 = np.asarray(vilenkin(2, 0, 0, P_CLASS, xi))
        assert np.max(np.abs(v20 - (3 * xi ** 2 - 1) / 2)) < 1e-12

    def test_phase_divided_value_is_real_at_real_q(self):
        for (J, M, N) in [(1, 1, 0), (1.5, 0.5, -0.5), (2, 1, 1)]:
            e = int(2 * J - M - N)
            for xi in (-0.5, 0.1, 0.8):
                v = vilenkin(J, M, N, P_TWO, xi) / (1j ** e)
                assert abs(np.imag(v)) < 1e-12

    def test_rejects_xi_outside_open_interval(self):
        with pytest.raises(ValueError):
            vilenkin(1, 0, 0, P_TWO, 1.0)
        with pytest.raises(ValueError):
            vilenkin(1, 0, 0, P_TWO, -1.5)
