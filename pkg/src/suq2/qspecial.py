"""The q-special-function family for the plane realization.

Everything here revolves around the radial profile Q_J(eta), defined by the
q-difference equation

    Q(q^2 eta) (1 + eta) = Q(eta) (1 + q^(-2J) eta),

which admits three concrete constructions: a finite product (integer J, any
regime), a convergent infinite product (positive real q), and an exponential
of an integral kernel L (unit-circle q).  The kernel satisfies
L(q eta) - L(q^-1 eta) = Log(1 + eta).  On top of Q sit the terminating
R polynomials, the normalization constants, the basis functions psi on the
plane, and the q-Vilenkin functions on (-1, 1).

eta is accepted as complex everywhere: q-dilated arguments in the circle
regime rotate eta off the positive axis, and the functional-equation residual
is the referee certifying those evaluations.  All evaluators broadcast over
numpy arrays.
"""
from __future__ import annotations

import math
import warnings
from enum import Enum

import numpy as np

from .qcore import (
    HalfInt,
    QParam,
    Regime,
    inv_q_factorial,
    q_factorial,
    validate_triple,
)

L_ABS_TOL = 1e-12
PRODUCT_FACTOR_TOL = 1e-18
PRODUCT_TAIL_TOL = 1e-14
PRODUCT_MAX_FACTORS = 100_000
BRANCH_CUT_MARGIN = 1e-6


class QFunctionMethod(Enum):
    FINITE_PRODUCT = "FiniteProduct"
    INFINITE_PRODUCT = "InfiniteProduct"
    INTEGRAL_EXP = "IntegralExp"


def _as_complex(x):
    arr = np.asarray(x, dtype=complex)
    return arr, arr.ndim == 0


def _ret(arr, scalar):
    return arr.item() if scalar else arr


def r_polynomial(J, M, N, p: QParam, eta):
    """Terminating k-sum with q-factorial coefficients; polynomial in eta.

    Term k carries [J-N]![J-M]!(-eta)^k / ([k]![J-M-k]![J-N-k]![M+N+k]!);
    the range k = max(0, -(M+N)) .. min(J-M, J-N) is exactly where no
    inverse factorial vanishes.
    """
    J, M, N = HalfInt.of(J), HalfInt.of(M), HalfInt.of(N)
    validate_triple(J, M, N)
    jm, jn, mn = (J - M).to_int(), (J - N).to_int(), (M + N).to_int()
    arr, scalar = _as_complex(eta)
    lead = q_factorial(jn, p) * q_factorial(jm, p)
    out = np.zeros_like(arr)
    for k in range(max(0, -mn), min(jm, jn) + 1):
        c = (lead
             * inv_q_factorial(k, p)
             * inv_q_factorial(jm - k, p)
             * inv_q_factorial(jn - k, p)
             * inv_q_factorial(mn + k, p))
        out = out + c * (-arr) ** k
    return _ret(out, scalar)


def q_finite_product(J, p: QParam, eta):
    """Q for integer J: product of J reciprocal linear factors (1 for J = 0)."""
    J = HalfInt.of(J)
    if not J.is_integer() or J.twice < 0:
        raise ValueError(f"finite product needs integer J >= 0, got {J}")
    arr, scalar = _as_complex(eta)
    out = np.ones_like(arr)
    for k in range(J.to_int()):
        factor = 1.0 + arr * p.power(-2 * J.to_int() + 2 * k)
        if np.any(np.abs(factor) < 1e-300):
            raise ValueError(f"finite-product pole: factor k={k} vanishes")
        out = out / factor
    return _ret(out, scalar)


def q_infinite_product(J, p: QParam, eta):
    """Q for positive real q via the convergent product branch for q<1 or q>1.

    Truncation: stop once |factor - 1| < 1e-18 and the geometric tail bound
    (ratio q^2 or q^-2) falls below 1e-14; hard cap 1e5 factors.
    """
    J = HalfInt.of(J)
    if p.regime is not Regime.POSITIVE_REAL:
        raise ValueError("infinite product is defined for the positive-real regime only")
    q = p.value
    Jf = float(J)
    arr, scalar = _as_complex(eta)
    out = np.ones_like(arr)
    ratio = q * q if q < 1.0 else q ** -2
    for k in range(PRODUCT_MAX_FACTORS):
        if q < 1.0:
            num = 1.0 + arr * q ** (2 * k)
            den = 1.0 + arr * q ** (-2 * Jf + 2 * k)
        else:
            num = 1.0 + arr * q ** (-2 * Jf - 2 * k - 2)
            den = 1.0 + arr * q ** (-2 * k - 2)
        if np.any(np.abs(den) < 1e-300):
            raise ValueError(f"infinite-product pole in factor k={k}")
        factor = num / den
        out = out * factor
        gap = np.max(np.abs(factor - 1.0))
        if gap < PRODUCT_FACTOR_TOL and gap * ratio / (1.0 - ratio) < PRODUCT_TAIL_TOL:
            return _ret(out, scalar)
    raise RuntimeError("infinite product did not converge within the factor cap")


def _panel_nodes(breaks, n):
    xs, ws = np.polynomial.legendre.leggauss(n)
    nodes, weights = [], []
    for a, b in zip(breaks[:-1], breaks[1:]):
        nodes.append(0.5 * (b - a) * xs + 0.5 * (a + b))
        weights.append(0.5 * (b - a) * ws)
    return np.concatenate(nodes), np.concatenate(weights)


def _low_breaks(alpha, u_max):
    pts = [b for b in (0.0, 2.0, 5.0, 10.0, 20.0) if b < u_max]
    step = max(10.0, 5.0 / alpha)
    x = pts[-1]
    while x < u_max:
        x = min(x + step, u_max)
        pts.append(x)
    return pts


def l_function(p: QParam, eta, abs_tol: float = L_ABS_TOL):
    """Integral kernel L(eta) for unit-circle q = exp(i tau).

    Parameters
    ----------
    p : QParam
        Must be in the unit-circle regime, tau in (-pi, 0) u (0, pi).
    eta : complex scalar or array
        Argument; complex values off the negative real axis are accepted.
    abs_tol : float
        Absolute tolerance of the node-doubling quadrature.

    Notes
    -----
    The defining contour integral runs over t in (0, inf) with integrand
    Log(1 + eta t^(tau/pi)) / (t (1 + t)) (sign and exponent flip for
    negative tau).  Splitting at t = 1 and substituting t = exp(-u) and
    t = exp(+u) makes both halves analytic with exponentially decaying
    tails, so panelized Gauss nodes with global node doubling converge
    geometrically; the raw split keeps an algebraic t^(tau/pi - 1)
    endpoint singularity that defeats plain node doubling for small tau.
    """
    if p.regime is not Regime.UNIT_CIRCLE:
        raise ValueError("l_function is defined for the unit-circle regime only")
    tau = p.value
    alpha = abs(tau) / math.pi
    sigma = 1.0 if tau > 0 else -1.0
    arr, scalar = _as_complex(eta)
    flat = arr.reshape(-1)
    amax = float(np.max(np.abs(flat))) if flat.size else 0.0
    if amax == 0.0:
        return _ret(np.zeros_like(arr), scalar)

    u_low = max(30.0, (math.log(amax) + 40.0) / alpha)
    b_low = _low_breaks(alpha, u_low)
    b_high = list(np.linspace(0.0, 55.0 + math.log1p(amax), 12))

    prev = None
    warned = False
    for n in (16, 32, 64, 128, 256):
        u1, w1 = _panel_nodes(b_low, n)
        u2, w2 = _panel_nodes(b_high, n)
        arg1 = 1.0 + flat[:, None] * np.exp(-alpha * u1)[None, :]
        arg2 = 1.0 + flat[:, None] * np.exp(alpha * u2)[None, :]
        if not warned:
            worst = min(float(np.min(math.pi - np.abs(np.angle(arg1)))),
                        float(np.min(math.pi - np.abs(np.angle(arg2)))))
            if worst < BRANCH_CUT_MARGIN:
                warnings.warn("l_function integrand within 1e-6 of the Log branch cut",
                              RuntimeWarning, stacklevel=2)
                warned = True
        total = (np.log(arg1) / (1.0 + np.exp(-u1))[None, :]) @ w1 \
              + (np.log(arg2) / (1.0 + np.exp(u2))[None, :]) @ w2
        val = sigma * total / (2j * math.pi)
        if prev is not None and np.max(np.abs(val - prev)) < abs_tol:
            return _ret(val.reshape(arr.shape), scalar)
        prev = val
    raise RuntimeError("l_function quadrature did not converge")


def q_integral_exp(J, p: QParam, eta):
    """Q on the circle: exp of L at two rotated arguments, any half-integer J."""
    J = HalfInt.of(J)
    if p.regime is not Regime.UNIT_CIRCLE:
        raise ValueError("integral-exponential construction needs the unit-circle regime")
    arr, scalar = _as_complex(eta)
    shift = p.power(-(2.0 * float(J) + 1.0))
    la = l_function(p, shift * arr)
    lb = l_function(p, p.power(-1.0) * arr)
    return _ret(np.exp(np.asarray(la - lb, dtype=complex)), scalar)


def q_function(J, p: QParam, eta, method: QFunctionMethod | None = None):
    """Dispatch the Q construction for (J, p), or force one explicitly.

    Default dispatch: classical regime -> (1+eta)^(-J); integer J -> finite
    product; half-integer J -> infinite product (real q) or integral
    exponential (circle q).
    """
    J = HalfInt.of(J)
    if method is None:
        if p.regime is Regime.CLASSICAL:
            arr, scalar = _as_complex(eta)
            return _ret((1.0 + arr) ** (-float(J)), scalar)
        if J.is_integer():
            method = QFunctionMethod.FINITE_PRODUCT
        elif p.regime is Regime.POSITIVE_REAL:
            method = QFunctionMethod.INFINITE_PRODUCT
        else:
            method = QFunctionMethod.INTEGRAL_EXP
    if p.regime is Regime.CLASSICAL:
        raise ValueError("explicit constructions do not apply to the classical regime")
    if method is QFunctionMethod.FINITE_PRODUCT:
        return q_finite_product(J, p, eta)
    if method is QFunctionMethod.INFINITE_PRODUCT:
        return q_infinite_product(J, p, eta)
    return q_integral_exp(J, p, eta)


def norm_constant(J, M, N, p: QParam) -> float:
    """Normalization of psi: sqrt([J+N]![2J+1]!/[J-N]!) sqrt([J+M]!/([J-M]![2J]!)) / sqrt(2 pi).

    In the circle regime a q-factorial ratio can turn negative (q-numbers
    change sign past tau = pi/n); that is rejected rather than silently
    continued into complex square roots.
    """
    J, M, N = HalfInt.of(J), HalfInt.of(M), HalfInt.of(N)
    validate_triple(J, M, N)
    twoj = J.twice
    rad1 = (q_factorial((J + N).to_int(), p) * q_factorial(twoj + 1, p)
            / q_factorial((J - N).to_int(), p))
    rad2 = (q_factorial((J + M).to_int(), p)
            / (q_factorial((J - M).to_int(), p) * q_factorial(twoj, p)))
    if rad1 < 0 or rad2 < 0:
        raise ValueError(
            f"negative radicand in norm_constant for (J,M,N)=({J},{M},{N}); "
            "the circle parameter is outside the positivity domain tau < pi/(2J+1)")
    return math.sqrt(rad1) * math.sqrt(rad2) / math.sqrt(2.0 * math.pi)


def _psi_poly(J, M, N, p, u_arr, v_arr):
    # R(eta) * v^(M+N) expanded as sum_k c_k u^k v^(k+M+N); both exponents are
    # nonnegative over the k range, so the result is polynomial and finite at 0.
    jm, jn, mn = (J - M).to_int(), (J - N).to_int(), (M + N).to_int()
    lead = q_factorial(jn, p) * q_factorial(jm, p)
    out = np.zeros_like(u_arr)
    for k in range(max(0, -mn), min(jm, jn) + 1):
        c = (lead * (-1.0) ** k
             * inv_q_factorial(k, p)
             * inv_q_factorial(jm - k, p)
             * inv_q_factorial(jn - k, p)
             * inv_q_factorial(mn + k, p))
        out = out + c * u_arr ** k * v_arr ** (k + mn)
    return out


def psi(J, M, N, p: QParam, u, v):
    """Basis function on the plane at independent arguments (u, v).

    Physical evaluation uses v = conj(u); the arguments stay independent
    because q-dilations in the circle regime break that conjugacy.
    """
    J, M, N = HalfInt.of(J), HalfInt.of(M), HalfInt.of(N)
    validate_triple(J, M, N)
    u_arr, u_scalar = _as_complex(u)
    v_arr, v_scalar = _as_complex(v)
    nc = norm_constant(J, M, N, p)
    phase = p.power(-float(N) * float(M) / 2.0)
    qval = q_function(J, p, u_arr * v_arr)
    out = nc * phase * qval * _psi_poly(J, M, N, p, u_arr, v_arr)
    return _ret(np.asarray(out, dtype=complex), u_scalar and v_scalar)


def vilenkin(J, M, N, p: QParam, xi):
    """q-Vilenkin function on xi in (-1, 1), via eta = (1+xi)/(1-xi).

    Carries the fixed phase i^(2J-M-N); at positive real q the remaining
    factor is real, and at q = 1, N = 0 these reduce to Legendre-type
    functions.
    """
    J, M, N = HalfInt.of(J), HalfInt.of(M), HalfInt.of(N)
    validate_triple(J, M, N)
    xi_arr = np.asarray(xi, dtype=float)
    scalar = xi_arr.ndim == 0
    if np.any(xi_arr <= -1.0) or np.any(xi_arr >= 1.0):
        raise ValueError("vilenkin argument xi must lie in (-1, 1)")
    eta = (1.0 + xi_arr) / (1.0 - xi_arr)
    expo = 2 * J.twice - M.twice - N.twice
    if expo % 2:
        raise ValueError("inconsistent triple")  # unreachable for valid triples
    phase = 1j ** (expo // 2)
    rad = (q_factorial((J + M).to_int(), p) * q_factorial((J + N).to_int(), p)
           / (q_factorial((J - M).to_int(), p) * q_factorial((J - N).to_int(), p)))
    if rad < 0:
        raise ValueError("negative radicand in vilenkin; circle parameter outside positivity domain")
    mn = (M + N).to_int()
    out = (phase * math.sqrt(rad) * eta ** (mn / 2.0)
           * np.asarray(q_function(J, p, eta), dtype=complex)
           * np.asarray(r_polynomial(J, M, N, p, eta), dtype=complex))
    return _ret(np.asarray(out, dtype=complex), scalar)
