"""Named verification suites: each checks one family of identities and
returns a list of cases with measured residuals against its tolerance.

Sample-point grids are seeded and all node counts fixed, so a suite run is
deterministic for identical inputs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .qcore import HalfInt, QParam, Regime, m_values, q_number
from .qinner import (
    InnerProductKind,
    adjoint_residual,
    gram,
    hermitian_symmetry_residual,
    inner,
    kind_for,
)
from .qops import (
    RealizationParams,
    apply_casimir,
    apply_h_minus,
    apply_h_plus,
    casimir_matrix,
    combine,
    matrix_irrep,
    psi_family,
    with_fixed_param,
)
from .qspecial import q_function, vilenkin
from .quadrature import QuadratureConfig

MATRIX_TOL = 1e-12
FUNCEQ_TOL_PRODUCT = 1e-12
FUNCEQ_TOL_INTEGRAL = 1e-8
LADDER_TOL = 1e-8
CASIMIR_TOL = 1e-8
HERMITICITY_TOL = 1e-7
CONJ_SYMMETRY_TOL = 1e-8
GRAM_TOL = 1e-6
LIMIT_SHRINK_TOL = 1.0       # residual is 8*d(h/10)/d(h); < 1 means at least linear
LIMIT_DEVIATION_TOL = 1e-5
VILENKIN_LIMIT_TOL = 1e-6

SUITE_NAMES = ("matrix", "ladder", "casimir", "funceq", "hermiticity",
               "gram", "limit", "all")


@dataclass(frozen=True)
class Case:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(math.isfinite(self.residual) and self.residual < self.tol)


def sample_points(n: int = 20, seed: int = 0):
    """Off-axis sample points: radii in [0.3, 3], eighth-turn phases."""
    rng = np.random.default_rng(seed)
    r = rng.uniform(0.3, 3.0, n)
    phase = rng.integers(0, 8, n) * (math.pi / 4)
    u = r * np.exp(1j * phase)
    return u, np.conj(u)


def _rel(lhs, rhs) -> float:
    scale = max(1.0, float(np.max(np.abs(rhs))))
    return float(np.max(np.abs(np.asarray(lhs) - np.asarray(rhs)))) / scale


def _half_range(j_max) -> list:
    j_max = HalfInt.of(j_max)
    return [HalfInt(t) for t in range(1, j_max.twice + 1)]


def suite_matrix(p: QParam, j_max=4.5, tol: float = MATRIX_TOL) -> list:
    cases = []
    for J in _half_range(j_max):
        ir = matrix_irrep(J, p)
        c1 = ir.H3 @ ir.Hplus - ir.Hplus @ ir.H3 - ir.Hplus
        c2 = ir.H3 @ ir.Hminus - ir.Hminus @ ir.H3 + ir.Hminus
        comm = ir.Hplus @ ir.Hminus - ir.Hminus @ ir.Hplus
        want = np.diag([q_number(2.0 * float(m), p) for m in ir.m_list])
        cas = casimir_matrix(ir) - q_number(J, p) * q_number(J + 1, p) * np.eye(ir.dimension)
        adj = ir.Hplus.T.conj() - ir.Hminus
        residual = max(float(np.max(np.abs(x))) for x in (c1, c2, comm - want, cas, adj))
        cases.append(Case(f"matrix J={J}", residual, tol))
    return cases


def _valid_n(J: HalfInt, n_list) -> list:
    out = []
    for N in n_list:
        N = HalfInt.of(N)
        if (J.twice - N.twice) % 2 == 0 and abs(N.twice) <= J.twice:
            out.append(N)
    return out


def _ladder_coeff(J, M, sign, p) -> float:
    if sign > 0:
        return math.sqrt(q_number((J - M).to_int(), p) * q_number((J + M).to_int() + 1, p))
    return math.sqrt(q_number((J + M).to_int(), p) * q_number((J - M).to_int() + 1, p))


def suite_ladder(p: QParam, j_max=3, n_list=(0, 0.5, 1), n_points: int = 20,
                 seed: int = 0, tol: float = LADDER_TOL) -> list:
    u, v = sample_points(n_points, seed)
    cases = []
    for J in _half_range(j_max):
        for N in _valid_n(J, n_list):
            r = RealizationParams(N, p)
            worst = 0.0
            for M in m_values(J):
                f = psi_family(J, M, N)
                if M.twice < J.twice:
                    lhs = apply_h_plus(f, r)(p, u, v)
                    rhs = _ladder_coeff(J, M, +1, p) * psi_family(J, M + 1, N)(p, u, v)
                    worst = max(worst, _rel(lhs, rhs))
                else:
                    worst = max(worst, float(np.max(np.abs(apply_h_plus(f, r)(p, u, v)))))
                if M.twice > -J.twice:
                    lhs = apply_h_minus(f, r)(p, u, v)
                    rhs = _ladder_coeff(J, M, -1, p) * psi_family(J, M - 1, N)(p, u, v)
                    worst = max(worst, _rel(lhs, rhs))
                else:
                    worst = max(worst, float(np.max(np.abs(apply_h_minus(f, r)(p, u, v)))))
            cases.append(Case(f"ladder J={J} N={N}", worst, tol))
    return cases


def suite_casimir(p: QParam, j_max=3, n_list=(0, 0.5, 1), n_points: int = 20,
                  seed: int = 0, tol: float = CASIMIR_TOL) -> list:
    u, v = sample_points(n_points, seed)
    cases = []
    for J in _half_range(j_max):
        for N in _valid_n(J, n_list):
            r = RealizationParams(N, p)
            want = q_number(J, p) * q_number(J + 1, p)
            worst = 0.0
            for M in m_values(J):
                f = psi_family(J, M, N)
                ref = want * f(p, u, v)
                a = apply_casimir(f, r, "plus_minus")(p, u, v)
                b = apply_casimir(f, r, "minus_plus")(p, u, v)
                worst = max(worst, _rel(a, ref), _rel(b, ref), _rel(a, b))
            cases.append(Case(f"casimir J={J} N={N}", worst, tol))
    return cases


def suite_funceq(p: QParam, j_list=(0, 0.5, 1, 1.5, 2), n_eta: int = 25,
                 tol: Optional[float] = None) -> list:
    """Relative residual of Q(q^2 eta)(1+eta) = Q(eta)(1+q^(-2J) eta) under
    the default construction dispatch, on a log grid eta in [1e-2, 1e2]."""
    eta = np.logspace(-2, 2, n_eta)
    cases = []
    for J in j_list:
        J = HalfInt.of(J)
        qv = np.asarray(q_function(J, p, eta), complex)
        lhs = np.asarray(q_function(J, p, p.power(2) * eta), complex) * (1 + eta)
        rhs = qv * (1 + p.power(-2.0 * float(J)) * eta)
        residual = float(np.max(np.abs(lhs - rhs) / np.abs(qv)))
        integral_route = (p.regime is Regime.UNIT_CIRCLE and not J.is_integer())
        case_tol = tol if tol is not None else (
            FUNCEQ_TOL_INTEGRAL if integral_route else FUNCEQ_TOL_PRODUCT)
        cases.append(Case(f"funceq J={J}", residual, case_tol))
    return cases


def _span_pairs(j_max, N, seed):
    states = []
    for J in [HalfInt(t) for t in range(0, HalfInt.of(j_max).twice + 1)]:
        N_h = HalfInt.of(N)
        if (J.twice - N_h.twice) % 2 or abs(N_h.twice) > J.twice:
            continue
        states.extend(psi_family(J, M, N_h) for M in m_values(J))
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(3):
        idx_f = rng.choice(len(states), size=3, replace=False)
        idx_g = rng.choice(len(states), size=2, replace=False)
        f = combine(rng.normal(size=3) + 1j * rng.normal(size=3), [states[i] for i in idx_f])
        g = combine(rng.normal(size=2) + 1j * rng.normal(size=2), [states[i] for i in idx_g])
        pairs.append((f, g))
    return pairs


def suite_hermiticity(p: QParam, j_max=2, N=0, seed: int = 0,
                      tol: float = HERMITICITY_TOL,
                      sym_tol: float = CONJ_SYMMETRY_TOL,
                      cfg: QuadratureConfig = QuadratureConfig()) -> list:
    kind = kind_for(p)
    if kind is InnerProductKind.CLASSICAL:
        raise ValueError("hermiticity suite needs a deformed parameter (q != 1)")
    N_h = HalfInt.of(N)
    r = RealizationParams(N_h, p)
    j0 = HalfInt(abs(N_h.twice) + 2)  # smallest tower member with >= 2 states
    cases = [Case("adjoint basis pair",
                  adjoint_residual(psi_family(j0, j0, N_h), psi_family(j0, j0 - 1, N_h),
                                   p, kind, r, cfg),
                  tol)]
    for i, (f, g) in enumerate(_span_pairs(j_max, N, seed), 1):
        cases.append(Case(f"adjoint span pair {i}",
                          adjoint_residual(f, g, p, kind, r, cfg), tol))
        cases.append(Case(f"conjugate symmetry pair {i}",
                          hermitian_symmetry_residual(f, g, p, kind, cfg), sym_tol))
    return cases


def suite_gram(p: QParam, N=0, j_list: Optional[Sequence] = None, j_max=2,
               tol: float = GRAM_TOL,
               cfg: QuadratureConfig = QuadratureConfig()) -> list:
    kind = kind_for(p)
    if j_list is None:
        N_h = HalfInt.of(N)
        j_list = [HalfInt(t) for t in range(abs(N_h.twice), HalfInt.of(j_max).twice + 1, 2)]
    rep = gram(N, j_list, p, kind, cfg)
    label = ",".join(str(HalfInt.of(J)) for J in j_list) or "(empty)"
    residual = max(rep.max_offdiag, rep.max_diag_dev) if rep.labels else 0.0
    return [Case(f"gram N={HalfInt.of(N)} J={{{label}}}", residual, tol)]


# classical Legendre-type references for the q -> 1 check: value is
# (-i)^M sqrt((J-M)!/(J+M)!) P_J^M(xi) with Condon-Shortley P_J^M
_LEGENDRE = {
    (0, 0): lambda x: np.ones_like(x),
    (1, 0): lambda x: x,
    (1, 1): lambda x: -np.sqrt(1 - x ** 2),
    (2, 0): lambda x: (3 * x ** 2 - 1) / 2,
    (2, 1): lambda x: -3 * x * np.sqrt(1 - x ** 2),
    (2, 2): lambda x: 3 * (1 - x ** 2),
    (3, 0): lambda x: (5 * x ** 3 - 3 * x) / 2,
    (3, 2): lambda x: 15 * x * (1 - x ** 2),
    (3, 3): lambda x: -15 * (1 - x ** 2) ** 1.5,
}


def _legendre_reference(J: int, M: int, xi):
    J, M = int(J), int(M)
    scale = math.sqrt(math.factorial(J - M) / math.factorial(J + M))
    return (-1j) ** M * scale * _LEGENDRE[(J, M)](xi)


def suite_limit(h_values=(1e-3, 1e-4),
                cfg: QuadratureConfig = QuadratureConfig()) -> list:
    """q -> 1 behavior: deformed inner products of parameter-pinned pairs
    approach the classical values (deviation even in ln q, so the measured
    shrink is quadratic; the pass condition only demands at-least-linear),
    and linearly-extrapolated q-Vilenkin values hit the Legendre-type
    references.  The Vilenkin deviation really is O(q-1): the factor
    products are not symmetric under q -> 1/q, so odd powers survive."""
    h1, h2 = h_values
    p_cl = QParam.classical()
    cases = []
    for (J, M, N) in [(1, 0, 0), (1, 1, 0), (1.5, 0.5, 0.5)]:
        fam = with_fixed_param(psi_family(J, M, N), p_cl)
        cl = inner(InnerProductKind.CLASSICAL, fam, fam, p_cl, cfg)
        d1 = abs(inner(InnerProductKind.DEFORMED_REAL, fam, fam,
                       QParam.positive_real(1 + h1), cfg) - cl)
        d2 = abs(inner(InnerProductKind.DEFORMED_REAL, fam, fam,
                       QParam.positive_real(1 + h2), cfg) - cl)
        tag = f"(J={HalfInt.of(J)},M={HalfInt.of(M)},N={HalfInt.of(N)})"
        cases.append(Case(f"inner limit {tag} deviation", d1, LIMIT_DEVIATION_TOL))
        cases.append(Case(f"inner limit {tag} shrink", 8.0 * d2 / d1, LIMIT_SHRINK_TOL))

    xi = np.linspace(-0.8, 0.8, 9)
    w1, w2 = h1, h2
    for (J, M) in [(1, 0), (1, 1), (2, 1), (2, 2)]:
        v1 = np.asarray(vilenkin(J, M, 0, QParam.positive_real(1 + h1), xi))
        v2 = np.asarray(vilenkin(J, M, 0, QParam.positive_real(1 + h2), xi))
        extrap = (w1 * v2 - w2 * v1) / (w1 - w2)
        residual = float(np.max(np.abs(extrap - _legendre_reference(J, M, xi))))
        cases.append(Case(f"vilenkin limit (J={J},M={M})", residual, VILENKIN_LIMIT_TOL))
    # at q = 1 exactly the values must hit the references at full precision,
    # including rows whose two-point extrapolation remainder would not clear
    # the limit tolerance (the curvature coefficient grows with J)
    for (J, M) in sorted(_LEGENDRE):
        v = np.asarray(vilenkin(J, M, 0, p_cl, xi))
        residual = float(np.max(np.abs(v - _legendre_reference(J, M, xi))))
        cases.append(Case(f"vilenkin classical (J={J},M={M})", residual, 1e-12))
    return cases


def run_suite(name: str, p: QParam, j_max=None, j_list=None, N=0,
              seed: int = 0, tol: Optional[float] = None,
              cfg: QuadratureConfig = QuadratureConfig()) -> list:
    """Dispatch a named suite with CLI-level defaults."""
    if name == "matrix":
        kw = {} if tol is None else {"tol": tol}
        return suite_matrix(p, j_max if j_max is not None else 4.5, **kw)
    if name == "ladder":
        kw = {} if tol is None else {"tol": tol}
        return suite_ladder(p, j_max if j_max is not None else 3, seed=seed, **kw)
    if name == "casimir":
        kw = {} if tol is None else {"tol": tol}
        return suite_casimir(p, j_max if j_max is not None else 3, seed=seed, **kw)
    if name == "funceq":
        jl = j_list if j_list is not None else (0, 0.5, 1, 1.5, 2)
        return suite_funceq(p, jl, tol=tol)
    if name == "hermiticity":
        kw = {} if tol is None else {"tol": tol}
        return suite_hermiticity(p, j_max if j_max is not None else 2, N=N,
                                 seed=seed, cfg=cfg, **kw)
    if name == "gram":
        kw = {} if tol is None else {"tol": tol}
        return suite_gram(p, N=N, j_list=j_list,
                          j_max=j_max if j_max is not None else 2, cfg=cfg, **kw)
    if name == "limit":
        return suite_limit(cfg=cfg)
    if name == "all":
        cases = []
        cases += suite_matrix(p, j_max if j_max is not None else 4.5)
        if p.regime is not Regime.CLASSICAL:
            cases += suite_funceq(p)
            cases += suite_ladder(p, 3, seed=seed)
            cases += suite_casimir(p, 3, seed=seed)
            cases += suite_hermiticity(p, 2, N=N, seed=seed, cfg=cfg)
        cases += suite_gram(p, N=N, j_max=j_max if j_max is not None else 2, cfg=cfg)
        if p.regime is not Regime.UNIT_CIRCLE:
            cases += suite_limit(cfg=cfg)
        return cases
    raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
