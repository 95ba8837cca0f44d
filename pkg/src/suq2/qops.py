"""Generators as q-dilation stencils on plane families, and matrix irreps.

The generators never differentiate: H3-dependent quantities go through the
exact dilations q^(a H3): f -> q^(-a N) f(q^-a u, q^a v), and the ladder
operators are finite q-difference stencils built from dilations of the two
arguments.  Families keep (u, v) independent (physical slice v = conj(u))
because circle-regime dilations move the arguments off that slice.

Stencils are parameter-covariant: the deformation parameter used by a
stencil is the one supplied at evaluation time, not the one captured at
construction.  The deformed scalar products evaluate bra-side families at
the inverted parameter, and covariance is what makes an operator commute
with that inversion.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .qcore import (
    HalfInt,
    QParam,
    Regime,
    check_not_root_of_unity,
    m_values,
    q_number,
)
from .qspecial import psi

MATRIX_TOL = 1e-12


@dataclass(frozen=True)
class PlaneFamily:
    """A function of (u, v) parametrized by p, evaluated as family(p, u, v)."""
    evaluator: Callable
    meta: Optional[tuple] = None

    def __call__(self, p: QParam, u, v):
        return self.evaluator(p, u, v)


@dataclass(frozen=True)
class RealizationParams:
    N: HalfInt
    p: QParam

    def __post_init__(self):
        object.__setattr__(self, "N", HalfInt.of(self.N))
        if self.p.regime is Regime.CLASSICAL:
            # every stencil divides by q - q^-1
            raise ValueError("dilation stencils need a deformed parameter (q != 1)")


def constant_family(c) -> PlaneFamily:
    return PlaneFamily(lambda p, u, v: c * np.ones_like(np.asarray(u, dtype=complex) * np.asarray(v, dtype=complex)))


def monomial_family(j: int, k: int) -> PlaneFamily:
    return PlaneFamily(lambda p, u, v: np.asarray(u, complex) ** j * np.asarray(v, complex) ** k)


def psi_family(J, M, N) -> PlaneFamily:
    """Basis member as a family; the parameter stays a free slot."""
    J, M, N = HalfInt.of(J), HalfInt.of(M), HalfInt.of(N)
    return PlaneFamily(lambda p, u, v: psi(J, M, N, p, u, v), meta=(J, M, N))


def with_fixed_param(f: PlaneFamily, p0: QParam) -> PlaneFamily:
    """Pin f to parameter p0, ignoring the evaluation-time slot.

    Used for limit studies: a family frozen at q = 1 fed through a deformed
    form probes the form itself rather than the covariant family.  The mode
    tag survives (the angular structure does not depend on the parameter).
    """
    return PlaneFamily(lambda p, u, v: f(p0, u, v), meta=f.meta)


def combine(coeffs: Sequence[complex], families: Sequence[PlaneFamily]) -> PlaneFamily:
    if len(coeffs) != len(families):
        raise ValueError("coefficient/family length mismatch")
    cs = [complex(c) for c in coeffs]
    fs = list(families)

    def ev(p, u, v):
        acc = 0
        for c, f in zip(cs, fs):
            acc = acc + c * f(p, u, v)
        return acc
    return PlaneFamily(ev)


def dilate(f: PlaneFamily, a: float, b: float) -> PlaneFamily:
    """q^(a T + b Tbar): (u, v) -> f(q^a u, q^b v)."""
    return PlaneFamily(lambda p, u, v: f(p, p.power(a) * np.asarray(u, complex),
                                         p.power(b) * np.asarray(v, complex)))


def _require_deformed(p: QParam):
    if p.regime is Regime.CLASSICAL:
        raise ValueError("stencil evaluation needs a deformed parameter (q != 1)")


def apply_h_plus(f: PlaneFamily, r: RealizationParams) -> PlaneFamily:
    """Raising stencil; evaluation at u = 0 is excluded (division by u)."""
    nf = float(r.N)

    def ev(p, u, v):
        _require_deformed(p)
        u = np.asarray(u, dtype=complex)
        v = np.asarray(v, dtype=complex)
        if np.any(u == 0):
            raise ValueError("h_plus stencil is singular at u = 0")
        q1, qm1 = p.power(1), p.power(-1)
        d = q1 - qm1
        f_pp = f(p, q1 * u, q1 * v)
        t1 = -p.power(-nf / 2) * (f_pp - f(p, qm1 * u, q1 * v)) / (d * u)
        t2 = -p.power(nf / 2) * v * (p.power(-nf) * f_pp - p.power(nf) * f(p, q1 * u, qm1 * v)) / d
        return t1 + t2
    return PlaneFamily(ev)


def apply_h_minus(f: PlaneFamily, r: RealizationParams) -> PlaneFamily:
    """Lowering stencil; evaluation at v = 0 is excluded (division by v)."""
    nf = float(r.N)

    def ev(p, u, v):
        _require_deformed(p)
        u = np.asarray(u, dtype=complex)
        v = np.asarray(v, dtype=complex)
        if np.any(v == 0):
            raise ValueError("h_minus stencil is singular at v = 0")
        q1, qm1 = p.power(1), p.power(-1)
        d = q1 - qm1
        f_pp = f(p, q1 * u, q1 * v)
        t1 = u * p.power(-nf / 2) * (p.power(nf) * f_pp - p.power(-nf) * f(p, qm1 * u, q1 * v)) / d
        t2 = p.power(nf / 2) * (f_pp - f(p, q1 * u, qm1 * v)) / (d * v)
        return t1 + t2
    return PlaneFamily(ev)


def apply_q_h3_power(f: PlaneFamily, r: RealizationParams, a: float) -> PlaneFamily:
    """q^(a H3): f -> q^(-a N) f(q^-a u, q^a v); exact, no differencing."""
    nf = float(r.N)
    return PlaneFamily(lambda p, u, v: p.power(-a * nf)
                       * f(p, p.power(-a) * np.asarray(u, complex),
                           p.power(a) * np.asarray(v, complex)))


def apply_q2h3(f: PlaneFamily, r: RealizationParams) -> PlaneFamily:
    return apply_q_h3_power(f, r, 2.0)


def _bracket_h3(f: PlaneFamily, r: RealizationParams, shift: int) -> PlaneFamily:
    # [H3 + shift]_q = (q^shift q^H3 - q^-shift q^-H3) / (q - q^-1)
    up = apply_q_h3_power(f, r, 1.0)
    dn = apply_q_h3_power(f, r, -1.0)

    def ev(p, u, v):
        _require_deformed(p)
        d = p.power(1) - p.power(-1)
        return (p.power(shift) * up(p, u, v) - p.power(-shift) * dn(p, u, v)) / d
    return PlaneFamily(ev)


def apply_casimir(f: PlaneFamily, r: RealizationParams, ordering: str = "plus_minus") -> PlaneFamily:
    """H+H- + [H3][H3-1], or the equivalent H-H+ + [H3][H3+1] ordering."""
    if ordering == "plus_minus":
        ladder = apply_h_plus(apply_h_minus(f, r), r)
        diag = _bracket_h3(_bracket_h3(f, r, -1), r, 0)
    elif ordering == "minus_plus":
        ladder = apply_h_minus(apply_h_plus(f, r), r)
        diag = _bracket_h3(_bracket_h3(f, r, +1), r, 0)
    else:
        raise ValueError(f"unknown ordering {ordering!r}")
    return PlaneFamily(lambda p, u, v: ladder(p, u, v) + diag(p, u, v))


@dataclass(frozen=True)
class IrrepMatrices:
    J: HalfInt
    p: QParam
    dimension: int
    m_list: tuple
    H3: np.ndarray
    Hplus: np.ndarray
    Hminus: np.ndarray


def matrix_irrep(J, p: QParam) -> IrrepMatrices:
    """Exact (2J+1)-dimensional ladder matrices, basis M = J, J-1, ..., -J.

    The parameter is screened against [n]_q = 0 degeneracies up to n = 2J+1
    (the largest q-number entering the ladder radicands), and circle-regime
    radicands must be nonnegative, else the square roots leave the reals.
    """
    J = HalfInt.of(J)
    if J.twice < 0:
        raise ValueError("J must be >= 0")
    n_max = max(J.twice + 1, 1)
    screen = check_not_root_of_unity(p, n_max)
    if not screen.passed:
        raise ValueError(f"degenerate parameter: [{screen.offending_n}]_q vanishes")
    ms = m_values(J)
    dim = len(ms)
    h3 = np.diag([float(m) for m in ms])
    hplus = np.zeros((dim, dim))
    hminus = np.zeros((dim, dim))
    for i, m in enumerate(ms):
        if i > 0:  # raising: M -> M+1 lives one row up
            rad = q_number((J - m).to_int(), p) * q_number((J + m).to_int() + 1, p)
            if rad < 0:
                raise ValueError(f"negative ladder radicand at M={m}")
            hplus[i - 1, i] = np.sqrt(rad)
        if i < dim - 1:
            rad = q_number((J + m).to_int(), p) * q_number((J - m).to_int() + 1, p)
            if rad < 0:
                raise ValueError(f"negative ladder radicand at M={m}")
            hminus[i + 1, i] = np.sqrt(rad)
    return IrrepMatrices(J, p, dim, tuple(ms), h3, hplus, hminus)


def casimir_matrix(ir: IrrepMatrices) -> np.ndarray:
    bracket = np.diag([q_number(float(m), ir.p) * q_number(float(m) - 1.0, ir.p)
                       for m in ir.m_list])
    return ir.Hplus @ ir.Hminus + bracket
