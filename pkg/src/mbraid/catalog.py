"""The three deformation families and their spectral data.

Each family is a 4x4 matrix R-hat(K) over the exact scalar field, linear in
the coupling K, together with the two eigenvalue parameters K1 and K2 at
which the braid defect degenerates.  Everything downstream (projectors,
K -> K' duality, the triangular point, the factorizing matrix M) is derived
from (K1, K2) here, never hard-coded twice.

Basis order is e1(x)e1, e1(x)e2, e2(x)e1, e2(x)e2, first factor most
significant.  R = P.R-hat with P the factor swap.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pmatrix import ParamMatrix, perm_operator
from .scalars import ONE, DivisionByZero, QuadExt, RatFunc, as_ratfunc, sym


class DegenerateX(ArithmeticError):
    """Projectors requested where the two Hecke eigenvalues collide (k = 0)."""


@dataclass(frozen=True)
class DeformationSpec:
    id: str
    params: tuple
    K1: RatFunc
    K2: RatFunc


_P = sym("p")
_Q = sym("q")
_G = sym("g")
_H = sym("h")

_SPECS = {
    "pq": DeformationSpec("pq", ("p", "q"), ONE, _P / _Q),
    "gh": DeformationSpec("gh", ("g", "h"), ONE, ONE),
    "qh": DeformationSpec("qh", ("q", "h"), ONE, ONE / _Q),
}

DEFORMATIONS = tuple(_SPECS)


def deformation(d) -> DeformationSpec:
    if isinstance(d, DeformationSpec):
        return d
    spec = _SPECS.get(d)
    if spec is None:
        raise ValueError(f"unknown deformation {d!r}; expected one of {DEFORMATIONS}")
    return spec


def _coupling(k) -> RatFunc:
    if k is None:
        return sym("K")
    out = as_ratfunc(k)
    if out is None:
        raise TypeError(f"coupling must be a scalar, got {type(k).__name__}")
    return out


def build_rhat(d, k=None) -> ParamMatrix:
    """R-hat(K) for one family; K = 0 gives the identity in every family."""
    spec = deformation(d)
    k = _coupling(k)
    one = ONE
    zero = one - one
    if spec.id == "pq":
        rows = [
            [one, zero, zero, zero],
            [zero, 1 - k, k / _P, zero],
            [zero, k * _Q, 1 - k * _Q / _P, zero],
            [zero, zero, zero, one],
        ]
    elif spec.id == "gh":
        rows = [
            [one, -_H * k, _H * k, _G * _H * k],
            [zero, 1 - k, k, _G * k],
            [zero, k, 1 - k, -_G * k],
            [zero, zero, zero, one],
        ]
    else:
        rows = [
            [one, zero, zero, k * _H],
            [zero, 1 - k, k * _Q, zero],
            [zero, k, 1 - k * _Q, zero],
            [zero, zero, zero, 1 - k * (_Q + 1)],
        ]
    return ParamMatrix.from_rows(rows)


_SWAP = None


def factor_swap() -> ParamMatrix:
    """The 4x4 tensor-factor swap P."""
    global _SWAP
    if _SWAP is None:
        _SWAP = perm_operator((2, 1), 2)
    return _SWAP


def build_r(d, k=None) -> ParamMatrix:
    """R(K) = P.R-hat(K), the RTT-form matrix."""
    return factor_swap() @ build_rhat(d, k)


def hecke_X(d, k=None) -> RatFunc:
    """The Hecke scalar X with R-hat^2 = X R-hat + (1 - X) I."""
    spec = deformation(d)
    k = _coupling(k)
    return 2 - k / spec.K1 - k / spec.K2


def projectors(d, k=None):
    """Spectral idempotents (P1, P2) with R-hat = (X - 1) P1 + P2."""
    spec = deformation(d)
    k = _coupling(k)
    x = hecke_X(spec, k)
    if (x - 2).is_zero():
        raise DegenerateX(f"{spec.id}: eigenvalues 1 and X - 1 collide at k = {k}")
    rhat = build_rhat(spec, k)
    ident = ParamMatrix.identity(4)
    p1 = (rhat - ident).scale(ONE / (x - 2))
    p2 = (rhat - ident.scale(x - 1)).scale(ONE / (2 - x))
    return p1, p2


def kprime(d, k=None) -> RatFunc:
    """The dual coupling K' with flip21(R(K)) . R(K') = I; an involution."""
    spec = deformation(d)
    k = _coupling(k)
    denom = k / spec.K1 + k / spec.K2 - 1
    if denom.is_zero():
        raise DivisionByZero(f"{spec.id}: K' undefined where K/K1 + K/K2 = 1")
    return k / denom


def triangular_K(d) -> RatFunc:
    """The coupling where R-hat(K)^2 = I (K' = K fixed point)."""
    spec = deformation(d)
    return 2 * spec.K1 * spec.K2 / (spec.K1 + spec.K2)


def build_M():
    """Upper-triangular M over the quadratic extension s^2 = 2pq/(p+q) with
    inverse(flip21(M)) . M = R(K*) for the pq family at the triangular K*.
    Returns (M, rho)."""
    rho = 2 * _P * _Q / (_P + _Q)
    one = QuadExt.of(1, rho)
    zero = QuadExt.of(0, rho)
    s = QuadExt.root(rho)
    m = QuadExt(0, (_P - _Q) / (2 * _P * _Q), rho)
    rows = [
        [one, zero, zero, zero],
        [zero, s, m, zero],
        [zero, zero, s.inverse(), zero],
        [zero, zero, zero, one],
    ]
    return ParamMatrix.from_rows(rows), rho
