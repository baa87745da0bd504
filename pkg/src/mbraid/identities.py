"""Matrix identities of the catalog family on the triple tensor product.

The family satisfies the braid relation only up to a defect:

    B(K) = Rhat12 Rhat23 Rhat12 - Rhat23 Rhat12 Rhat23
         = lam(K) (Rhat12 - Rhat23),      lam = (K/K1 - 1)(K/K2 - 1)

so every entry of B(K) is divisible by (K - K1)(K - K2), the defect vanishes
exactly at K = K1 and K = K2, and shifting by a root mu of mu^2 - X mu + lam
restores the genuine braid relation (the shift enters through the Hecke
identity, which turns the defect coefficient into mu^2 - X mu + lam).
mbe_r_form carries the same statement over to R = P.Rhat using permutation
operators.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import build_r, build_rhat, deformation, hecke_X
from .pmatrix import ParamMatrix, embed12, embed23, perm_operator
from .scalars import ONE, QuadExt, RatFunc, poly_divmod_in, sym


class DegenerateValues(ArithmeticError):
    """Affine decomposition requested where K1 = K2."""


def mbe_factor(d, k=None) -> RatFunc:
    """The braid-defect scalar lam(K) = (K/K1 - 1)(K/K2 - 1)."""
    spec = deformation(d)
    k = sym("K") if k is None else k
    return (k / spec.K1 - 1) * (k / spec.K2 - 1)


def braid_residual(d, k=None) -> ParamMatrix:
    """B(K) on the triple tensor product, an 8x8 matrix."""
    rhat = build_rhat(d, k)
    r12 = embed12(rhat)
    r23 = embed23(rhat)
    return r12 @ r23 @ r12 - r23 @ r12 @ r23


def mbe_residual(d, k=None) -> ParamMatrix:
    """B(K) - lam(K) (Rhat12 - Rhat23); identically zero for the catalog."""
    rhat = build_rhat(d, k)
    r12 = embed12(rhat)
    r23 = embed23(rhat)
    lam = mbe_factor(d, k)
    return r12 @ r23 @ r12 - r23 @ r12 @ r23 - (r12 - r23).scale(lam)


@dataclass(frozen=True)
class MbeReport:
    deformation: str
    factor: RatFunc
    residual_zero: bool


def mbe_check(d, k=None) -> MbeReport:
    spec = deformation(d)
    return MbeReport(spec.id, mbe_factor(spec, k), mbe_residual(spec, k).is_zero())


def mbe_r_form(d, k=None) -> ParamMatrix:
    """The same defect equation for R = P.Rhat:

        R12 R13 R23 - R23 R13 R12 = lam (P(132) R23 - P(123) R12)

    with R13 the conjugate of R12 by the (2 3) factor swap and the cycles in
    one-line notation (123) = (2,3,1), (132) = (3,1,2).  Returns lhs - rhs.
    """
    r = build_r(d, k)
    r12 = embed12(r)
    r23 = embed23(r)
    p23 = perm_operator((1, 3, 2))
    r13 = p23 @ r12 @ p23
    lam = mbe_factor(d, k)
    lhs = r12 @ r13 @ r23 - r23 @ r13 @ r12
    rhs = (perm_operator((3, 1, 2)) @ r23 - perm_operator((2, 3, 1)) @ r12).scale(lam)
    return lhs - rhs


def braid_divisibility(d) -> bool:
    """Every entry of symbolic B(K) is divisible by (K - K1)(K - K2)."""
    spec = deformation(d)
    k = sym("K")
    divisor = (k - spec.K1) * (k - spec.K2)
    if "K" in divisor.den.symbols():
        return False
    b = braid_residual(spec)
    for e in b.data:
        if e.is_zero():
            continue
        if "K" in e.den.symbols():
            return False
        _, rem = poly_divmod_in(e.num, divisor.num, "K")
        if rem:
            return False
    return True


def s_shift_check(d, mode: str = "symbolic") -> bool:
    """Shifted family S = Rhat - mu I.

    mode="symbolic": with mu a free symbol,
        S12 S23 S12 - S23 S12 S23 = (mu^2 - X mu + lam)(S12 - S23),
    which follows from the defect equation plus Hecke and reduces to it at
    mu = 0.
    mode="root": with mu = (X + s)/2 in the extension s^2 = X^2 - 4 lam the
    coefficient vanishes, so the genuine braid relation holds exactly.
    """
    spec = deformation(d)
    lam = mbe_factor(spec)
    x = hecke_X(spec)
    if mode == "symbolic":
        mu = sym("u")  # u is unused by every catalog family, so it is free here
        rhat = build_rhat(spec)
        s = rhat - ParamMatrix.identity(4).scale(mu)
        s12 = embed12(s)
        s23 = embed23(s)
        lhs = s12 @ s23 @ s12 - s23 @ s12 @ s23
        rhs = (s12 - s23).scale(mu * mu - x * mu + lam)
        return (lhs - rhs).is_zero()
    if mode == "root":
        rho = x * x - 4 * lam
        one = QuadExt.of(1, rho)
        mu = (QuadExt.of(x, rho) + QuadExt.root(rho)) / QuadExt.of(2, rho)
        rhat = build_rhat(spec).map(lambda e: QuadExt.of(e, rho))
        s = rhat - ParamMatrix.identity(4, one).scale(mu)
        s12 = embed12(s, one)
        s23 = embed23(s, one)
        return (s12 @ s23 @ s12 - s23 @ s12 @ s23).is_zero()
    raise ValueError(f"unknown mode {mode!r}")


def affine_decomposition(d, k=None):
    """Coefficients (c1, c2), c1 + c2 = 1, with
    Rhat(K) = c1 Rhat(K1) + c2 Rhat(K2).  Degenerate when K1 = K2."""
    spec = deformation(d)
    k = sym("K") if k is None else k
    if (spec.K2 - spec.K1).is_zero():
        raise DegenerateValues(f"{spec.id}: K1 = K2 = {spec.K1}")
    c1 = (spec.K2 - k) / (spec.K2 - spec.K1)
    c2 = (k - spec.K1) / (spec.K2 - spec.K1)
    return c1, c2


def baxterization_check(d, k=None) -> bool:
    """Rhat(K) = (K/Ki) Rhat(Ki) - (K/Ki - 1) I for both degeneracy points."""
    spec = deformation(d)
    k = sym("K") if k is None else k
    rhat = build_rhat(spec, k)
    ident = ParamMatrix.identity(4)
    for ki in (spec.K1, spec.K2):
        built = build_rhat(spec, ki).scale(k / ki) - ident.scale(k / ki - 1)
        if rhat != built:
            return False
    return True
