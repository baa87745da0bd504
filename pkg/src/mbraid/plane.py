"""Noncommutative planes driven by the catalog family.

Coordinates (x, y) and differentials (xi, eta) obey three constraint
families: P1 annihilates coordinate bilinears, P2 annihilates differential
bilinears, and the mixed sector reorders coordinate-differential words via
x^i xi^j = (1/(1-X)) Rhat^{ij}_{i'j'} xi^{i'} x^{j'}.  Because Rhat is
affine in K with Rhat(0) = I, both projectors are K-free and the pure
sectors never see the coupling; the mixed rules carry all K-dependence
through the single scalar 1/(1-X) and the nilpotent combination Phi.

Generators are ranked xi < eta < x < y and every rule rewrites a descending
(or repeated) pair, so normal forms carry differentials on the left.  Mixed
rules exist for the pq and gh planes; the third family has a fermionic
coordinate (y^2 = 0) and only its pure sectors are modelled here.

The full mixed systems are confluent exactly at the two braid couplings
K = K1, K2: overlap branches on words like x.eta.xi disagree by a multiple
of the braid-defect factor (K/K1 - 1)(K/K2 - 1), so at generic K normal
forms depend on the (deterministic, leftmost) reduction strategy.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import build_rhat, deformation, hecke_X, projectors
from .ncalgebra import PLANE, NCPoly, RewriteRule, RewriteSystem, normal_order
from .scalars import ONE, RatFunc, as_ratfunc, sym


class UnsupportedDeformation(ValueError):
    """Mixed-sector calculus requested for the fermionic-plane family."""


@dataclass(frozen=True)
class PlaneSystem:
    deformation: str
    k: RatFunc
    rules: RewriteSystem
    one_minus_X: RatFunc


def _word(*names) -> NCPoly:
    return NCPoly.from_word(tuple(names))


def _pure_rules(did: str):
    p, q, g, h = sym("p"), sym("q"), sym("g"), sym("h")
    if did == "pq":
        return [
            RewriteRule(("y", "x"), _word("x", "y").scale(p)),
            RewriteRule(("xi", "xi"), NCPoly.zero()),
            RewriteRule(("eta", "eta"), NCPoly.zero()),
            RewriteRule(("eta", "xi"), _word("xi", "eta").scale(-q)),
        ]
    if did == "gh":
        return [
            RewriteRule(("y", "x"), _word("x", "y") - _word("y", "y").scale(g)),
            RewriteRule(("xi", "xi"), _word("xi", "eta").scale(h)),
            RewriteRule(("eta", "eta"), NCPoly.zero()),
            RewriteRule(("eta", "xi"), -_word("xi", "eta")),
        ]
    if did == "qh":
        return [
            RewriteRule(("y", "x"), _word("x", "y").scale(ONE / q)),
            RewriteRule(("y", "y"), NCPoly.zero()),
            RewriteRule(("eta", "xi"), -_word("xi", "eta")),
            RewriteRule(("eta", "eta"), _word("xi", "xi").scale(-(1 + q) / h)),
        ]
    raise ValueError(f"unknown deformation {did!r}")


def build_pure_system(d, step_cap: int = 20000) -> RewriteSystem:
    """Coordinate and differential relations only; K never appears."""
    spec = deformation(d)
    return RewriteSystem(f"{spec.id}-plane-pure", PLANE, _pure_rules(spec.id), step_cap)


def phi_poly(did: str) -> NCPoly:
    """The nilpotent mixed combination eta.x - p xi.y, or eta.x - xi.y + g eta.y."""
    p, g = sym("p"), sym("g")
    if did == "pq":
        return _word("eta", "x") - _word("xi", "y").scale(p)
    if did == "gh":
        return _word("eta", "x") - _word("xi", "y") + _word("eta", "y").scale(g)
    raise UnsupportedDeformation(f"no mixed combination for {did!r}")


def build_plane_system(d, k=None, step_cap: int = 20000) -> PlaneSystem:
    """Full plane calculus (pure + mixed rules) for the pq or gh family.

    The mixed right-hand sides are stored pre-expanded, with Phi folded in,
    so that every rule right-hand side is already in normal form.
    """
    spec = deformation(d)
    if spec.id not in ("pq", "gh"):
        raise UnsupportedDeformation(
            f"{spec.id}: mixed plane rules are defined for pq and gh only")
    if k is None:
        k = sym("K")
    else:
        k = as_ratfunc(k)
        if k is None:
            raise TypeError("coupling must be a scalar")
    one_minus_X = 1 - hecke_X(spec, k)
    c = ONE / one_minus_X
    p, q, h = sym("p"), sym("q"), sym("h")
    phi = phi_poly(spec.id)
    if spec.id == "pq":
        mixed = [
            RewriteRule(("x", "xi"), _word("xi", "x").scale(c)),
            RewriteRule(("x", "eta"), (_word("xi", "y") + phi.scale(k / p)).scale(c)),
            RewriteRule(("y", "xi"), (_word("eta", "x") - phi.scale(k * q / p)).scale(c)),
            RewriteRule(("y", "eta"), _word("eta", "y").scale(c)),
        ]
    else:
        mixed = [
            RewriteRule(("x", "xi"), (_word("xi", "x") + phi.scale(k * h)).scale(c)),
            RewriteRule(("x", "eta"), (_word("xi", "y") + phi.scale(k)).scale(c)),
            RewriteRule(("y", "xi"), (_word("eta", "x") - phi.scale(k)).scale(c)),
            RewriteRule(("y", "eta"), _word("eta", "y").scale(c)),
        ]
    rules = RewriteSystem(f"{spec.id}-plane", PLANE,
                          _pure_rules(spec.id) + mixed, step_cap)
    return PlaneSystem(spec.id, k, rules, one_minus_X)


def phi(ps: PlaneSystem) -> NCPoly:
    return phi_poly(ps.deformation)


def _vector_constraints(matrix, words, system) -> bool:
    # each matrix row, contracted with the word vector, must reduce to zero
    for i in range(matrix.rows):
        total = NCPoly.zero()
        for j, w in enumerate(words):
            total = total + NCPoly.from_word(w, matrix[i, j])
        if not normal_order(total, system).is_zero():
            return False
    return True


_COORD_WORDS = (("x", "x"), ("x", "y"), ("y", "x"), ("y", "y"))
_DIFF_WORDS = (("xi", "xi"), ("xi", "eta"), ("eta", "xi"), ("eta", "eta"))


def pure_sector_consistency(d) -> bool:
    """P1 kills coordinate bilinears and P2 kills differential bilinears,
    with the coupling fully symbolic.  Works for all three families."""
    spec = deformation(d)
    system = build_pure_system(spec)
    p1, p2 = projectors(spec)
    return (_vector_constraints(p1, _COORD_WORDS, system)
            and _vector_constraints(p2, _DIFF_WORDS, system))


def projector_consistency(ps) -> bool:
    """Pure-sector projector constraints plus the mixed reordering
    x^i xi^j = (1/(1-X)) Rhat^{ij}_{i'j'} xi^{i'} x^{j'}, all reduced to
    normal form inside the full system.

    A deformation id may be passed instead of a PlaneSystem; the fermionic
    family has no mixed rules, so only its pure sectors are checked then.
    """
    if not isinstance(ps, PlaneSystem):
        return pure_sector_consistency(ps)
    spec = deformation(ps.deformation)
    p1, p2 = projectors(spec, ps.k)
    if not _vector_constraints(p1, _COORD_WORDS, ps.rules):
        return False
    if not _vector_constraints(p2, _DIFF_WORDS, ps.rules):
        return False
    rhat = build_rhat(spec, ps.k)
    coords = ("x", "y")
    diffs = ("xi", "eta")
    c = ONE / ps.one_minus_X
    for i in range(2):
        for j in range(2):
            rhs = NCPoly.zero()
            for ii in range(2):
                for jj in range(2):
                    rhs = rhs + NCPoly.from_word(
                        (diffs[ii], coords[jj]), rhat[2 * i + j, 2 * ii + jj])
            defect = _word(coords[i], diffs[j]) - rhs.scale(c)
            if not normal_order(defect, ps.rules).is_zero():
                return False
    return True


def phi_nilpotent(ps: PlaneSystem) -> bool:
    f = phi(ps)
    return normal_order(f * f, ps.rules).is_zero()


def phi_commutators(ps: PlaneSystem) -> bool:
    """The four exchange identities between the generators and Phi.

    The differential identities pick up (g - h) corrections in the gh
    family; both gh coefficients here are fixed by computation, not
    transcription (K, not Kq, against y; (g - h), not (h - g), against xi).
    """
    k = ps.k
    c = ONE / ps.one_minus_X
    p, q, g, h = sym("p"), sym("q"), sym("g"), sym("h")
    f = phi(ps)
    x_, y_, xi_, eta_ = (NCPoly.gen(n) for n in ("x", "y", "xi", "eta"))
    if ps.deformation == "pq":
        checks = [
            (x_ * f).scale(p) - (f * x_).scale(c * k),
            y_ * f - (f * y_).scale(c * k * q),
            (xi_ * f).scale(c * (p + q - k * q)) + f * xi_,
            (eta_ * f).scale(c * (p + q - k * q)) + (f * eta_).scale(p * q),
        ]
    else:
        checks = [
            x_ * f - (f * x_).scale(c * k) - (f * y_).scale(c * k * (g - h)),
            y_ * f - (f * y_).scale(c * k),
            (xi_ * f).scale(c * (2 - k)) + f * xi_ + (f * eta_).scale(g - h),
            (eta_ * f).scale(c * (2 - k)) + f * eta_,
        ]
    return all(normal_order(expr, ps.rules).is_zero() for expr in checks)
