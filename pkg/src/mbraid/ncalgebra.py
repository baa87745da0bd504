"""Free associative algebra over the scalar field, with ordered rewriting.

Words are tuples of generator names; an NCPoly maps words to RatFunc
coefficients and never stores a coefficient that is exactly zero.  A
RewriteSystem orients the defining relations of one algebra so that every
left-hand side is a two-letter descending (or repeated) pair and every
right-hand side is already in normal form.

Reduction is leftmost-innermost and deterministic.  Termination is guarded
by a step cap rather than a termination order: the natural orders fail on
these rule tables (right-hand sides may be lex-larger, and inversion counts
can grow inside a context), so confluence evidence comes from diamond_check
instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .scalars import ONE, ZERO, RatFunc, as_ratfunc, sym

Word = tuple

GROUP = ("a", "b", "c", "d")
PLANE = ("xi", "eta", "x", "y")
GROUP_TILDE = ("a_t", "b_t", "c_t", "d_t")
PLANE_TILDE = ("xi_t", "eta_t", "x_t", "y_t")

TILDE_OF = dict(zip(GROUP + PLANE, GROUP_TILDE + PLANE_TILDE))
PLAIN_OF = {v: k for k, v in TILDE_OF.items()}


class StepCapExceeded(RuntimeError):
    """normal_order exceeded its rewrite budget."""


class NotLinear(ValueError):
    """change_of_basis image that is not homogeneous of degree one."""


class NCPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict):
        self.coeffs = {w: c for w, c in coeffs.items() if not c.is_zero()}

    @staticmethod
    def zero() -> "NCPoly":
        return NCPoly({})

    @staticmethod
    def unit(c=ONE) -> "NCPoly":
        return NCPoly({(): as_ratfunc(c)})

    @staticmethod
    def gen(name: str) -> "NCPoly":
        return NCPoly({(name,): ONE})

    @staticmethod
    def from_word(word: Word, coeff=ONE) -> "NCPoly":
        return NCPoly({tuple(word): as_ratfunc(coeff)})

    def coefficient(self, word: Word) -> RatFunc:
        return self.coeffs.get(tuple(word), ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max((len(w) for w in self.coeffs), default=-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        if set(self.coeffs) != set(other.coeffs):
            return False
        return all(c == other.coeffs[w] for w, c in self.coeffs.items())

    __hash__ = None

    def __add__(self, other: "NCPoly") -> "NCPoly":
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out.get(w)
            out[w] = c if s is None else s + c
        return NCPoly(out)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __neg__(self) -> "NCPoly":
        return NCPoly({w: -c for w, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            out: dict = {}
            for w1, c1 in self.coeffs.items():
                for w2, c2 in other.coeffs.items():
                    w = w1 + w2
                    c = c1 * c2
                    s = out.get(w)
                    out[w] = c if s is None else s + c
            return NCPoly(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, s) -> "NCPoly":
        s = as_ratfunc(s)
        if s is None:
            return NotImplemented
        return NCPoly({w: s * c for w, c in self.coeffs.items()})

    def map_coeffs(self, fn) -> "NCPoly":
        return NCPoly({w: fn(c) for w, c in self.coeffs.items()})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for w in sorted(self.coeffs, key=lambda w: (len(w), w)):
            parts.append(_term_str(w, self.coeffs[w]))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"NCPoly({self})"


def _term_str(word: Word, c: RatFunc) -> str:
    if not word:
        s = str(c)
        return f"({s})" if " " in s else s
    w = "*".join(word)
    if c == ONE:
        return w
    if c == -1:
        return f"-{w}"
    s = str(c)
    if " " in s or "/" in s:
        s = f"({s})"
    return f"{s}*{w}"


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: NCPoly


class RewriteSystem:
    """Oriented relations of one algebra.  The constructor enforces the shape
    guarantees reduction relies on; it does not prove termination."""

    def __init__(self, name: str, alphabet: tuple, rules: list, step_cap: int = 10000):
        self.name = name
        self.alphabet = alphabet
        self.step_cap = step_cap
        self.by_lhs = {}
        rank = {letter: i for i, letter in enumerate(alphabet)}
        for rule in rules:
            if not rule.lhs:
                raise ValueError("empty rule lhs")
            for letter in rule.lhs:
                if letter not in rank:
                    raise ValueError(f"{letter!r} not in alphabet of {name}")
            if rule.lhs in self.by_lhs:
                raise ValueError(f"duplicate rule for {rule.lhs}")
            for w, _ in rule.rhs.coeffs.items():
                if len(w) > len(rule.lhs):
                    raise ValueError(f"rule {rule.lhs} raises degree")
                if w == rule.lhs:
                    raise ValueError(f"rule {rule.lhs} maps to itself")
                if any(letter not in rank for letter in w):
                    raise ValueError(f"rhs of {rule.lhs} leaves the alphabet")
                if _contains(w, rule.lhs):
                    raise ValueError(f"rhs of {rule.lhs} contains its own lhs")
            self.by_lhs[rule.lhs] = rule
        self.lhs_lengths = sorted({len(l) for l in self.by_lhs}, reverse=True) or [2]

    def find_redex(self, word: Word):
        """Leftmost redex: (position, rule) or None."""
        n = len(word)
        for i in range(n):
            for L in self.lhs_lengths:
                if i + L <= n:
                    rule = self.by_lhs.get(word[i:i + L])
                    if rule is not None:
                        return i, rule
        return None


def normal_order(p: NCPoly, system: RewriteSystem) -> NCPoly:
    """Fully reduce p, leftmost redex first.  Raises StepCapExceeded if the
    rewrite budget is exhausted."""
    out: dict = {}
    agenda = list(p.coeffs.items())
    steps = 0
    while agenda:
        word, coeff = agenda.pop()
        hit = system.find_redex(word)
        if hit is None:
            s = out.get(word)
            out[word] = coeff if s is None else s + coeff
            continue
        steps += 1
        if steps > system.step_cap:
            raise StepCapExceeded(f"{system.name}: more than {system.step_cap} rewrite steps")
        i, rule = hit
        L = len(rule.lhs)
        for rword, rcoef in rule.rhs.coeffs.items():
            agenda.append((word[:i] + rword + word[i + L:], coeff * rcoef))
    return NCPoly(out)


def _contains(haystack: Word, needle: Word) -> bool:
    n, m = len(haystack), len(needle)
    return any(haystack[i:i + m] == needle for i in range(n - m + 1))


def diamond_check(system: RewriteSystem, max_degree: int) -> list:
    """For every word up to max_degree with several redexes, rewrite one step
    each way and reduce fully; report words whose normal forms disagree."""
    violations = []
    for degree in range(2, max_degree + 1):
        for letters in product(system.alphabet, repeat=degree):
            word = tuple(letters)
            redexes = _all_redexes(system, word)
            if len(redexes) < 2:
                continue
            forms = []
            for i, rule in redexes:
                L = len(rule.lhs)
                stepped = NCPoly({word[:i] + rw + word[i + L:]: rc
                                  for rw, rc in rule.rhs.coeffs.items()})
                forms.append(normal_order(stepped, system))
            if any(f != forms[0] for f in forms[1:]):
                violations.append(word)
    return violations


def _all_redexes(system: RewriteSystem, word: Word) -> list:
    out = []
    n = len(word)
    for i in range(n):
        for L in system.lhs_lengths:
            if i + L <= n:
                rule = system.by_lhs.get(word[i:i + L])
                if rule is not None:
                    out.append((i, rule))
    return out


def change_of_basis(p: NCPoly, mapping: dict) -> NCPoly:
    """Linear substitution: each mapped generator is replaced by a homogeneous
    degree-one NCPoly; unmapped generators stay themselves."""
    images = {}
    for name, image in mapping.items():
        if image.is_zero() or any(len(w) != 1 for w in image.coeffs):
            raise NotLinear(f"image of {name!r} is not homogeneous of degree one")
        images[name] = image
    out = NCPoly.zero()
    for word, coeff in p.coeffs.items():
        term = NCPoly.unit(coeff)
        for letter in word:
            term = term * images.get(letter, NCPoly.gen(letter))
        out = out + term
    return out


def _rule(lhs: Word, terms: list) -> RewriteRule:
    return RewriteRule(tuple(lhs), NCPoly({tuple(w): as_ratfunc(c) for c, w in terms}))


def build_group_system(d, step_cap: int = 10000) -> RewriteSystem:
    """Oriented quadratic relations of the 2x2 quantum-group algebra for one
    deformation.  Right-hand sides are stored fully normal-ordered."""
    did = getattr(d, "id", d)
    p, q, g, h = sym("p"), sym("q"), sym("g"), sym("h")
    if did == "pq":
        rules = [
            _rule(("b", "a"), [(ONE / q, ("a", "b"))]),
            _rule(("c", "a"), [(p, ("a", "c"))]),
            _rule(("d", "a"), [(ONE, ("a", "d")), (p - q, ("b", "c"))]),
            _rule(("c", "b"), [(p * q, ("b", "c"))]),
            _rule(("d", "b"), [(p, ("b", "d"))]),
            _rule(("d", "c"), [(ONE / q, ("c", "d"))]),
        ]
    elif did == "gh":
        rules = [
            _rule(("b", "a"), [(ONE, ("a", "b")), (-h, ("a", "d")), (h, ("b", "c")),
                               (-h * h, ("a", "c")), (h, ("a", "a"))]),
            _rule(("c", "a"), [(ONE, ("a", "c")), (-g, ("c", "c"))]),
            _rule(("c", "b"), [(ONE, ("b", "c")), (-h, ("a", "c")), (-g, ("c", "d"))]),
            _rule(("d", "a"), [(ONE, ("a", "d")), (h, ("a", "c")), (-g, ("c", "d")),
                               (-g * h, ("c", "c"))]),
            _rule(("d", "b"), [(ONE, ("b", "d")), (g, ("a", "d")), (-g, ("b", "c")),
                               (g * h, ("a", "c")), (-g, ("d", "d"))]),
            _rule(("d", "c"), [(ONE, ("c", "d")), (h, ("c", "c"))]),
        ]
    elif did == "qh":
        rules = [
            _rule(("b", "a"), [(ONE, ("a", "b")), (h, ("c", "d"))]),
            _rule(("c", "a"), [(ONE / q, ("a", "c"))]),
            _rule(("c", "b"), [(ONE / q, ("b", "c"))]),
            _rule(("d", "a"), [(ONE, ("a", "d")), ((1 - q) / q, ("b", "c"))]),
            _rule(("d", "b"), [(-ONE, ("b", "d")), (h / q, ("a", "c"))]),
            _rule(("d", "c"), [(-q, ("c", "d"))]),
            _rule(("c", "c"), []),
            _rule(("d", "d"), [(ONE, ("a", "a")), (-(q + 1) / h, ("b", "b"))]),
        ]
    else:
        raise ValueError(f"unknown deformation {did!r}")
    return RewriteSystem(did, GROUP, rules, step_cap)
