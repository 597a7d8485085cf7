"""Exact arithmetic in the Leavitt labelled path algebra.

Elements are finite sums of monomials s_alpha p_A s_beta^*, stored as a
dict ``(alpha, beta, A) -> Fraction`` with A already cut down to
A ∩ r(alpha) ∩ r(beta). Products use the three-case rule on monomials.

Normal form
-----------
Each monomial is the indicator function of {alpha beta^{-1}} x V_(alpha, A, alpha)
on the groupoid of germs. Monomials with different reduced group words
alpha beta^{-1} have disjoint supports, so the normal form works one group
word at a time. Within a group word mu nu^{-1} the monomials are
(mu sigma, nu sigma) with sigma varying, and for an atom X the node
(sigma, X) has the children (sigma a, Y) for every letter a emitted by X and
every atom Y inside r(X, a) -- the Cuntz-Krieger expansion. Sink atoms are
leaves. Nodes are expanded until none lies above another (their supports
are then pairwise disjoint, so the sum is zero iff every coefficient is),
and then families of siblings with one common coefficient are contracted
back into their parent, bottom up. The contracted form does not depend on
how far the input was expanded, so it is canonical.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from numbers import Rational

from .action import from_pair
from .graph import Word, letters_from
from .semigroup import ZERO
from .space import LabelledSpace, is_regular

RINGS = ("Q", "Z")


class OracleDisagreement(AssertionError):
    """Two independent decision procedures disagreed; always a bug."""


class NonUnital(ValueError):
    def __init__(self, witness):
        super().__init__("family has no top element")
        self.witness = witness


def coerce(ring: str, c) -> Fraction:
    c = Fraction(c)
    if ring == "Z" and c.denominator != 1:
        raise ValueError(f"coefficient {c} is not an integer")
    return c


class Element:
    """A finite linear combination of monomials over Z or Q."""

    __slots__ = ("space", "terms", "ring")

    def __init__(self, space: LabelledSpace, terms=None, ring: str = "Q"):
        if ring not in RINGS:
            raise ValueError(f"unknown ring {ring!r}")
        self.space = space
        self.ring = ring
        self.terms: dict[tuple[Word, Word, int], Fraction] = {}
        if terms:
            for k, c in terms.items():
                c = coerce(ring, c)
                if c:
                    self.terms[k] = c

    def _like(self, terms) -> "Element":
        out = Element(self.space, None, self.ring)
        out.terms = terms
        return out

    def _check(self, other: "Element"):
        if other.space is not self.space:
            raise ValueError("elements live over different labelled spaces")
        if other.ring != self.ring:
            raise ValueError("elements use different coefficient rings")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._like(out)

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        if isinstance(other, (int, Rational)):
            c = coerce(self.ring, other)
            if not c:
                return self._like({})
            return self._like({k: v * c for k, v in self.terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        # structural; algebraic equality is equals()
        return (isinstance(other, Element) and other.space is self.space
                and other.terms == self.terms)

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Element({format_element(self)})"


def zero(sp: LabelledSpace, ring: str = "Q") -> Element:
    return Element(sp, None, ring)


def make_term(sp: LabelledSpace, c, alpha: Word, A: int, beta: Word, ring: str = "Q") -> Element:
    """c s_alpha p_{A ∩ r(alpha) ∩ r(beta)} s_beta^*."""
    if A not in sp.family:
        raise ValueError("set is not a member of the family")
    alpha, beta = tuple(alpha), tuple(beta)
    A &= sp.range_of(alpha) & sp.range_of(beta)
    if not A:
        return zero(sp, ring)
    return Element(sp, {(alpha, beta, A): c}, ring)


def p(sp: LabelledSpace, A: int, ring: str = "Q") -> Element:
    return make_term(sp, 1, (), A, (), ring)


def s(sp: LabelledSpace, word: Word, ring: str = "Q") -> Element:
    word = tuple(word)
    if not word:
        raise ValueError("s() needs a nonempty word")
    R = sp.range_of(word)
    if not R:
        return zero(sp, ring)
    return make_term(sp, 1, word, R, (), ring)


def s_star(sp: LabelledSpace, word: Word, ring: str = "Q") -> Element:
    return star_element(s(sp, word, ring))


def idempotent_element(sp: LabelledSpace, e, ring: str = "Q") -> Element:
    if e is ZERO:
        return zero(sp, ring)
    return make_term(sp, 1, e.alpha, e.A, e.alpha, ring)


def _mono_product(sp: LabelledSpace, k1, k2):
    alpha, beta, A = k1
    gamma, delta, B = k2
    if gamma[: len(beta)] == beta:
        rest = gamma[len(beta):]
        C = sp.r(A, rest) & B
        return (alpha + rest, delta, C) if C else None
    if beta[: len(gamma)] == gamma:
        rest = beta[len(gamma):]
        C = A & sp.r(B, rest)
        return (alpha, delta + rest, C) if C else None
    return None


def multiply(x: Element, y: Element) -> Element:
    x._check(y)
    sp = x.space
    out: dict = {}
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            k = _mono_product(sp, k1, k2)
            if k is None:
                continue
            v = out.get(k, 0) + c1 * c2
            if v:
                out[k] = v
            else:
                del out[k]
    return x._like(out)


def star_element(x: Element) -> Element:
    return x._like({(b, a, A): c for (a, b, A), c in x.terms.items()})


def degree(key) -> int:
    return len(key[0]) - len(key[1])


# -- normal form ----------------------------------------------------------

def _common_suffix(a: Word, b: Word) -> int:
    k = 0
    while k < len(a) and k < len(b) and a[len(a) - 1 - k] == b[len(b) - 1 - k]:
        k += 1
    return k


def _below(sp: LabelledSpace, sigma: Word, X: int, sigma2: Word, Y: int) -> bool:
    """Is node (sigma2, Y) strictly below node (sigma, X)?"""
    n = len(sigma)
    return (len(sigma2) > n and sigma2[:n] == sigma
            and Y & sp.r(X, sigma2[n:]) == Y)


def _expand(sp: LabelledSpace, nodes: dict) -> None:
    if not nodes:
        return
    level = min(len(s) for s, _ in nodes)
    while True:
        deeper = [k for k in nodes if len(k[0]) > level]
        if not deeper:
            return
        here = sorted(k for k in nodes if len(k[0]) == level)
        for sigma, X in here:
            if sp.sink_atom(X):
                continue
            if not any(_below(sp, sigma, X, s2, Y) for s2, Y in deeper):
                continue
            c = nodes.pop((sigma, X))
            for a, Y in sp.children(X):
                key = (sigma + (a,), Y)
                v = nodes.get(key, 0) + c
                if v:
                    nodes[key] = v
                else:
                    nodes.pop(key, None)
        level += 1


def _contract(sp: LabelledSpace, mu: Word, nu: Word, nodes: dict) -> None:
    if not nodes:
        return
    top = max(len(s) for s, _ in nodes)
    for level in range(top, 0, -1):
        parents = set()
        for sigma, Y in list(nodes):
            if len(sigma) != level:
                continue
            X = sp.back_atom(Y, sigma[-1])
            if X is None:
                continue
            up = sigma[:-1]
            if X & sp.range_of(mu + up) & sp.range_of(nu + up) != X:
                continue
            parents.add((up, X))
        for up, X in sorted(parents):
            kids = [(up + (a,), Y) for a, Y in sp.children(X)]
            coeffs = {nodes.get(k) for k in kids}
            if len(coeffs) != 1 or None in coeffs:
                continue
            for k in kids:
                del nodes[k]
            assert (up, X) not in nodes
            nodes[(up, X)] = coeffs.pop()


def normalize(x: Element) -> Element:
    """Canonical representative; empty exactly when x = 0."""
    sp = x.space
    groups: dict[tuple[Word, Word], dict] = defaultdict(dict)
    for (alpha, beta, A), c in x.terms.items():
        k = _common_suffix(alpha, beta)
        mu, nu = alpha[: len(alpha) - k], beta[: len(beta) - k]
        sigma = alpha[len(alpha) - k:]
        nodes = groups[(mu, nu)]
        for X in sp.family.atoms_below(A):
            v = nodes.get((sigma, X), 0) + c
            if v:
                nodes[(sigma, X)] = v
            else:
                nodes.pop((sigma, X), None)
    merged: dict[tuple[Word, Word], dict[Fraction, int]] = defaultdict(dict)
    for (mu, nu), nodes in groups.items():
        _expand(sp, nodes)
        _contract(sp, mu, nu, nodes)
        for (sigma, X), c in nodes.items():
            bucket = merged[(mu + sigma, nu + sigma)]
            bucket[c] = bucket.get(c, 0) | X
    g = sp.graph
    keys = []
    for (alpha, beta), bucket in merged.items():
        for c, A in bucket.items():
            keys.append(((alpha, beta, A), c))
    keys.sort(key=lambda kc: (degree(kc[0]), g.word_key(kc[0][0]), g.word_key(kc[0][1]), kc[0][2]))
    return x._like(dict(keys))


def equals(x: Element, y: Element) -> bool:
    return not normalize(x - y).terms


def graded_components(x: Element) -> dict[int, Element]:
    parts: dict[int, dict] = defaultdict(dict)
    for k, c in x.terms.items():
        parts[degree(k)][k] = c
    return {d: x._like(t) for d, t in sorted(parts.items())}


def unit_element(sp: LabelledSpace, ring: str = "Q") -> Element:
    """p_I + sum over a in F of s_a p_{r(a) minus r(I,a)} s_a^*, when the family has a top I."""
    fam = sp.family
    if fam.top is None:
        raise NonUnital(maximal_pair(sp))
    I = fam.top
    u = p(sp, I, ring)
    for a in unit_letters(sp):
        D = sp.range_of((a,)) & ~sp.r(I, (a,))
        u = u + make_term(sp, 1, (a,), D, (a,), ring)
    return u


def unit_letters(sp: LabelledSpace) -> list[str]:
    I = sp.family.top
    return [a for a in sp.graph.alphabet if sp.range_of((a,)) & ~sp.r(I, (a,))]


def maximal_pair(sp: LabelledSpace):
    ms = [m for m in sp.family.members if m]
    maximal = sorted(m for m in ms if not any(o != m and o & m == m for o in ms))
    return tuple(maximal[:2])


def in_diagonal(x: Element) -> bool:
    return all(a == b for a, b, _ in normalize(x).terms)


def in_abelian_core(sp: LabelledSpace, x: Element) -> bool:
    from .groupoid import Cycle, cycle_has_exit, is_cycle

    for alpha, beta, A in normalize(x).terms:
        if alpha == beta:
            continue
        if alpha[: len(beta)] == beta:
            delta = alpha[len(beta):]
        elif beta[: len(alpha)] == alpha:
            delta = beta[len(alpha):]
        else:
            return False
        c = Cycle(delta, A)
        if not is_cycle(sp, c) or cycle_has_exit(sp, c):
            return False
    return True


# -- evaluation on the groupoid of germs ------------------------------------

def _contains(tf, alpha: Word, A: int) -> bool:
    if not tf.has_prefix(alpha):
        return False
    X = tf.level(len(alpha))
    return X is not None and X & A == X


def steinberg_eval(sp: LabelledSpace, x: Element, g) -> Fraction:
    """Value at (t, xi) of the function attached to x.

    Uses the stored monomials directly, never the normal form, so it stays
    independent of normalize().
    """
    total = Fraction(0)
    for (alpha, beta, A), c in x.terms.items():
        if from_pair(alpha, beta) == g.t and _contains(g.xi, alpha, A):
            total += c
    return total


def oracle_zero(sp: LabelledSpace, x: Element, filters):
    """(True, None) if the function of x vanishes on every (t, xi) with xi in
    ``filters``; otherwise (False, (t, xi, value))."""
    terms = [(from_pair(a, b), a, A, c) for (a, b, A), c in x.terms.items()]
    for tf in filters:
        acc: dict = defaultdict(Fraction)
        for t, alpha, A, c in terms:
            if _contains(tf, alpha, A):
                acc[t] += c
        for t, v in acc.items():
            if v:
                return False, (t, tf, v)
    return True, None


# -- printing ---------------------------------------------------------------

def format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(sp: LabelledSpace, alpha: Word, beta: Word, A: int) -> str:
    g = sp.graph
    parts = []
    if alpha:
        parts.append(f"s({g.fmt_word(alpha)})")
    parts.append("p" + g.fmt_set(A))
    if beta:
        parts.append(f"s'({g.fmt_word(beta)})")
    return "*".join(parts)


def format_element(x: Element) -> str:
    if not x.terms:
        return "0"
    out = []
    for i, ((alpha, beta, A), c) in enumerate(x.terms.items()):
        mono = format_monomial(x.space, alpha, beta, A)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = mono if mag == 1 else f"{format_coefficient(mag)}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# -- defining relations in symbolic form ------------------------------------
#
# A polynomial is a list of (coefficient, generators) with generators
# ("p", A), ("s", a) or ("t", a) for s_a^*, so the same relation can be
# realised in this algebra and in any other target.

def relation_instances(sp: LabelledSpace):
    """(label, lhs, rhs) for every instance of the five defining relations."""
    fam, g = sp.family, sp.graph
    members = sorted(fam.members)
    letters = g.alphabet
    out = [("p_empty", [(1, (("p", 0),))], [])]
    for A in members:
        for B in members:
            out.append((f"meet {A},{B}", [(1, (("p", A & B),))], [(1, (("p", A), ("p", B)))]))
            out.append((f"join {A},{B}", [(1, (("p", A | B),))],
                        [(1, (("p", A),)), (1, (("p", B),)), (-1, (("p", A & B),))]))
        for a in letters:
            rA = sp.r(A, (a,))
            out.append((f"ps {A},{a}", [(1, (("p", A), ("s", a)))], [(1, (("s", a), ("p", rA)))]))
            out.append((f"tp {A},{a}", [(1, (("t", a), ("p", A)))], [(1, (("p", rA), ("t", a)))]))
        if A and is_regular(sp, A):
            rhs = [(1, (("s", a), ("p", sp.r(A, (a,))), ("t", a))) for a in letters_from(g, A)]
            out.append((f"ck {A}", [(1, (("p", A),))], rhs))
    for a in letters:
        out.append((f"ts {a}", [(1, (("t", a), ("s", a)))], [(1, (("p", sp.range_of((a,))),))]))
        for b in letters:
            if b != a:
                out.append((f"ts {b},{a}", [(1, (("t", b), ("s", a)))], []))
        out.append((f"sts {a}", [(1, (("s", a), ("t", a), ("s", a)))], [(1, (("s", a),))]))
        out.append((f"tst {a}", [(1, (("t", a), ("s", a), ("t", a)))], [(1, (("t", a),))]))
    return out


def realize(sp: LabelledSpace, poly, ring: str = "Q") -> Element:
    total = zero(sp, ring)
    for c, gens in poly:
        term = None
        for kind, v in gens:
            if kind == "p":
                x = p(sp, v, ring)
            elif kind == "s":
                x = s(sp, (v,), ring)
            else:
                x = s_star(sp, (v,), ring)
            term = x if term is None else term * x
        total = total + term * c
    return total
