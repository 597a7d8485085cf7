"""The partial action of the free group on tight filters, and spaces built
from finite orthogonal partial actions on a point set."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .family import powerset_family
from .graph import Word, validate_graph
from .semigroup import Triple
from .space import LabelledSpace, check_left_resolving, check_normal
from .spectrum import (
    BasicOpenSet,
    FilterError,
    TightFilter,
    backward_chain,
    enumerate_tight,
    filter_contains,
    finite_filter,
    periodic_filter,
    validate_filter,
)

GroupWord = tuple[tuple[str, int], ...]  # (letter, +1 or -1)
IDENTITY: GroupWord = ()


class DomainError(ValueError):
    pass


def reduce_word(raw: Iterable[tuple[str, int]]) -> GroupWord:
    out: list[tuple[str, int]] = []
    for a, e in raw:
        if e not in (1, -1):
            raise ValueError("exponents must be +1 or -1")
        if out and out[-1] == (a, -e):
            out.pop()
        else:
            out.append((a, e))
    return tuple(out)


def positive(word: Word) -> GroupWord:
    return tuple((a, 1) for a in word)


def inverse(t: GroupWord) -> GroupWord:
    return tuple((a, -e) for a, e in reversed(t))


def multiply(s: GroupWord, t: GroupWord) -> GroupWord:
    return reduce_word(s + t)


def from_pair(alpha: Word, beta: Word) -> GroupWord:
    """The reduced form of alpha beta^{-1}."""
    return reduce_word(positive(alpha) + inverse(positive(beta)))


def split(t: GroupWord) -> tuple[Word, Word] | None:
    """(alpha, beta) with t = alpha beta^{-1}, or None when t has no such form."""
    i = 0
    while i < len(t) and t[i][1] == 1:
        i += 1
    if any(e == 1 for _, e in t[i:]):
        return None
    alpha = tuple(a for a, _ in t[:i])
    beta = tuple(a for a, _ in reversed(t[i:]))
    return alpha, beta


def fmt_group_word(sp: LabelledSpace | None, t: GroupWord) -> str:
    if not t:
        return "ω"
    return " ".join(a if e == 1 else f"{a}^-1" for a, e in t)


def domain_set(sp: LabelledSpace, t: GroupWord) -> BasicOpenSet | None:
    """V_t; ``None`` when it is empty."""
    if not t:
        return BasicOpenSet(None)
    parts = split(t)
    if parts is None:
        return None
    alpha, beta = parts
    A = sp.range_of(alpha) & sp.range_of(beta)
    if not A:
        return None
    return BasicOpenSet(Triple(alpha, A, alpha))


def in_domain(sp: LabelledSpace, t: GroupWord, tf: TightFilter) -> bool:
    V = domain_set(sp, t)
    return V is not None and filter_contains(tf, V.e)


def apply_action(sp: LabelledSpace, t: GroupWord, tf: TightFilter) -> TightFilter:
    """phi_t(tf): strip the beta prefix and prepend alpha, for t = alpha beta^{-1}."""
    if not t:
        return tf
    if not in_domain(sp, inverse(t), tf):
        raise DomainError("filter is outside the domain of the group element")
    alpha, beta = split(t)
    m = len(beta)
    if tf.finite:
        tail = tf.base[m:]
        old = list(tf.chain[m:])
        period: Word = ()
    else:
        b, p = len(tf.base), len(tf.period)
        if m <= b:
            tail = tf.base[m:]
            old = list(tf.chain[m:])
            period = tf.period
        else:
            s = (m - b) % p
            tail = ()
            period = tf.period[s:] + tf.period[:s]
            old = [tf.level(m + i) for i in range(p)]
    word = alpha + tail
    # new level |alpha|+n is the old atom cut down to r(alpha gamma_{1,n})
    fresh = []
    for n, X in enumerate(old):
        L = len(alpha) + n
        pre = word
        while len(pre) < L:
            pre += period
        Y = X & sp.range_of(pre[:L])
        if Y not in sp.family.atoms:
            raise AssertionError("action produced a level that is not an atom")
        fresh.append(Y)
    lower = backward_chain(sp, alpha, fresh[0])[:-1]
    chain = tuple(lower) + tuple(fresh)
    if tf.finite:
        out = finite_filter(word, chain)
    else:
        out = periodic_filter(word, period, chain)
    validate_filter(sp, out)
    return out


@dataclass(frozen=True)
class StonePartialAction:
    """Generator maps rho_a : U_{a^{-1}} -> U_a on a finite point set."""

    points: tuple[str, ...]
    maps: Mapping[str, Mapping[str, str]]

    def __post_init__(self):
        pts = set(self.points)
        if len(pts) != len(self.points):
            raise ValueError("duplicate point")
        images: dict[str, str] = {}
        for a, rho in self.maps.items():
            if not rho:
                raise ValueError(f"letter {a!r} acts with empty domain")
            for x, y in rho.items():
                if x not in pts or y not in pts:
                    raise ValueError(f"map {a}: {x}->{y} leaves the point set")
            if len(set(rho.values())) != len(rho):
                raise ValueError(f"map {a} is not injective")
            for y in rho.values():
                if y in images:
                    raise ValueError(f"orthogonality fails: {y} lies in the ranges of {images[y]} and {a}")
                images[y] = a

    def codomain(self, a: str) -> set[str]:
        return set(self.maps[a].values())

    def inverse_map(self, a: str) -> dict[str, str]:
        return {y: x for x, y in self.maps[a].items()}


def build_from_stone_action(act: StonePartialAction):
    """The labelled space with vertices X and an edge y -> rho_a^{-1}(y) labelled a
    for every y in U_a, with all subsets as the family; plus x -> tight filter."""
    letters = list(act.maps)
    edges = []
    for a in letters:
        inv = act.inverse_map(a)
        for y in act.points:
            if y in inv:
                edges.append((y, inv[y], a))
    g = validate_graph(act.points, edges, letters)
    sp = LabelledSpace(g, powerset_family(len(act.points)), name="stone")
    if not check_normal(sp) or not check_left_resolving(sp):
        raise AssertionError("space built from a partial action must be normal and left-resolving")
    f = {x: point_filter(act, g, x) for x in act.points}
    return sp, f


def point_filter(act: StonePartialAction, g, x: str) -> TightFilter:
    inv = {a: act.inverse_map(a) for a in act.maps}
    word: list[str] = []
    chain = [1 << g.index[x]]
    seen = {x: 0}
    cur = x
    while True:
        step = [a for a in act.maps if cur in inv[a]]
        if not step:
            return finite_filter(word, chain)
        a = step[0]
        cur = inv[a][cur]
        word.append(a)
        if cur in seen:
            b = seen[cur]
            return periodic_filter(word[:b], word[b:], chain)
        seen[cur] = len(word)
        chain.append(1 << g.index[cur])


def stone_equivariance_check(act: StonePartialAction, sp: LabelledSpace, f: Mapping[str, TightFilter]):
    """(True, None) or (False, reason)."""
    images = [f[x] for x in act.points]
    if len(set(images)) != len(images):
        return False, "point map is not injective"
    spectrum = set(enumerate_tight(sp, max(1, len(act.points))))
    if set(images) != spectrum:
        missing = sorted(spectrum - set(images), key=lambda t: t.sort_key(sp))
        extra = [t for t in images if t not in spectrum]
        return False, f"point map misses {missing[:1]} or hits non-spectrum {extra[:1]}"
    for a, rho in act.maps.items():
        for x in act.codomain(a):
            pre = act.inverse_map(a)[x]
            try:
                moved = apply_action(sp, ((a, -1),), f[x])
            except (DomainError, FilterError) as exc:
                return False, f"action of {a}^-1 undefined on f({x}): {exc}"
            if moved != f[pre]:
                return False, f"f(rho_{a}^-1({x})) != phi_{a}^-1(f({x}))"
    return True, None
