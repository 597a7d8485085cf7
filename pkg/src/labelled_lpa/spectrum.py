"""Tight filters in finite-type and eventually periodic form, and basic open sets.

A filter is a word together with one atom per level. Level n+1 determines
level n: it is the unique atom whose relative range under the next letter
contains the level n+1 atom, or nothing at level 0 when no member of the
family reaches it. Infinite words are stored as ``base + period^∞`` with
the chain stored for levels ``0 .. len(base)+len(period)-1``; the level
``len(base)+len(period)`` atom wraps back to level ``len(base)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Word
from .semigroup import ZERO, Triple, is_idempotent
from .space import LabelledSpace


class FilterError(ValueError):
    pass


@dataclass(frozen=True)
class TightFilter:
    kind: str  # "finite" or "periodic"
    base: Word
    period: Word
    chain: tuple  # atom masks; chain[0] may be None

    @property
    def finite(self) -> bool:
        return self.kind == "finite"

    @property
    def stored(self) -> int:
        return len(self.chain)

    def length(self) -> int | None:
        return len(self.base) if self.finite else None

    def letter(self, i: int) -> str:
        """Letter at 0-based position i of the filter's word."""
        b = len(self.base)
        if i < b:
            return self.base[i]
        if self.finite:
            raise IndexError(i)
        return self.period[(i - b) % len(self.period)]

    def level(self, n: int):
        if n < len(self.chain):
            return self.chain[n]
        if self.finite:
            raise IndexError(n)
        b = len(self.base)
        return self.chain[b + (n - b) % len(self.period)]

    def prefix(self, n: int) -> Word:
        return tuple(self.letter(i) for i in range(n))

    def has_prefix(self, w: Word) -> bool:
        if self.finite and len(w) > len(self.base):
            return False
        return all(self.letter(i) == a for i, a in enumerate(w))

    def sort_key(self, sp: LabelledSpace):
        g = sp.graph
        return (
            len(self.base) + len(self.period),
            self.kind,
            g.word_key(self.base),
            g.word_key(self.period),
            tuple(-1 if x is None else x for x in self.chain),
        )


@dataclass(frozen=True)
class BasicOpenSet:
    """V_e minus the union of V_{e_i}; ``e`` of None stands for the whole spectrum."""

    e: Triple | None
    excluded: tuple = field(default=())

    def __post_init__(self):
        for f in (self.e, *self.excluded):
            if f is not None and f is not ZERO and not is_idempotent(f):
                raise ValueError("basic open sets are built from idempotents")


def canonical(tf: TightFilter) -> TightFilter:
    """Shortest base and primitive period for periodic filters."""
    if tf.finite:
        return tf
    b, p = len(tf.base), len(tf.period)

    def cell(i):
        return (tf.level(i), tf.letter(i))

    q = p
    for d in range(1, p + 1):
        if p % d == 0 and all(cell(i) == cell(i + d) for i in range(b, b + p)):
            q = d
            break
    while b > 0 and cell(b - 1) == cell(b - 1 + q):
        b -= 1
    word = tf.prefix(b + q)
    chain = tuple(tf.level(i) for i in range(b + q))
    return TightFilter("periodic", word[:b], word[b:], chain)


def finite_filter(word, chain) -> TightFilter:
    return TightFilter("finite", tuple(word), (), tuple(chain))


def periodic_filter(base, period, chain) -> TightFilter:
    return canonical(TightFilter("periodic", tuple(base), tuple(period), tuple(chain)))


def backward_chain(sp: LabelledSpace, word: Word, top_atom: int) -> list:
    """Levels 0..len(word) of the complete family generated by ``top_atom``."""
    chain = [None] * (len(word) + 1)
    chain[-1] = top_atom
    for n in range(len(word) - 1, -1, -1):
        below = sp.back_atom(chain[n + 1], word[n])
        if below is None and n > 0:
            raise FilterError(f"no atom at level {n} below the given chain")
        chain[n] = below
        if below is None:
            break
    return chain


def validate_filter(sp: LabelledSpace, tf: TightFilter) -> TightFilter:
    g, atoms = sp.graph, set(sp.family.atoms)
    if tf.kind not in ("finite", "periodic"):
        raise FilterError(f"unknown kind {tf.kind!r}")
    for a in tf.base + tf.period:
        if a not in g.letter_pos:
            raise FilterError(f"unknown letter {a!r}")
    if tf.finite:
        if tf.period:
            raise FilterError("finite filters carry no period")
        need = len(tf.base) + 1
    else:
        if not tf.period:
            raise FilterError("periodic filters need a nonempty period")
        need = len(tf.base) + len(tf.period)
        if not sp.range_of(tf.base + tf.period * 2):
            raise FilterError("period word is not a labelled path after the base")
    if len(tf.chain) != need:
        raise FilterError(f"chain has {len(tf.chain)} levels, expected {need}")
    for n, X in enumerate(tf.chain):
        if X is None:
            # level 0 is also the wrap level of a periodic filter with empty base
            if n > 0 or not tf.base:
                raise FilterError(f"empty level {n} is only allowed at level 0 below a nonempty base")
            continue
        if X not in atoms:
            raise FilterError(f"level {n} entry is not an atom of the family")
        if X & sp.range_of(tf.prefix(n)) != X:
            raise FilterError(f"level {n} atom is not inside r(prefix)")
    top = len(tf.chain) - 1 if tf.finite else len(tf.chain)
    for n in range(top):
        upper = tf.level(n + 1)
        if sp.back_atom(upper, tf.letter(n)) != tf.chain[n]:
            raise FilterError(f"completeness violated at level {n}")
    return tf


def is_tight(sp: LabelledSpace, tf: TightFilter) -> bool:
    if not tf.finite:
        return True
    X = tf.chain[-1]
    # with finitely many letters only the sink clause can hold
    return X is not None and sp.sink_atom(X)


def filter_contains(tf: TightFilter, e) -> bool:
    if e is None:
        return True
    if e is ZERO:
        return False
    beta, A, _ = e
    if not tf.has_prefix(beta):
        return False
    X = tf.level(len(beta))
    return X is not None and X & A == X


def in_basic_set(tf: TightFilter, V: BasicOpenSet) -> bool:
    return filter_contains(tf, V.e) and not any(filter_contains(tf, f) for f in V.excluded)


def _starts(sp: LabelledSpace):
    """(word, chain) seeds: every atom at level 0, plus level-1 atoms no member reaches."""
    out = [((), (X,)) for X in sp.family.atoms]
    for a in sp.graph.alphabet:
        for X in sp.family.atoms_below(sp.range_of((a,))):
            if sp.back_atom(X, a) is None:
                out.append(((a,), (None, X)))
    return out


def _paths(sp: LabelledSpace, max_len: int):
    """Every (word, chain) path of the atom automaton with len(word) <= max_len."""
    stack = list(reversed(_starts(sp)))
    while stack:
        word, chain = stack.pop()
        yield word, chain
        if len(word) < max_len:
            for a, Y in reversed(sp.children(chain[-1])):
                stack.append((word + (a,), chain + (Y,)))


def enumerate_tight(sp: LabelledSpace, max_depth: int) -> list[TightFilter]:
    """All tight filters with description length at most ``max_depth``."""
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    found: dict[TightFilter, None] = {}
    for word, chain in _paths(sp, max_depth):
        last = chain[-1]
        if sp.sink_atom(last):
            found.setdefault(finite_filter(word, chain), None)
        n = len(word)
        for b in range(n):
            if chain[b] == last:
                found.setdefault(periodic_filter(word[:b], word[b:], chain[:n]), None)
    return sorted(found, key=lambda f: f.sort_key(sp))


def extend(sp: LabelledSpace, word: Word, chain) -> TightFilter:
    """A tight filter through the given path, continued by the first available step."""
    word, chain = tuple(word), tuple(chain)
    seen: dict[int, int] = {}
    while True:
        last = chain[-1]
        if sp.sink_atom(last):
            return finite_filter(word, chain)
        if last in seen:
            b = seen[last]
            n = len(word)
            return periodic_filter(word[:b], word[b:], chain[:n])
        seen[last] = len(word)
        a, Y = sp.children(last)[0]
        word += (a,)
        chain += (Y,)


def prefix_representatives(sp: LabelledSpace, depth: int) -> list[TightFilter]:
    """One tight filter for each possible truncation to levels 0..depth.

    Membership of any idempotent whose word has length <= depth depends only
    on that truncation, so this list sees every such basic set.
    """
    found: dict[TightFilter, None] = {}
    for word, chain in _paths(sp, depth):
        if len(word) >= depth or sp.sink_atom(chain[-1]):
            found.setdefault(extend(sp, word, chain), None)
    return sorted(found, key=lambda f: f.sort_key(sp))


def d_star(sp: LabelledSpace, max_word: int) -> int:
    return max_word + len(sp.family.atoms) * len(sp.graph.alphabet) + 1


def witness(sp: LabelledSpace, V: BasicOpenSet, filters=None):
    words = [f.alpha for f in (V.e, *V.excluded) if f is not None and f is not ZERO]
    if filters is None:
        filters = prefix_representatives(sp, max((len(w) for w in words), default=0))
    for tf in filters:
        if in_basic_set(tf, V):
            return tf
    return None


def basic_set_nonempty(sp: LabelledSpace, V: BasicOpenSet) -> bool:
    """Algebra verdict, cross-checked against a witness search."""
    from .algebra import OracleDisagreement, idempotent_element, normalize

    if V.e is None:
        raise ValueError("the whole spectrum is not a single basic set")
    if V.e is ZERO:
        verdict = False
    else:
        q = idempotent_element(sp, V.e)
        x = q
        for f in V.excluded:
            if f is ZERO:
                continue
            x = x * (q - q * idempotent_element(sp, f))
        verdict = bool(normalize(x).terms)
    found = witness(sp, V) is not None if V.e is not ZERO else False
    if verdict != found:
        raise OracleDisagreement(f"basic set emptiness: algebra says {verdict}, witness search says {found}")
    return verdict
