"""Transformation-groupoid elements, cycles and exits, and isotropy."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .action import (
    GroupWord,
    apply_action,
    from_pair,
    in_domain,
    inverse,
    multiply,
)
from .graph import Word, letters_from
from .space import LabelledSpace
from .spectrum import TightFilter


class GroupoidError(ValueError):
    pass


@dataclass(frozen=True)
class GroupoidElement:
    t: GroupWord
    xi: TightFilter


@dataclass(frozen=True)
class Cycle:
    word: Word
    C: int


def element(sp: LabelledSpace, t: GroupWord, xi: TightFilter) -> GroupoidElement:
    if not in_domain(sp, t, xi):
        raise GroupoidError("filter is not in the domain of t")
    return GroupoidElement(t, xi)


def source(sp: LabelledSpace, g: GroupoidElement) -> TightFilter:
    return apply_action(sp, inverse(g.t), g.xi)


def compose(sp: LabelledSpace, g1: GroupoidElement, g2: GroupoidElement) -> GroupoidElement:
    if source(sp, g1) != g2.xi:
        raise GroupoidError("source of the first element is not the range of the second")
    return element(sp, multiply(g1.t, g2.t), g1.xi)


def invert(sp: LabelledSpace, g: GroupoidElement) -> GroupoidElement:
    return GroupoidElement(inverse(g.t), source(sp, g))


# -- cycles ---------------------------------------------------------------

def _is_power_of(word: Word, d: int) -> bool:
    return len(word) % d == 0 and word == word[:d] * (len(word) // d)


def fixed_part(sp: LabelledSpace, word: Word) -> int:
    """Largest C with r(B, word) = B for all members B ⊆ C.

    Relative range is additive over disjoint atoms, so C is the union of
    the atoms fixed by the word.
    """
    C = 0
    for X in sp.family.atoms:
        if sp.r(X, word) == X:
            C |= X
    return C


def is_cycle(sp: LabelledSpace, c: Cycle) -> bool:
    if not c.word or not c.C or c.C not in sp.family:
        return False
    return all(sp.r(X, c.word) == X for X in sp.family.atoms_below(c.C))


def enumerate_cycles(sp: LabelledSpace, max_len: int | None = None) -> list[Cycle]:
    """Cycles with maximal C, one primitive word per reachable range assignment.

    The search state is the tuple (r(X, w) for every atom X); it lives in a
    finite set, so the breadth-first search terminates. With ``max_len``
    every primitive word up to that length is reported instead.
    """
    atoms = sp.family.atoms
    g = sp.graph
    out: list[Cycle] = []

    def emit(word: Word, state) -> None:
        C = 0
        for X, img in zip(atoms, state):
            if img == X:
                C |= X
        if not C:
            return
        for d in range(1, len(word)):
            if _is_power_of(word, d) and fixed_part(sp, word[:d]) == C:
                return
        out.append(Cycle(word, C))

    start = tuple(atoms)
    queue = deque([((), start)])
    seen: set = set()
    while queue:
        word, state = queue.popleft()
        if max_len is not None and len(word) >= max_len:
            continue
        for a in g.alphabet:
            nxt = tuple(g.step(S, a) for S in state)
            if not any(nxt):
                continue
            w = word + (a,)
            if max_len is None:
                if nxt in seen:
                    continue
                seen.add(nxt)
            emit(w, nxt)
            queue.append((w, nxt))
    return out


def cycle_has_exit(sp: LabelledSpace, c: Cycle) -> bool:
    """Some atom along the cycle emits a letter set other than {next letter}."""
    n = len(c.word)
    for k in range(n + 1):
        S = sp.r(c.C, c.word[:k])
        want = (c.word[k % n],)
        for Y in sp.family.atoms_below(S):
            if letters_from(sp.graph, Y) != want:
                return True
    return False


def exitless_cycle_at(sp: LabelledSpace, X: int) -> Cycle | None:
    """A cycle without exits through atom X, if one exists.

    Along such a cycle every atom at each step emits only the next letter,
    so the letters are forced and the walk is deterministic.
    """
    S = X
    word: list[str] = []
    seen = set()
    while True:
        letters = {letters_from(sp.graph, Y) for Y in sp.family.atoms_below(S)}
        if len(letters) != 1:
            return None
        (ls,) = letters
        if len(ls) != 1:
            return None
        word.append(ls[0])
        S = sp.graph.step(S, ls[0])
        if S == X:
            return Cycle(tuple(word), X)
        if S in seen or not S:
            return None
        seen.add(S)


def condition_L(sp: LabelledSpace):
    """(True, None) when every cycle has an exit, else (False, exitless cycle)."""
    for X in sp.family.atoms:
        c = exitless_cycle_at(sp, X)
        if c is not None:
            return False, c
    return True, None


# -- isotropy -------------------------------------------------------------

def isotropy_nontrivial(sp: LabelledSpace, xi: TightFilter) -> bool:
    if xi.finite:
        return False
    b, p = len(xi.base), len(xi.period)
    for m in range(b, b + p):
        rot = tuple(xi.letter(m + i) for i in range(p))
        X = xi.level(m)
        if not X & sp.r(X, rot):
            return False
    return True


def iso_interior_contains(sp: LabelledSpace, g: GroupoidElement) -> bool:
    """Is g in the interior of the isotropy bundle?

    Besides units, the interior is covered by {beta gamma^{±1} beta^{-1}} x
    V_(beta, C, beta) with (gamma, C) a cycle without exits. Shifting beta by
    whole periods does not change these sets, so beta ranges over one period.
    """
    if not g.t:
        return True
    xi = g.xi
    if xi.finite:
        return False
    b, p = len(xi.base), len(xi.period)
    for m in range(b, b + p):
        beta = xi.prefix(m)
        rot = tuple(xi.letter(m + i) for i in range(p))
        X = xi.level(m)
        for k in range(1, len(g.t) + 1):
            gamma = rot * k
            t_plus = from_pair(beta + gamma, beta)
            if g.t not in (t_plus, inverse(t_plus)):
                continue
            c = Cycle(gamma, X)
            if is_cycle(sp, c) and not cycle_has_exit(sp, c):
                return True
    return False


def isotropy_candidates(xi: TightFilter) -> list[GroupWord]:
    """beta gamma^{±1} beta^{-1} for the decompositions of a periodic word."""
    if xi.finite:
        return []
    b, p = len(xi.base), len(xi.period)
    out = []
    for m in range(b, b + p):
        beta = xi.prefix(m)
        gamma = tuple(xi.letter(m + i) for i in range(p))
        t = from_pair(beta + gamma, beta)
        out += [t, inverse(t)]
    return out


def enumerate_elements(sp: LabelledSpace, filters, max_len: int) -> list[GroupoidElement]:
    """All (t, xi) with reduced t = alpha beta^{-1} of length <= max_len, plus
    the isotropy candidates of each periodic filter."""
    from .graph import enumerate_words

    words = enumerate_words(sp.graph, max_len)
    out: dict[GroupoidElement, None] = {}
    for xi in filters:
        for alpha in words:
            for beta in words:
                if len(alpha) + len(beta) > max_len:
                    continue
                if alpha and beta and alpha[-1] == beta[-1]:
                    continue
                t = from_pair(alpha, beta)
                if in_domain(sp, t, xi):
                    out.setdefault(GroupoidElement(t, xi), None)
        for t in isotropy_candidates(xi):
            if in_domain(sp, t, xi):
                out.setdefault(GroupoidElement(t, xi), None)
    return list(out)

