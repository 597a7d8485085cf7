"""Labelled spaces (E, L, B) and their structural predicates."""

from __future__ import annotations

from itertools import combinations

from .family import SetFamily, is_closed_under_ranges
from .graph import LabelledGraph, Word, letters_from, range_of, relative_range


class SpaceError(ValueError):
    """Raised when a graph/family pair is not a usable labelled space."""


class LabelledSpace:
    """A labelled graph together with an accommodating family of vertex sets."""

    __slots__ = ("graph", "family", "name", "_back", "_children")

    def __init__(self, graph: LabelledGraph, family: SetFamily, name: str = ""):
        if family.size != len(graph.vertices):
            raise SpaceError("family universe does not match the vertex set")
        self.graph = graph
        self.family = family
        self.name = name
        self._back: dict[tuple[int, str], int | None] = {}
        self._children: dict[int, tuple[tuple[str, int], ...]] = {}

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<LabelledSpace{label}: {self.graph!r}, {self.family!r}>"

    @property
    def atoms(self) -> tuple[int, ...]:
        return self.family.atoms

    @property
    def sinks(self) -> int:
        return self.graph.sinks

    def r(self, A: int, word: Word) -> int:
        return relative_range(self.graph, A, word)

    def range_of(self, word: Word) -> int:
        return range_of(self.graph, word)

    def sink_atom(self, X: int) -> bool:
        return X & self.graph.sinks == X

    def back_atom(self, X: int, a: str) -> int | None:
        """The unique atom Y with X inside r(Y, a), or None when no atom has it."""
        key = (X, a)
        if key in self._back:
            return self._back[key]
        found = [Y for Y in self.family.atoms if X & self.graph.step(Y, a) == X]
        if len(found) > 1:
            raise SpaceError("relative ranges of distinct atoms overlap; space is not weakly left-resolving")
        out = found[0] if found else None
        self._back[key] = out
        return out

    def children(self, X: int) -> tuple[tuple[str, int], ...]:
        """(letter, atom) pairs reachable from atom X in one step."""
        hit = self._children.get(X)
        if hit is None:
            hit = tuple(
                (a, Y)
                for a in self.graph.alphabet
                for Y in self.family.atoms_below(self.graph.step(X, a))
            )
            self._children[X] = hit
        return hit


def check_accommodating(sp: LabelledSpace) -> bool:
    fam, g = sp.family, sp.graph
    return all(range_of(g, (a,)) in fam for a in g.alphabet) and is_closed_under_ranges(fam, g)


def check_weakly_left_resolving(sp: LabelledSpace, exhaustive: bool = False):
    """Return (True, None) or (False, (A, B, a)) with r(A∩B,a) != r(A,a)∩r(B,a).

    Relative range is additive, so checking pairs of atoms suffices; the
    ``exhaustive`` flag runs the check over all pairs of members instead.
    """
    g = sp.graph
    pool = sorted(sp.family.members) if exhaustive else sp.family.atoms
    for a in g.alphabet:
        for A, B in combinations(pool, 2):
            if g.step(A & B, a) != g.step(A, a) & g.step(B, a):
                return False, (A, B, a)
    return True, None


def check_normal(sp: LabelledSpace) -> bool:
    fam = sp.family
    closed = all(A & ~B in fam for A in fam.members for B in fam.members)
    return closed and check_weakly_left_resolving(sp)[0]


def is_regular(sp: LabelledSpace, A: int) -> bool:
    """Nonzero and no nonzero member inside A ∩ sinks (finite graphs)."""
    if A not in sp.family:
        raise SpaceError("set is not a member of the family")
    if not A:
        return False
    return not any(sp.sink_atom(X) for X in sp.family.atoms_below(A))


def regular_sets(sp: LabelledSpace) -> list[int]:
    return sorted(A for A in sp.family.members if A and is_regular(sp, A))


def sink_split(sp: LabelledSpace, A: int) -> tuple[int, int]:
    """(A_snk, A_reg): the largest member of A inside the sinks, and the rest."""
    snk = 0
    for X in sp.family.atoms_below(A):
        if sp.sink_atom(X):
            snk |= X
    return snk, A & ~snk


def check_left_resolving(sp: LabelledSpace) -> bool:
    seen = set()
    for _, d, a in sp.graph.edges:
        if (d, a) in seen:
            return False
        seen.add((d, a))
    return True


def check_label_finite(sp: LabelledSpace) -> bool:
    # finitely many edges, so every vertex receives finitely many labels
    return True


def _hs_top(sp: LabelledSpace, M: int) -> int:
    """Largest member of the hereditary saturated closure generated by M.

    A subfamily closed under unions and sub-members is the set of members
    below its largest element, so the closure is carried as one mask.
    """
    g = sp.graph
    while True:
        grown = M
        for a in g.alphabet:
            grown |= g.step(grown, a)
        for X in sp.family.atoms:
            if X & grown != X and not sp.sink_atom(X):
                if all(g.step(X, a) & grown == g.step(X, a) for a in g.alphabet):
                    grown |= X
        if grown == M:
            return M
        M = grown


def hereditary_saturated_closure(sp: LabelledSpace, seeds) -> frozenset[int]:
    M = 0
    for A in seeds:
        if A not in sp.family:
            raise SpaceError("seed is not a member of the family")
        M |= A
    top = _hs_top(sp, M)
    return frozenset(A for A in sp.family.members if A & top == A)


def is_hereditary_saturated(sp: LabelledSpace, H) -> bool:
    """Direct re-check of every closure clause on an explicit subfamily."""
    H = set(H)
    fam, g = sp.family, sp.graph
    if 0 not in H or not H <= fam.members:
        return False
    for A in H:
        if any(g.step(A, a) not in H for a in g.alphabet):
            return False
        if any(B not in H for B in fam.members if B & A == B):
            return False
    if any(A | B not in H for A in H for B in H):
        return False
    for A in fam.members:
        if A and A not in H and is_regular(sp, A):
            if all(g.step(A, a) in H for a in g.alphabet):
                return False
    return True


def letters_of(sp: LabelledSpace, A: int) -> tuple[str, ...]:
    return letters_from(sp.graph, A)
