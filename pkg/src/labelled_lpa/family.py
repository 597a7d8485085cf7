"""Finite Boolean families of vertex sets.

A family closed under union, intersection and relative complement is a
finite Boolean ring, so it is determined by its atoms (minimal nonzero
members) and every member is the union of the atoms below it. Ultrafilters
of such a family are principal and are stored as their atoms.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .graph import LabelledGraph, Word, range_of, relative_range


class FamilyError(ValueError):
    pass


def _refine(sets: Iterable[int], size: int) -> list[int]:
    """Signature classes of the vertices covered by ``sets``."""
    sets = [s for s in sets if s]
    classes: dict[tuple[bool, ...], int] = {}
    for i in range(size):
        bit = 1 << i
        sig = tuple(bool(s & bit) for s in sets)
        if any(sig):
            classes[sig] = classes.get(sig, 0) | bit
    return sorted(classes.values())


def _unions(atoms: Sequence[int]) -> frozenset[int]:
    members = {0}
    for X in atoms:
        members |= {m | X for m in members}
    return frozenset(members)


class SetFamily:
    """A finite family of vertex sets over a universe of ``size`` vertices.

    With ``check`` on, the family must contain the empty set and be closed
    under pairwise union, intersection and relative complement.
    """

    __slots__ = ("size", "members", "atoms", "top", "_below")

    def __init__(self, size: int, members: Iterable[int], check: bool = True):
        self.size = size
        self.members = frozenset(members) | {0}
        nonzero = sorted(m for m in self.members if m)
        self.atoms = tuple(
            m for m in nonzero if not any(o != m and o & m == o for o in nonzero)
        )
        union = 0
        for m in self.members:
            union |= m
        self.top = union if union in self.members else None
        self._below: dict[int, tuple[int, ...]] = {}
        if check:
            bad = self.closure_violation()
            if bad is not None:
                raise FamilyError(f"family not closed: {bad}")

    @classmethod
    def from_atoms(cls, size: int, atoms: Sequence[int]) -> "SetFamily":
        return cls(size, _unions(atoms), check=False)

    def closure_violation(self):
        """First (op, A, B) whose result leaves the family, or None."""
        ms = sorted(self.members)
        for A, B in combinations(ms, 2):
            for op, C in (("union", A | B), ("intersection", A & B),
                          ("difference", A & ~B), ("difference", B & ~A)):
                if C not in self.members:
                    return (op, A, B)
        return None

    def __contains__(self, A: int) -> bool:
        return A in self.members

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return isinstance(other, SetFamily) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"SetFamily({len(self.members)} members, {len(self.atoms)} atoms)"

    def atoms_below(self, A: int) -> tuple[int, ...]:
        hit = self._below.get(A)
        if hit is None:
            hit = tuple(X for X in self.atoms if X & A == X)
            self._below[A] = hit
        return hit

    def is_powerset(self) -> bool:
        return len(self.atoms) == self.size and all(
            X & (X - 1) == 0 for X in self.atoms)


def powerset_family(size: int) -> SetFamily:
    return SetFamily.from_atoms(size, [1 << i for i in range(size)])


def accommodating_closure(g: LabelledGraph, seeds: Iterable[int] = ()) -> SetFamily:
    """Least family containing the seeds and every r(a), closed under the
    Boolean ring operations and under A -> r(A, a) for every letter."""
    sets = [s for s in seeds if s]
    sets += [range_of(g, (a,)) for a in g.alphabet]
    n = len(g.vertices)
    while True:
        atoms = _refine(sets, n)
        covered = 0
        for X in atoms:
            covered |= X
        fresh = []
        for X in atoms:
            for a in g.alphabet:
                R = g.step(X, a)
                if R & ~covered or any(0 != R & Y != Y for Y in atoms):
                    fresh.append(R)
        if not fresh:
            return SetFamily.from_atoms(n, atoms)
        sets.extend(fresh)


def atoms_below(fam: SetFamily, A: int) -> list[int]:
    if A not in fam:
        raise FamilyError("set is not a member of the family")
    return list(fam.atoms_below(A))


def disjointify(fam: SetFamily, sets: Sequence[int]) -> tuple[list[int], list[list[int]]]:
    """Pairwise-disjoint members refining ``sets``.

    Returns the pieces and, for every input, the indices of the pieces whose
    union it is.
    """
    for s in sets:
        if s not in fam:
            raise FamilyError("set is not a member of the family")
    pieces = _refine(sets, fam.size)
    cover = [[i for i, C in enumerate(pieces) if C & s == C] for s in sets]
    return pieces, cover


def restrict_to_word(fam: SetFamily, g: LabelledGraph, word: Word) -> SetFamily:
    """The Boolean algebra of members inside r(word)."""
    R = range_of(g, word)
    return SetFamily(fam.size, (m for m in fam.members if m & R == m), check=False)


def is_closed_under_ranges(fam: SetFamily, g: LabelledGraph) -> bool:
    return all(relative_range(g, A, (a,)) in fam for A in fam.members for a in g.alphabet)
