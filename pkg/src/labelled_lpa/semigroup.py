"""The inverse semigroup of triples (alpha, A, beta) attached to a labelled space."""

from __future__ import annotations

from typing import NamedTuple

from .graph import Word
from .space import LabelledSpace


class Triple(NamedTuple):
    alpha: Word
    A: int
    beta: Word


class _Zero:
    __slots__ = ()

    def __repr__(self):
        return "0"

    def __reduce__(self):
        return "ZERO"


ZERO = _Zero()

_interned: dict[Triple, Triple] = {}


def make_triple(sp: LabelledSpace, alpha: Word, A: int, beta: Word):
    """Validated triple; an empty set gives ZERO."""
    alpha, beta = tuple(alpha), tuple(beta)
    if A not in sp.family:
        raise ValueError("set is not a member of the family")
    if not A:
        return ZERO
    if A & sp.range_of(alpha) != A or A & sp.range_of(beta) != A:
        raise ValueError("set is not inside r(alpha) ∩ r(beta)")
    t = Triple(alpha, A, beta)
    return _interned.setdefault(t, t)


def product(sp: LabelledSpace, s, t):
    if s is ZERO or t is ZERO:
        return ZERO
    alpha, A, beta = s
    gamma, B, delta = t
    if gamma[: len(beta)] == beta:
        rest = gamma[len(beta):]
        C = sp.r(A, rest) & B
        out = Triple(alpha + rest, C, delta)
    elif beta[: len(gamma)] == gamma:
        rest = beta[len(gamma):]
        C = A & sp.r(B, rest)
        out = Triple(alpha, C, delta + rest)
    else:
        return ZERO
    if not C:
        return ZERO
    return _interned.setdefault(out, out)


def star(s):
    if s is ZERO:
        return ZERO
    return Triple(s.beta, s.A, s.alpha)


def is_idempotent(s) -> bool:
    return s is ZERO or s.alpha == s.beta


def natural_leq(sp: LabelledSpace, p, q) -> bool:
    """p <= q for idempotents: alpha = beta.alpha' and A ⊆ r(B, alpha')."""
    if not (is_idempotent(p) and is_idempotent(q)):
        raise ValueError("natural_leq expects idempotents")
    if p is ZERO:
        return True
    if q is ZERO:
        return False
    alpha, A, _ = p
    beta, B, _ = q
    if alpha[: len(beta)] != beta:
        return False
    return A & sp.r(B, alpha[len(beta):]) == A
