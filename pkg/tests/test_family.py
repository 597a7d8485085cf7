import random

import pytest
from hypothesis import given, strategies as st

from labelled_lpa.family import (
    FamilyError,
    SetFamily,
    accommodating_closure,
    atoms_below,
    disjointify,
    powerset_family,
    restrict_to_word,
)
from labelled_lpa.fixtures import fix1, g1, random_normal_space

from oracles import closure


def test_closure_examples():
    f = fix1().graph
    assert accommodating_closure(f, []).members == frozenset({0, f.mask(["w"])})
    g = g1().graph
    assert accommodating_closure(g, [g.mask(["v1"])]).members == frozenset(range(4))
    assert accommodating_closure(g, range(4)) == powerset_family(2)


def test_atoms_below_examples():
    sp = g1()
    v1, v2 = sp.graph.mask(["v1"]), sp.graph.mask(["v2"])
    assert sorted(atoms_below(sp.family, v1 | v2)) == sorted([v1, v2])
    w = fix1().graph.mask(["w"])
    assert atoms_below(fix1().family, w) == [w]
    assert atoms_below(sp.family, 0) == []


def test_atoms_below_rejects_non_member():
    with pytest.raises(FamilyError):
        atoms_below(fix1().family, 1)


def test_disjointify_examples():
    fam = g1().family
    pieces, cover = disjointify(fam, [3, 1])
    assert sorted(pieces) == [1, 2]
    assert [sum(pieces[i] for i in c) for c in cover] == [3, 1]
    assert disjointify(fam, [1]) == ([1], [[0]])
    assert disjointify(fam, []) == ([], [])


def test_restrict_to_word_examples():
    f = fix1()
    assert restrict_to_word(f.family, f.graph, ("a",)).members == frozenset({0, 2})
    assert restrict_to_word(f.family, f.graph, ()) == f.family
    g = g1()
    assert restrict_to_word(g.family, g.graph, ("1",)).members == frozenset({0, 1})


def test_setfamily_rejects_unclosed():
    with pytest.raises(FamilyError):
        SetFamily(2, [0, 1, 3])


def random_graph(seed):
    return random_normal_space(random.Random(seed))


@given(st.integers(0, 10_000), st.lists(st.integers(1, 31), max_size=2))
def test_closure_matches_naive_saturation(seed, seeds):
    sp = random_graph(seed)
    g = sp.graph
    seeds = [s & g.full for s in seeds]
    assert accommodating_closure(g, seeds).members == frozenset(closure(g, seeds, len(g.vertices)))


@given(st.integers(0, 10_000))
def test_atoms_partition_every_member(seed):
    fam = random_graph(seed).family
    for A in fam.members:
        below = atoms_below(fam, A)
        union = 0
        for X in below:
            assert union & X == 0
            union |= X
        assert union == A


@given(st.integers(0, 10_000), st.data())
def test_disjointify_reproduces_inputs(seed, data):
    fam = random_graph(seed).family
    sets = data.draw(st.lists(st.sampled_from(sorted(fam.members)), max_size=4))
    pieces, cover = disjointify(fam, sets)
    for i, P in enumerate(pieces):
        assert P in fam and P
        for Q in pieces[i + 1:]:
            assert P & Q == 0
    for B, idx in zip(sets, cover):
        acc = 0
        for i in idx:
            acc |= pieces[i]
        assert acc == B
