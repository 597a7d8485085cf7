import itertools
import random

import pytest
from hypothesis import given, strategies as st

from labelled_lpa.action import apply_action, from_pair, inverse, positive
from labelled_lpa.fixtures import fix1, g1, g2, random_normal_space
from labelled_lpa.groupoid import (
    Cycle,
    GroupoidElement,
    GroupoidError,
    compose,
    condition_L,
    cycle_has_exit,
    element,
    enumerate_cycles,
    enumerate_elements,
    fixed_part,
    invert,
    is_cycle,
    iso_interior_contains,
    isotropy_nontrivial,
    source,
)
from labelled_lpa.spectrum import enumerate_tight, filter_contains, finite_filter, periodic_filter
from labelled_lpa.semigroup import Triple

from oracles import all_words, exitless_cycles, is_cycle as bf_is_cycle

W = 2
WORD_A = finite_filter(("a",), (None, W))
WORD_OMEGA = finite_filter((), (W,))
LOOP1 = periodic_filter((), ("1",), (1,))
LOOP_V3 = periodic_filter((), ("0",), (4,))


def test_compose_and_invert_examples():
    f = fix1()
    g = element(f, (("a", 1),), WORD_A)
    h = element(f, (("a", -1),), WORD_OMEGA)
    assert compose(f, g, h) == GroupoidElement((), WORD_A)
    assert invert(f, GroupoidElement((), WORD_A)) == GroupoidElement((), WORD_A)
    with pytest.raises(GroupoidError):
        compose(f, g, GroupoidElement((), WORD_A))
    with pytest.raises(GroupoidError):
        element(f, (("a", 1),), WORD_OMEGA)


def test_cycle_examples():
    cs = {(c.word, c.C) for c in enumerate_cycles(g1())}
    assert (("1",), 1) in cs and (("0", "0"), 3) in cs
    assert enumerate_cycles(fix1()) == []
    assert (("0",), 4) in {(c.word, c.C) for c in enumerate_cycles(g2())}


def test_exit_examples():
    assert cycle_has_exit(g1(), Cycle(("1",), 1))
    assert not cycle_has_exit(g2(), Cycle(("0",), 4))
    assert cycle_has_exit(g1(), Cycle(("0", "0"), 1))


def test_condition_l_examples():
    assert condition_L(g1()) == (True, None)
    ok, c = condition_L(g2())
    assert not ok and (c.word, c.C) == (("0",), 4)
    assert condition_L(fix1()) == (True, None)


def test_isotropy_examples():
    assert isotropy_nontrivial(g1(), LOOP1)
    assert not isotropy_nontrivial(fix1(), WORD_A)
    assert isotropy_nontrivial(g1(), periodic_filter((), ("0", "0"), (1, 2)))


def test_interior_examples():
    assert not iso_interior_contains(g1(), GroupoidElement((("1", 1),), LOOP1))
    assert iso_interior_contains(g2(), GroupoidElement((("0", 1),), LOOP_V3))
    assert iso_interior_contains(g1(), GroupoidElement((), LOOP1))


@pytest.mark.parametrize("sp", [fix1(), g1(), g2()], ids=["fix1", "g1", "g2"])
def test_groupoid_axioms(sp):
    fs = enumerate_tight(sp, 3)
    els = enumerate_elements(sp, fs, 2)
    by_range = {}
    for g in els:
        by_range.setdefault(g.xi, []).append(g)
    for g in els:
        gi = invert(sp, g)
        assert compose(sp, g, gi) == GroupoidElement((), g.xi)
        assert compose(sp, gi, g) == GroupoidElement((), source(sp, g))
        for h in by_range.get(source(sp, g), [])[:4]:
            gh = compose(sp, g, h)
            for k in by_range.get(source(sp, h), [])[:4]:
                assert compose(sp, gh, k) == compose(sp, g, compose(sp, h, k))


@pytest.mark.parametrize("sp", [fix1(), g1(), g2()], ids=["fix1", "g1", "g2"])
def test_cycles_match_exhaustive_search(sp):
    found = {(c.word, c.C) for c in enumerate_cycles(sp, max_len=4)}
    expected = set()
    for w in all_words(sp.graph.alphabet, 4):
        C = fixed_part(sp, w)
        if C and bf_is_cycle(sp, w, C):
            primitive = not any(len(w) % d == 0 and w == w[:d] * (len(w) // d)
                                and fixed_part(sp, w[:d]) == C for d in range(1, len(w)))
            if primitive:
                expected.add((w, C))
    assert found == expected


@given(st.integers(0, 10_000))
def test_condition_l_matches_brute_force(seed):
    sp = random_normal_space(random.Random(seed), max_vertices=4, max_edges=6)
    ok, c = condition_L(sp)
    # an exitless cycle visits distinct members, so its length is at most #members
    bound = min(len(sp.family.members), 6)
    assert ok == (not exitless_cycles(sp, bound))
    if c is not None:
        assert is_cycle(sp, c) and not cycle_has_exit(sp, c)


@given(st.integers(0, 10_000))
def test_atom_cycle_check_equals_member_check(seed):
    sp = random_normal_space(random.Random(seed), max_vertices=4, max_edges=6)
    for w in all_words(sp.graph.alphabet, 3):
        for C in sp.family.members:
            assert is_cycle(sp, Cycle(w, C)) == bf_is_cycle(sp, w, C)


@pytest.mark.parametrize("sp", [g1(), g2()], ids=["g1", "g2"])
def test_exitless_cycles_fix_their_filters(sp):
    fs = enumerate_tight(sp, 5)
    for c in enumerate_cycles(sp):
        if cycle_has_exit(sp, c):
            continue
        e = Triple(c.word, c.C, c.word)
        for xi in fs:
            if filter_contains(xi, e):
                assert apply_action(sp, positive(c.word), xi) == xi
                assert apply_action(sp, inverse(positive(c.word)), xi) == xi


def test_isotropy_candidates_fix_their_filter():
    sp = g2()
    for xi in enumerate_tight(sp, 4):
        if xi.finite:
            continue
        b = len(xi.base)
        t = from_pair(xi.prefix(b) + xi.period, xi.prefix(b))
        assert apply_action(sp, inverse(t), xi) == xi
    assert list(itertools.islice(enumerate_tight(sp, 4), 1))
