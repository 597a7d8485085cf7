import itertools
import random
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from labelled_lpa.action import (
    DomainError,
    StonePartialAction,
    apply_action,
    build_from_stone_action,
    domain_set,
    from_pair,
    in_domain,
    inverse,
    multiply,
    positive,
    reduce_word,
    split,
    stone_equivariance_check,
)
from labelled_lpa.fixtures import fix1, g1, g2, random_normal_space, random_stone_action
from labelled_lpa.graph import enumerate_words
from labelled_lpa.semigroup import Triple
from labelled_lpa.spectrum import enumerate_tight, finite_filter, periodic_filter

A, A_INV, B_INV = ("a", 1), ("a", -1), ("b", -1)
W = 2
WORD_A = finite_filter(("a",), (None, W))
WORD_OMEGA = finite_filter((), (W,))


def test_reduce_examples():
    assert reduce_word([A, A_INV]) == ()
    assert split(reduce_word([A, B_INV])) == (("a",), ("b",))
    assert split(reduce_word([A_INV, ("b", 1)])) is None


def test_domain_examples():
    f = fix1()
    assert domain_set(f, (A,)).e == Triple(("a",), W, ("a",))
    assert domain_set(f, (A_INV,)).e == Triple((), W, ())
    g = g1()
    assert domain_set(g, from_pair(("0",), ("1",))).e == Triple(("0",), 1, ("0",))
    assert domain_set(g, ()).e is None
    assert domain_set(g, reduce_word([("0", -1), ("1", 1)])) is None


def test_action_examples():
    f = fix1()
    assert apply_action(f, (A_INV,), WORD_A) == WORD_OMEGA
    assert apply_action(f, (A,), WORD_OMEGA) == WORD_A
    assert apply_action(f, (), WORD_A) == WORD_A
    loop = periodic_filter((), ("1",), (1,))
    assert apply_action(g1(), (("1", 1),), loop) == loop
    with pytest.raises(DomainError):
        apply_action(f, (A,), WORD_A)


def group_words(sp, max_len):
    words = enumerate_words(sp.graph, max_len)
    out = set()
    for a, b in itertools.product(words, words):
        if len(a) + len(b) <= max_len:
            out.add(from_pair(a, b))
    return sorted(out)


@pytest.mark.parametrize("sp", [fix1(), g1(), g2()], ids=["fix1", "g1", "g2"])
def test_action_laws_on_fixtures(sp):
    fs = enumerate_tight(sp, 4)
    for t in group_words(sp, 3):
        for xi in fs:
            if not in_domain(sp, inverse(t), xi):
                continue
            eta = apply_action(sp, t, xi)
            assert in_domain(sp, t, eta)
            assert apply_action(sp, inverse(t), eta) == xi
            alpha, beta = split(t)
            step = apply_action(sp, inverse(positive(beta)), xi)
            assert apply_action(sp, positive(alpha), step) == eta


@given(st.integers(0, 10_000))
def test_action_laws_random(seed):
    sp = random_normal_space(random.Random(seed), max_vertices=4, max_edges=6)
    fs = enumerate_tight(sp, 3)
    for t in group_words(sp, 2):
        for xi in fs:
            if in_domain(sp, inverse(t), xi):
                assert apply_action(sp, inverse(t), apply_action(sp, t, xi)) == xi


@pytest.mark.parametrize("sp", [fix1(), g1(), g2()], ids=["fix1", "g1", "g2"])
def test_letter_domains_are_orthogonal(sp):
    fs = enumerate_tight(sp, 4)
    for a, b in itertools.combinations(sp.graph.alphabet, 2):
        for xi in fs:
            assert not (in_domain(sp, ((a, 1),), xi) and in_domain(sp, ((b, 1),), xi))


def test_multiply_is_group_product():
    t = reduce_word([A, B_INV])
    assert multiply(t, inverse(t)) == ()
    assert multiply((A,), (A_INV,)) == ()


def test_stone_examples():
    act = StonePartialAction(("x", "y"), {"a": {"x": "y"}})
    sp, f = build_from_stone_action(act)
    # x has no a-preimage, so it is the sink and carries the empty word
    assert f["x"] == finite_filter((), (sp.graph.mask(["x"]),))
    assert f["y"] == finite_filter(("a",), (sp.graph.mask(["y"]), sp.graph.mask(["x"])))
    assert stone_equivariance_check(act, sp, f) == (True, None)

    single = StonePartialAction(("x",), {})
    sp1, f1 = build_from_stone_action(single)
    assert not sp1.graph.edges and f1["x"] == finite_filter((), (1,))

    loop = StonePartialAction(("x",), {"a": {"x": "x"}})
    sp2, f2 = build_from_stone_action(loop)
    assert f2["x"] == periodic_filter((), ("a",), (1,))
    assert stone_equivariance_check(loop, sp2, f2)[0]


def test_stone_fault_injection():
    act = StonePartialAction(("x", "y"), {"a": {"x": "y"}})
    sp, f = build_from_stone_action(act)
    swapped = {"x": f["y"], "y": f["x"]}
    ok, why = stone_equivariance_check(act, sp, swapped)
    assert not ok and why


@pytest.mark.parametrize(
    "points, maps, msg",
    [
        (("x", "y"), {"a": {"x": "y"}, "b": {"y": "y"}}, "orthogonality"),
        (("x", "y"), {"a": {"x": "y", "y": "y"}}, "injective"),
        (("x",), {"a": {"x": "z"}}, "leaves"),
        (("x", "x"), {}, "duplicate"),
    ],
)
def test_stone_rejects(points, maps, msg):
    with pytest.raises(ValueError, match=msg):
        StonePartialAction(points, maps)


@given(st.integers(0, 10_000))
def test_random_stone_actions_round_trip(seed):
    act = random_stone_action(random.Random(seed))
    sp, f = build_from_stone_action(act)
    assert stone_equivariance_check(act, sp, f) == (True, None)


def test_filter_objects_are_immutable():
    with pytest.raises(Exception):
        WORD_A.base = ()
    assert replace(WORD_A) == WORD_A
