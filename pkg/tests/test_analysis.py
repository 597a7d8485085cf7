import random

import pytest

from labelled_lpa import graph_lpa as glpa
from labelled_lpa.algebra import equals, in_diagonal, normalize, p, unit_element
from labelled_lpa.analysis import (
    PreconditionError,
    from_graph_algebra,
    graph_lpa_compare,
    graph_to_labelled,
    labelled_to_directed,
    render,
    simplicity_dict,
    simplicity_report,
    stone_commutative_space,
    to_graph_algebra,
    ultragraph_to_labelled,
    unitality_report,
)
from labelled_lpa.family import SetFamily, powerset_family
from labelled_lpa.fixtures import fix1, g1, g2, random_element, random_left_resolving, topless
from labelled_lpa.graph import validate_graph
from labelled_lpa.space import LabelledSpace, SpaceError

from oracles import hs_closure


def random_directed(rng):
    n = rng.randint(1, 5)
    verts = tuple(f"v{i + 1}" for i in range(n))
    edges = tuple((rng.choice(verts), rng.choice(verts)) for _ in range(rng.randint(0, 7)))
    return glpa.DirectedGraph(verts, edges)


def test_simplicity_examples():
    assert simplicity_report(g1()).verdict
    rep = simplicity_report(g2())
    assert not rep.verdict and not rep.condition_L
    sp = g2()
    d = simplicity_dict(sp, rep)
    assert d["cycle_without_exit"] == {"word": "0", "set": "{v3}"}
    assert d["nontrivial_hereditary_saturated"] == ["{}", "{v3}"]
    z = simplicity_report(g1(), "Z")
    assert not z.verdict and not z.ring_is_field and z.condition_L


@pytest.mark.parametrize("sp", [fix1(), g1(), g2()], ids=["fix1", "g1", "g2"])
def test_hs_witness_matches_brute_force(sp):
    rep = simplicity_report(sp)
    trivial = all(hs_closure(sp, [X]) == sp.family.members for X in sp.family.atoms)
    assert rep.hereditary_saturated_trivial == trivial


@pytest.mark.parametrize("seed", range(25))
def test_simplicity_matches_classical_criterion(seed):
    dg = random_directed(random.Random(seed))
    sp = graph_to_labelled(dg)
    assert simplicity_report(sp).verdict == glpa.is_simple_graph_algebra(dg)


def test_classical_criterion_examples():
    loop = glpa.DirectedGraph(("v",), (("v", "v"),))
    assert not glpa.is_simple_graph_algebra(loop)
    rose = glpa.DirectedGraph(("v",), (("v", "v"), ("v", "v")))
    assert glpa.is_simple_graph_algebra(rose)
    line = glpa.DirectedGraph(("u", "w"), (("u", "w"),))
    assert glpa.is_simple_graph_algebra(line)
    two_sinks = glpa.DirectedGraph(("u", "w"), ())
    assert not glpa.is_simple_graph_algebra(two_sinks)


def test_graph_oracle_relations():
    dg = glpa.DirectedGraph(("u", "w"), (("u", "w"), ("u", "u")))
    u, w = glpa.vertex(dg, "u"), glpa.vertex(dg, "w")
    e0, e1 = glpa.edge(dg, 0), glpa.edge(dg, 1)
    assert glpa.is_zero(glpa.ghost(dg, 0) * e0 - w)
    assert glpa.is_zero(glpa.ghost(dg, 0) * e1)
    assert glpa.is_zero(u - e0 * glpa.ghost(dg, 0) - e1 * glpa.ghost(dg, 1))
    assert not glpa.is_zero(e0 * glpa.ghost(dg, 0))
    assert glpa.is_zero(u * w)


def test_conversion_examples():
    sp = graph_to_labelled(glpa.DirectedGraph(("u", "w"), (("u", "w"),)))
    assert len(sp.graph.alphabet) == 1 and len(sp.family.members) == 4
    us = ultragraph_to_labelled(["u", "x", "y"], [("u", ["x", "y"], "e")])
    assert sorted((us.graph.vertices[s], us.graph.vertices[d], a) for s, d, a in us.graph.edges) == [
        ("u", "x", "e"), ("u", "y", "e")]
    assert us.graph.mask(["x", "y"]) in us.family
    with pytest.raises(SpaceError):
        ultragraph_to_labelled(["u"], [("u", [], "e")])
    assert labelled_to_directed(sp).edges == (("u", "w"),)


def test_stone_commutative_space():
    fam = powerset_family(2)
    sp = stone_commutative_space(["x", "y"], fam)
    assert not sp.graph.edges
    rng = random.Random(5)
    for _ in range(50):
        x = random_element(sp, rng)
        y = random_element(sp, rng)
        assert in_diagonal(x)
        assert equals(x * y, y * x)


@pytest.mark.parametrize("sp", [g1(), fix1(powerset=True)], ids=["g1", "fix1-powerset"])
def test_graph_lpa_compare_examples(sp):
    ok, details = graph_lpa_compare(sp, pairs=100, samples=40)
    assert ok, details


def test_graph_lpa_compare_preconditions():
    g = validate_graph(["u", "v", "w"], [("u", "w", "a"), ("v", "w", "a")])
    with pytest.raises(PreconditionError):
        graph_lpa_compare(LabelledSpace(g, powerset_family(3)))
    with pytest.raises(PreconditionError):
        graph_lpa_compare(fix1())


def test_graph_maps_are_inverse_on_random_space():
    sp = random_left_resolving(random.Random(2))
    dg = labelled_to_directed(sp)
    rng = random.Random(4)
    for _ in range(30):
        x = random_element(sp, rng, max_word=2)
        assert equals(from_graph_algebra(sp, to_graph_algebra(dg, x)), x)


def test_unitality_examples():
    r = unitality_report(fix1())
    assert r["unital"] and r["top"] == "{w}" and r["F"] == ["a"]
    assert r["unit"] == "p{w} + s(a)*p{w}*s'(a)"
    assert r["covered_exactly_once"] and r["spectrum_size"] == 2
    r = unitality_report(g1())
    assert r["unital"] and r["top"] == "{v1,v2}" and r["F"] == []
    assert r["covered_exactly_once"]
    r = unitality_report(topless())
    assert not r["unital"] and len(r["maximal_members"]) == 2


@pytest.mark.parametrize("sp", [fix1(), g1(), g2()], ids=["fix1", "g1", "g2"])
def test_reported_unit_is_a_unit(sp):
    u = unit_element(sp)
    rng = random.Random(1)
    for _ in range(30):
        x = random_element(sp, rng)
        assert equals(u * x, x) and equals(x * u, x)
    top = p(sp, sp.family.top)
    assert not normalize(u * top - top).terms


def test_topless_family_is_well_formed():
    sp = topless()
    assert isinstance(sp.family, SetFamily) and sp.family.top is None


def test_render_formats():
    rep = {"b": True, "n": None, "xs": ["1", "2"], "d": {"k": 3}}
    assert render(rep, "text").splitlines() == ["b: true", "n: -", "xs: 1 2", "d.k: 3"]
    assert '"b": true' in render(rep, "json")
