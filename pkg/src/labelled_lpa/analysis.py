"""Decision reports, conversions from other graph-like objects, and the
comparison against ordinary Leavitt path algebras."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from . import graph_lpa as glpa
from .algebra import (
    Element,
    NonUnital,
    normalize,
    realize,
    relation_instances,
    unit_element,
    unit_letters,
    zero,
    format_element,
    make_term,
)
from .fixtures import random_element
from .family import SetFamily, accommodating_closure, powerset_family
from .graph import Word, enumerate_words, validate_graph
from .groupoid import Cycle, condition_L
from .semigroup import Triple
from .space import LabelledSpace, SpaceError, check_left_resolving, hereditary_saturated_closure
from .spectrum import enumerate_tight, filter_contains


# -- simplicity ---------------------------------------------------------------

@dataclass(frozen=True)
class SimplicityReport:
    ring_is_field: bool
    condition_L: bool
    cycle_witness: Cycle | None
    hereditary_saturated_trivial: bool
    hs_witness: frozenset | None

    @property
    def verdict(self) -> bool:
        return self.ring_is_field and self.condition_L and self.hereditary_saturated_trivial


def simplicity_report(sp: LabelledSpace, ring: str = "Q") -> SimplicityReport:
    okL, cyc = condition_L(sp)
    everything = sp.family.members
    witness = None
    for X in sp.family.atoms:
        H = hereditary_saturated_closure(sp, [X])
        if H != everything:
            witness = H
            break
    return SimplicityReport(ring == "Q", okL, cyc, witness is None, witness)


def simplicity_dict(sp: LabelledSpace, rep: SimplicityReport) -> dict:
    g = sp.graph
    cyc = None
    if rep.cycle_witness is not None:
        cyc = {"word": g.fmt_word(rep.cycle_witness.word), "set": g.fmt_set(rep.cycle_witness.C)}
    hs = None
    if rep.hs_witness is not None:
        hs = [g.fmt_set(A) for A in sorted(rep.hs_witness, key=lambda A: (bin(A).count("1"), A))]
    return {
        "verdict": rep.verdict,
        "ring_is_field": rep.ring_is_field,
        "condition_L": rep.condition_L,
        "cycle_without_exit": cyc,
        "hereditary_saturated_trivial": rep.hereditary_saturated_trivial,
        "nontrivial_hereditary_saturated": hs,
    }


# -- conversions ----------------------------------------------------------------

def graph_to_labelled(g: glpa.DirectedGraph, names=None) -> LabelledSpace:
    """Identity labelling: every edge is its own letter; all vertex subsets."""
    names = list(names or (f"e{i + 1}" for i in range(len(g.edges))))
    if len(set(names)) != len(names) or len(names) != len(g.edges):
        raise ValueError("edge names must be distinct, one per edge")
    edges = [(s, r, n) for (s, r), n in zip(g.edges, names)]
    lg = validate_graph(g.vertices, edges, names)
    return LabelledSpace(lg, powerset_family(len(g.vertices)), name="graph")


def labelled_to_directed(sp: LabelledSpace) -> glpa.DirectedGraph:
    g = sp.graph
    return glpa.DirectedGraph(tuple(g.vertices), tuple((g.vertices[s], g.vertices[d]) for s, d, _ in g.edges))


def ultragraph_to_labelled(vertices, ultraedges) -> LabelledSpace:
    """``ultraedges`` is a list of (source, range vertices, name).

    Each ultraedge becomes one edge per range vertex, all carrying its name;
    the family is generated by the singletons and the ranges.
    """
    edges = []
    for src, rng, name in ultraedges:
        if not rng:
            raise SpaceError(f"ultraedge {name} has empty range")
        edges += [(src, v, name) for v in rng]
    g = validate_graph(vertices, edges, [n for _, _, n in ultraedges])
    seeds = [g.mask([v]) for v in g.vertices] + [g.mask(r) for _, r, _ in ultraedges]
    return LabelledSpace(g, accommodating_closure(g, seeds), name="ultragraph")


def stone_commutative_space(points, fam: SetFamily) -> LabelledSpace:
    """The edgeless space over ``points`` carrying ``fam``."""
    g = validate_graph(points, [], [])
    return LabelledSpace(g, fam, name="stone-commutative")


# -- comparison with the ordinary Leavitt path algebra ----------------------------

class PreconditionError(ValueError):
    pass


def _graph_poly(dg: glpa.DirectedGraph, sp: LabelledSpace, poly) -> glpa.GraphLPAElement:
    g = sp.graph
    total = glpa.GraphLPAElement(dg)
    for c, gens in poly:
        term = None
        for kind, v in gens:
            if kind == "p":
                x = glpa.GraphLPAElement(dg)
                for name in g.names(v):
                    x = x + glpa.vertex(dg, name)
            else:
                x = glpa.GraphLPAElement(dg)
                for e, (_, _, a) in enumerate(g.edges):
                    if a == v:
                        x = x + glpa.edge(dg, e)
                if kind == "t":
                    x = x.star()
            term = x if term is None else term * x
        total = total + term * Fraction(c)
    return total


def to_graph_algebra(dg: glpa.DirectedGraph, x: Element) -> glpa.GraphLPAElement:
    """Image under p_A -> sum of the vertices of A, s_a -> sum of the a-labelled edges."""
    poly = []
    for (alpha, beta, A), c in x.terms.items():
        gens = tuple(("s", a) for a in alpha) + (("p", A),) + tuple(("t", a) for a in reversed(beta))
        poly.append((c, gens))
    return _graph_poly(dg, x.space, poly)


def from_graph_algebra(sp: LabelledSpace, y: glpa.GraphLPAElement, ring: str = "Q") -> Element:
    """Inverse map: v -> p_{v}, e -> s_{label(e)} p_{r(e)}."""
    g = sp.graph
    out = zero(sp, ring)
    for (mu, nu), c in y.terms.items():
        v = glpa.path_end(y.graph, mu)
        term = make_term(sp, 1, (), g.mask([v]), (), ring)
        for e in reversed(mu[1]):
            term = _edge(sp, e, ring) * term
        for e in reversed(nu[1]):
            term = term * _edge_star(sp, e, ring)
        out = out + term * c
    return out


def _edge(sp: LabelledSpace, e: int, ring: str) -> Element:
    g = sp.graph
    _, d, a = g.edges[e]
    return make_term(sp, 1, (a,), 1 << d, (), ring)


def _edge_star(sp: LabelledSpace, e: int, ring: str) -> Element:
    g = sp.graph
    _, d, a = g.edges[e]
    return make_term(sp, 1, (), 1 << d, (a,), ring)


def random_graph_element(dg: glpa.DirectedGraph, rng: random.Random, max_len: int = 2,
                         max_terms: int = 3) -> glpa.GraphLPAElement:
    paths = [(v, ()) for v in dg.vertices]
    frontier = list(paths)
    for _ in range(max_len):
        frontier = [(v, es + (e,)) for v, es in frontier for e in dg.out_edges(glpa.path_end(dg, (v, es)))]
        paths += frontier
    by_end: dict[str, list] = {}
    for pth in paths:
        by_end.setdefault(glpa.path_end(dg, pth), []).append(pth)
    out = glpa.GraphLPAElement(dg)
    for _ in range(rng.randint(1, max_terms)):
        mu = rng.choice(paths)
        nu = rng.choice(by_end[glpa.path_end(dg, mu)])
        out = out + glpa.GraphLPAElement(dg, {(mu, nu): rng.choice([-2, -1, 1, 2, Fraction(1, 2)])})
    return out


def graph_lpa_compare(sp: LabelledSpace, seed: int = 0, pairs: int = 200, samples: int = 100,
                      max_word: int = 2):
    """(ok, details) for the isomorphism with the ordinary graph algebra."""
    if not check_left_resolving(sp):
        raise PreconditionError("labelled graph is not left-resolving")
    if not sp.family.is_powerset():
        raise PreconditionError("family is not the set of all vertex subsets")
    rng = random.Random(seed)
    dg = labelled_to_directed(sp)
    words = enumerate_words(sp.graph, max_word)
    details = {"relations": True, "multiplicative": True, "zero_preserving": True, "failure": None}

    def fail(key, msg):
        details[key] = False
        if details["failure"] is None:
            details["failure"] = msg

    for label, lhs, rhs in relation_instances(sp):
        if not glpa.is_zero(_graph_poly(dg, sp, lhs) - _graph_poly(dg, sp, rhs)):
            fail("relations", f"relation {label} fails for the images")
            break
    for _ in range(pairs):
        x = random_element(sp, rng, max_word=max_word, words=words)
        y = random_element(sp, rng, max_word=max_word, words=words)
        lhs = to_graph_algebra(dg, x * y)
        rhs = to_graph_algebra(dg, x) * to_graph_algebra(dg, y)
        if not glpa.is_zero(lhs - rhs):
            fail("multiplicative", f"image of {format_element(x)} times {format_element(y)} differs")
            break
    rels = relation_instances(sp)
    for _ in range(samples):
        # an element that is zero in the labelled algebra, padded with noise
        x = random_element(sp, rng, max_word=max_word, words=words)
        _, lhs, rhs = rng.choice(rels)
        u = random_element(sp, rng, max_word=max_word, words=words)
        v = random_element(sp, rng, max_word=max_word, words=words)
        z = u * (realize(sp, lhs) - realize(sp, rhs)) * v
        for cand in (x, z, x + z):
            a = not normalize(cand).terms
            b = glpa.is_zero(to_graph_algebra(dg, cand))
            if a != b:
                fail("zero_preserving", f"{format_element(cand)}: labelled zero {a}, image zero {b}")
        y = random_graph_element(dg, rng)
        back = from_graph_algebra(sp, y)
        if glpa.is_zero(y) != (not normalize(back).terms):
            fail("zero_preserving", "inverse map changes zero-ness")
        if not glpa.is_zero(to_graph_algebra(dg, back) - y):
            fail("zero_preserving", "maps are not mutually inverse")
    ok = details["relations"] and details["multiplicative"] and details["zero_preserving"]
    return ok, details


# -- unitality ------------------------------------------------------------------------

def unitality_report(sp: LabelledSpace, depth: int = 4, ring: str = "Q") -> dict:
    g = sp.graph
    fam = sp.family
    if fam.top is None:
        try:
            unit_element(sp, ring)
        except NonUnital as exc:
            return {
                "unital": False,
                "top": None,
                "maximal_members": [g.fmt_set(A) for A in exc.witness],
            }
    I = fam.top
    F = unit_letters(sp)
    pieces: list[tuple[Word, int]] = [((), I)]
    for a in F:
        pieces.append(((a,), sp.range_of((a,)) & ~sp.r(I, (a,))))
    spectrum = enumerate_tight(sp, depth)
    counts = [sum(filter_contains(tf, Triple(w, A, w)) for w, A in pieces) for tf in spectrum]
    return {
        "unital": True,
        "top": g.fmt_set(I),
        "F": [g.fmt_word((a,)) for a in F],
        "unit": format_element(unit_element(sp, ring)),
        "certificate": [f"V({g.fmt_word(w)},{g.fmt_set(A)},{g.fmt_word(w)})" for w, A in pieces],
        "spectrum_size": len(spectrum),
        "covered_exactly_once": all(c == 1 for c in counts),
    }


# -- output ------------------------------------------------------------------------

def render(report: dict, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)
    lines = []

    def walk(prefix, d):
        for k, v in d.items():
            if isinstance(v, dict):
                walk(f"{prefix}{k}.", v)
            else:
                emit(prefix + k, v)

    def emit(key, v):
        if isinstance(v, bool):
            v = "true" if v else "false"
        elif v is None:
            v = "-"
        elif isinstance(v, (list, tuple)):
            items = [str(i) for i in v]
            if any(" " in i for i in items):
                lines.append(f"{key}:\n" + "\n".join("  " + i for i in items))
                return
            v = " ".join(items) if items else "(none)"
        elif isinstance(v, str) and "\n" in v:
            body = "\n".join("  " + ln for ln in v.rstrip("\n").split("\n"))
            lines.append(f"{key}:\n{body}")
            return
        lines.append(f"{key}: {v}")

    walk("", report)
    return "\n".join(lines)
