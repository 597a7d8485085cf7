"""Ordinary Leavitt path algebras of finite directed graphs.

This is a separate implementation used to cross-check the labelled algebra.
A monomial is a pair of paths (mu, nu) ending at a common vertex, stored as
(start vertex, edge ids). The normal form fixes one special out-edge e_v per
non-sink vertex v and rewrites every mu' e_v e_v^* nu'^* as
mu' nu'^* - sum over the other out-edges f of v of mu' f f^* nu'^*. Monomials
with no such tail form a linear basis, so an element is zero iff its reduced
form is empty.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian


@dataclass(frozen=True)
class DirectedGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]  # edge id -> (source, range)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex")
        vs = set(self.vertices)
        for s, r in self.edges:
            if s not in vs or r not in vs:
                raise ValueError(f"edge {s}->{r} uses an unknown vertex")

    def src(self, e: int) -> str:
        return self.edges[e][0]

    def rng(self, e: int) -> str:
        return self.edges[e][1]

    def out_edges(self, v: str) -> list[int]:
        return [e for e, (s, _) in enumerate(self.edges) if s == v]

    def sinks(self) -> set[str]:
        return {v for v in self.vertices if not self.out_edges(v)}


Path = tuple[str, tuple[int, ...]]


def path_end(g: DirectedGraph, path: Path) -> str:
    v, es = path
    return g.rng(es[-1]) if es else v


class GraphLPAElement:
    """Finite combination of monomials mu nu^* with exact rational coefficients."""

    __slots__ = ("graph", "terms")

    def __init__(self, graph: DirectedGraph, terms=None):
        self.graph = graph
        self.terms: dict[tuple[Path, Path], Fraction] = {}
        for k, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[k] = self.terms.get(k, Fraction(0)) + c
        self.terms = {k: c for k, c in self.terms.items() if c}

    def __add__(self, other):
        out = defaultdict(Fraction, self.terms)
        for k, c in other.terms.items():
            out[k] += c
        return GraphLPAElement(self.graph, out)

    def __neg__(self):
        return GraphLPAElement(self.graph, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, GraphLPAElement):
            return GraphLPAElement(self.graph, {k: c * other for k, c in self.terms.items()})
        out: dict = defaultdict(Fraction)
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = _mono_product(k1, k2)
                if k is not None:
                    out[k] += c1 * c2
        return GraphLPAElement(self.graph, out)

    __rmul__ = __mul__

    def star(self):
        return GraphLPAElement(self.graph, {(nu, mu): c for (mu, nu), c in self.terms.items()})

    def __repr__(self):
        return f"GraphLPAElement({self.terms!r})"


def _is_prefix(p: Path, q: Path) -> bool:
    return p[0] == q[0] and q[1][: len(p[1])] == p[1]


def _mono_product(k1, k2):
    (mu1, nu1), (mu2, nu2) = k1, k2
    if _is_prefix(nu1, mu2):
        rest = mu2[1][len(nu1[1]):]
        return (mu1[0], mu1[1] + rest), nu2
    if _is_prefix(mu2, nu1):
        rest = nu1[1][len(mu2[1]):]
        return mu1, (nu2[0], nu2[1] + rest)
    return None


def vertex(g: DirectedGraph, v: str) -> GraphLPAElement:
    p = (v, ())
    return GraphLPAElement(g, {(p, p): 1})


def edge(g: DirectedGraph, e: int) -> GraphLPAElement:
    return GraphLPAElement(g, {((g.src(e), (e,)), (g.rng(e), ())): 1})


def ghost(g: DirectedGraph, e: int) -> GraphLPAElement:
    return edge(g, e).star()


def special_edges(g: DirectedGraph) -> dict[str, int]:
    return {v: out[0] for v in g.vertices if (out := g.out_edges(v))}


def reduce(x: GraphLPAElement) -> GraphLPAElement:
    """Rewrite away every special tail e_v e_v^*; the result is the basis expansion."""
    g = x.graph
    special = special_edges(g)
    todo = dict(x.terms)
    done: dict = defaultdict(Fraction)
    while todo:
        (mu, nu), c = todo.popitem()
        if mu[1] and nu[1] and mu[1][-1] == nu[1][-1] and special.get(g.src(mu[1][-1])) == mu[1][-1]:
            e = mu[1][-1]
            v = g.src(e)
            m2, n2 = (mu[0], mu[1][:-1]), (nu[0], nu[1][:-1])
            todo[(m2, n2)] = todo.get((m2, n2), Fraction(0)) + c
            for f in g.out_edges(v):
                if f == e:
                    continue
                k = ((m2[0], m2[1] + (f,)), (n2[0], n2[1] + (f,)))
                todo[k] = todo.get(k, Fraction(0)) - c
            todo = {k: v for k, v in todo.items() if v}
        else:
            done[(mu, nu)] += c
    return GraphLPAElement(g, done)


def is_zero(x: GraphLPAElement) -> bool:
    return not reduce(x).terms


# -- classical simplicity -----------------------------------------------------

def simple_cycles(g: DirectedGraph) -> list[tuple[int, ...]]:
    """Every simple cycle once, rotated to start at its smallest edge id."""
    out = set()
    for start in g.vertices:
        stack = [(start, (), {start})]
        while stack:
            v, es, seen = stack.pop()
            for e in g.out_edges(v):
                w = g.rng(e)
                if w == start:
                    cyc = es + (e,)
                    i = cyc.index(min(cyc))
                    out.add(cyc[i:] + cyc[:i])
                elif w not in seen:
                    stack.append((w, es + (e,), seen | {w}))
    return sorted(out)


def condition_L_graph(g: DirectedGraph) -> bool:
    for cyc in simple_cycles(g):
        if all(len(g.out_edges(g.src(e))) == 1 for e in cyc):
            return False
    return True


def hereditary_saturated_sets(g: DirectedGraph) -> list[frozenset[str]]:
    """All hereditary saturated vertex sets, by exhaustive search."""
    vs = g.vertices
    out = []
    for bits in cartesian([0, 1], repeat=len(vs)):
        H = frozenset(v for v, b in zip(vs, bits) if b)
        hereditary = all(g.rng(e) in H for v in H for e in g.out_edges(v))
        saturated = all(
            v in H
            for v in vs
            if g.out_edges(v) and all(g.rng(e) in H for e in g.out_edges(v))
        )
        if hereditary and saturated:
            out.append(H)
    return out


def is_simple_graph_algebra(g: DirectedGraph) -> bool:
    """Over a field: Condition (L) and no hereditary saturated sets besides the trivial ones."""
    trivial = {frozenset(), frozenset(g.vertices)}
    return condition_L_graph(g) and all(H in trivial for H in hereditary_saturated_sets(g))
