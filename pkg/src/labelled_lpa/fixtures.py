"""Named example spaces and seeded random generators used by tests and selftest."""

from __future__ import annotations

import random
from fractions import Fraction

from .action import StonePartialAction
from .algebra import Element, make_term, p, s, s_star, zero
from .family import SetFamily, accommodating_closure, powerset_family
from .graph import enumerate_words, validate_graph
from .space import LabelledSpace, check_normal


def fix1(powerset: bool = False) -> LabelledSpace:
    """One edge v -> w labelled a, with family {∅, {w}} (or all subsets)."""
    g = validate_graph(["v", "w"], [("v", "w", "a")])
    fam = powerset_family(2) if powerset else accommodating_closure(g, [])
    return LabelledSpace(g, fam, name="fix1")


def g1() -> LabelledSpace:
    """Even-shift presentation: loop 1 at v1, edges v1 -> v2 and v2 -> v1 labelled 0."""
    g = validate_graph(
        ["v1", "v2"],
        [("v1", "v1", "1"), ("v1", "v2", "0"), ("v2", "v1", "0")],
        ["0", "1"],
    )
    return LabelledSpace(g, powerset_family(2), name="g1")


def g2() -> LabelledSpace:
    """G1 plus a vertex v3 entered from v1 by 1 and carrying a 0-loop."""
    g = validate_graph(
        ["v1", "v2", "v3"],
        [("v1", "v1", "1"), ("v1", "v2", "0"), ("v2", "v1", "0"),
         ("v1", "v3", "1"), ("v3", "v3", "0")],
        ["0", "1"],
    )
    return LabelledSpace(g, powerset_family(3), name="g2")


def topless() -> LabelledSpace:
    """Two components whose family omits the union of its two maximal members.

    Such a family is not closed under unions, so it is not a labelled space
    in the strict sense; it exists to exercise the non-unital branch.
    """
    g = validate_graph(["x", "y", "u", "z"], [("x", "y", "a"), ("u", "z", "b")])
    X, Y, U, Z = 1, 2, 4, 8
    fam = SetFamily(4, [0, X, Y, X | Y, U, Z, U | Z], check=False)
    return LabelledSpace(g, fam, name="topless")


def named(name: str) -> LabelledSpace:
    return {"fix1": fix1, "g1": g1, "g2": g2, "topless": topless}[name]()


# -- random spaces ----------------------------------------------------------

LETTERS = "abc"


def random_graph_edges(rng: random.Random, n: int, max_edges: int, letters: str = LETTERS,
                       left_resolving: bool = True):
    verts = [f"v{i + 1}" for i in range(n)]
    edges = []
    taken = set()
    for _ in range(rng.randint(1, max_edges)):
        src, dst = rng.choice(verts), rng.choice(verts)
        free = [a for a in letters if not left_resolving or (dst, a) not in taken]
        if not free:
            continue
        a = rng.choice(free)
        if (src, dst, a) in edges:
            continue
        taken.add((dst, a))
        edges.append((src, dst, a))
    return verts, edges


def random_left_resolving(rng: random.Random, max_vertices: int = 5, max_edges: int = 8) -> LabelledSpace:
    n = rng.randint(1, max_vertices)
    verts, edges = random_graph_edges(rng, n, max_edges)
    g = validate_graph(verts, edges)
    return LabelledSpace(g, powerset_family(n), name="random-lr")


def random_normal_space(rng: random.Random, max_vertices: int = 5, max_edges: int = 8) -> LabelledSpace:
    """A random normal labelled space; the family is generated by random seeds."""
    while True:
        n = rng.randint(1, max_vertices)
        lr = rng.random() < 0.7
        verts, edges = random_graph_edges(rng, n, max_edges, left_resolving=lr)
        g = validate_graph(verts, edges)
        seeds = [rng.randrange(1, 1 << n) for _ in range(rng.randint(0, 2))]
        sp = LabelledSpace(g, accommodating_closure(g, seeds), name="random")
        if check_normal(sp):
            return sp


def random_stone_action(rng: random.Random, max_points: int = 6, max_letters: int = 3) -> StonePartialAction:
    n = rng.randint(1, max_points)
    pts = [f"x{i + 1}" for i in range(n)]
    k = rng.randint(0, min(max_letters, n))
    pool = pts[:]
    rng.shuffle(pool)
    maps = {}
    for i in range(k):
        if not pool:
            break
        size = rng.randint(1, max(1, len(pool) - (k - i - 1)))
        image, pool = pool[:size], pool[size:]
        domain = rng.sample(pts, len(image))
        maps[LETTERS[i]] = dict(zip(domain, image))
    return StonePartialAction(tuple(pts), maps)


# -- random elements --------------------------------------------------------

def random_coefficient(rng: random.Random, ring: str = "Q") -> Fraction:
    num = rng.choice([-3, -2, -1, 1, 1, 2, 3])
    if ring == "Z":
        return Fraction(num)
    return Fraction(num, rng.choice([1, 1, 2, 3]))


def random_monomial(sp: LabelledSpace, rng: random.Random, max_word: int = 3,
                    ring: str = "Q", words=None) -> Element:
    words = words or enumerate_words(sp.graph, max_word)
    for _ in range(20):
        alpha, beta = rng.choice(words), rng.choice(words)
        R = sp.range_of(alpha) & sp.range_of(beta)
        choices = [A for A in sp.family.members if A & R]
        if choices:
            A = rng.choice(sorted(choices))
            return make_term(sp, random_coefficient(rng, ring), alpha, A, beta, ring)
    return zero(sp, ring)


def random_element(sp: LabelledSpace, rng: random.Random, max_terms: int = 3,
                   max_word: int = 3, ring: str = "Q", words=None) -> Element:
    words = words or enumerate_words(sp.graph, max_word)
    x = zero(sp, ring)
    for _ in range(rng.randint(1, max_terms)):
        x = x + random_monomial(sp, rng, max_word, ring, words)
    return x


def generators(sp: LabelledSpace, ring: str = "Q") -> list[Element]:
    out = [p(sp, A, ring) for A in sorted(sp.family.members) if A]
    for a in sp.graph.alphabet:
        out += [s(sp, (a,), ring), s_star(sp, (a,), ring)]
    return out
