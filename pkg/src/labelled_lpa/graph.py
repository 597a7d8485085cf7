"""Finite labelled graphs, words, and the relative-range calculus.

Vertex sets are bit masks over the declared vertex order; words are tuples
of letters, with the empty tuple standing for the empty word.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Word = tuple[str, ...]
OMEGA: Word = ()


class GraphError(ValueError):
    """Raised when a graph description is not a valid labelled graph."""


class LabelledGraph:
    """A finite directed graph whose edges carry letters.

    ``edges`` holds ``(source index, range index, letter)`` triples.
    """

    __slots__ = (
        "vertices",
        "edges",
        "alphabet",
        "index",
        "letter_pos",
        "full",
        "sinks",
        "_succ",
        "_cache",
    )

    def __init__(self, vertices: Sequence[str], edges, alphabet: Sequence[str]):
        self.vertices = tuple(vertices)
        self.alphabet = tuple(alphabet)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.letter_pos = {a: i for i, a in enumerate(self.alphabet)}
        self.edges = tuple(edges)
        self.full = (1 << len(self.vertices)) - 1
        self._succ = {a: [0] * len(self.vertices) for a in self.alphabet}
        emitters = 0
        for s, d, a in self.edges:
            self._succ[a][s] |= 1 << d
            emitters |= 1 << s
        self.sinks = self.full & ~emitters
        self._cache: dict[tuple[int, str], int] = {}

    def __repr__(self):
        return f"LabelledGraph({len(self.vertices)} vertices, {len(self.edges)} edges, alphabet={self.alphabet})"

    def step(self, A: int, a: str) -> int:
        """r(A, a) for a single letter."""
        key = (A, a)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        row = self._succ[a]
        out = 0
        i = 0
        B = A
        while B:
            if B & 1:
                out |= row[i]
            B >>= 1
            i += 1
        self._cache[key] = out
        return out

    def mask(self, names: Iterable[str]) -> int:
        m = 0
        for v in names:
            if v not in self.index:
                raise GraphError(f"unknown vertex {v!r}")
            m |= 1 << self.index[v]
        return m

    def names(self, A: int) -> list[str]:
        return [v for i, v in enumerate(self.vertices) if A >> i & 1]

    def fmt_set(self, A: int) -> str:
        return "{" + ",".join(self.names(A)) + "}"

    def word_key(self, w: Word) -> tuple:
        return (len(w), tuple(self.letter_pos[a] for a in w))

    def fmt_word(self, w: Word) -> str:
        if not w:
            return "ω"
        if all(len(a) == 1 for a in w):
            return "".join(w)
        return ".".join(w)


def validate_graph(vertices: Sequence[str], edges: Iterable[tuple[str, str, str]],
                   alphabet: Sequence[str] | None = None) -> LabelledGraph:
    """Build a LabelledGraph from vertex names and (src, dst, letter) triples.

    When ``alphabet`` is omitted the letters are taken in order of first use.
    """
    vertices = list(vertices)
    if not vertices:
        raise GraphError("empty vertex set")
    if len(set(vertices)) != len(vertices):
        raise GraphError("duplicate vertex")
    index = {v: i for i, v in enumerate(vertices)}
    raw = []
    used: list[str] = []
    for s, d, a in edges:
        for v in (s, d):
            if v not in index:
                raise GraphError(f"unknown vertex {v!r} in edge {s} -> {d} : {a}")
        raw.append((index[s], index[d], a))
        if a not in used:
            used.append(a)
    if alphabet is None:
        alphabet = used
    else:
        alphabet = list(alphabet)
        for a in used:
            if a not in alphabet:
                raise GraphError(f"edge label {a!r} is not a declared letter")
        unused = [a for a in alphabet if a not in used]
        if unused:
            raise GraphError(f"letter {unused[0]!r} declared but unused")
    return LabelledGraph(vertices, raw, alphabet)


def relative_range(g: LabelledGraph, A: int, word: Word) -> int:
    """r(A, word); the empty word returns A."""
    for a in word:
        if not A:
            return 0
        A = g.step(A, a)
    return A


def range_of(g: LabelledGraph, word: Word) -> int:
    """r(word) = r(E^0, word)."""
    return relative_range(g, g.full, word)


def letters_from(g: LabelledGraph, A: int) -> tuple[str, ...]:
    return tuple(a for a in g.alphabet if g.step(A, a))


def is_labelled_path(g: LabelledGraph, word: Word) -> bool:
    return range_of(g, word) != 0


def enumerate_words(g: LabelledGraph, max_len: int) -> list[Word]:
    """All labelled paths of length at most ``max_len``, shortlex ordered."""
    out: list[Word] = [OMEGA]
    frontier = [(OMEGA, g.full)]
    for _ in range(max_len):
        nxt = []
        for w, R in frontier:
            for a in g.alphabet:
                S = g.step(R, a)
                if S:
                    nxt.append((w + (a,), S))
        out.extend(w for w, _ in nxt)
        frontier = nxt
    return out


def popcount(x: int) -> int:
    return bin(x).count("1")
