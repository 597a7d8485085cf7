"""Text formats: space files, ultragraphs, Stone actions, algebra expressions,
filter literals, group words and triples, with printers that round-trip."""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .action import GroupWord, StonePartialAction, fmt_group_word, reduce_word
from .algebra import Element, NonUnital, normalize, p, s, s_star, unit_element, zero
from .family import accommodating_closure, powerset_family
from .graph import Word, validate_graph
from .semigroup import ZERO, make_triple
from .space import LabelledSpace
from .spectrum import TightFilter, finite_filter, periodic_filter, validate_filter


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + msg)
        self.line, self.col = line, col


_SET = re.compile(r"\{([^{}]*)\}")


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield n, line


def _directive(line: str, n: int) -> tuple[str, str]:
    stripped = line.strip()
    if stripped.startswith("graph ") or stripped == "graph":
        return "graph", stripped[5:].strip()
    if stripped.startswith("map ") and ":" in stripped:
        head, rest = stripped.split(":", 1)
        return head.strip(), rest.strip()
    if ":" not in stripped:
        raise ParseError("expected 'key: value'", n, len(line) - len(line.lstrip()) + 1)
    key, rest = stripped.split(":", 1)
    return key.strip(), rest.strip()


def _set_names(body: str) -> list[str]:
    return [v.strip() for v in body.split(",") if v.strip()]


def _parse_sets(text: str, n: int, line: str) -> list[list[str]]:
    out = []
    pos = 0
    for m in _SET.finditer(text):
        if text[pos:m.start()].strip():
            raise ParseError(f"unexpected {text[pos:m.start()].strip()!r}", n, line.find(text) + pos + 1)
        out.append(_set_names(m.group(1)))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError(f"unexpected {text[pos:].strip()!r}", n, line.find(text) + pos + 1)
    return out


_EDGE = re.compile(r"^(\S+)\s*->\s*(\S+)\s*:\s*(\S+)$")
_ULTRA = re.compile(r"^(\S+)\s*->\s*\{([^{}]*)\}\s*:\s*(\S+)$")


def parse_space_text(text: str) -> LabelledSpace:
    """Parse the line-oriented space format. Semantic checks are left to validate_graph."""
    name = ""
    vertices: list[str] | None = None
    alphabet: list[str] | None = None
    edges = []
    family = None
    for n, line in _lines(text):
        key, rest = _directive(line, n)
        if key == "graph":
            name = rest
        elif key == "vertices":
            vertices = rest.split()
        elif key == "alphabet":
            alphabet = rest.split()
        elif key == "edge":
            m = _EDGE.match(rest)
            if not m:
                raise ParseError("edge must read '<src> -> <dst> : <letter>'", n, line.find(rest) + 1)
            edges.append(m.groups())
        elif key == "family":
            family = "powerset" if rest == "powerset" else _parse_sets(rest, n, line)
        else:
            raise ParseError(f"unknown directive {key!r}", n, 1)
    if vertices is None:
        raise ParseError("missing 'vertices:' line")
    g = validate_graph(vertices, edges, alphabet)
    if family == "powerset":
        fam = powerset_family(len(g.vertices))
    elif family is None:
        fam = accommodating_closure(g, [1 << i for i in range(len(g.vertices))])
    else:
        fam = accommodating_closure(g, [g.mask(names) for names in family])
    return LabelledSpace(g, fam, name=name)


def parse_space_file(path) -> LabelledSpace:
    return parse_space_text(Path(path).read_text(encoding="utf-8"))


def format_space(sp: LabelledSpace) -> str:
    g = sp.graph
    lines = []
    if sp.name:
        lines.append(f"graph {sp.name}")
    lines.append("vertices: " + " ".join(g.vertices))
    if g.alphabet:
        lines.append("alphabet: " + " ".join(g.alphabet))
    for s_, d, a in g.edges:
        lines.append(f"edge: {g.vertices[s_]} -> {g.vertices[d]} : {a}")
    if sp.family.is_powerset():
        lines.append("family: powerset")
    else:
        lines.append("family: " + " ".join(g.fmt_set(X) for X in sp.family.atoms))
    return "\n".join(lines) + "\n"


def parse_ultragraph_text(text: str):
    """(vertices, [(source, range, name)])."""
    vertices = None
    ultra = []
    for n, line in _lines(text):
        key, rest = _directive(line, n)
        if key == "graph":
            continue
        if key == "vertices":
            vertices = rest.split()
        elif key == "ultraedge":
            m = _ULTRA.match(rest)
            if not m:
                raise ParseError("ultraedge must read '<src> -> {v,...} : <name>'", n, line.find(rest) + 1)
            src, body, nm = m.groups()
            ultra.append((src, _set_names(body), nm))
        else:
            raise ParseError(f"unknown directive {key!r}", n, 1)
    if vertices is None:
        raise ParseError("missing 'vertices:' line")
    return vertices, ultra


def parse_graph_text(text: str):
    """(vertices, [(source, range)], edge names) for an ordinary directed graph."""
    sp_vertices = None
    edges, names = [], []
    for n, line in _lines(text):
        key, rest = _directive(line, n)
        if key in ("graph", "alphabet", "family"):
            continue
        if key == "vertices":
            sp_vertices = rest.split()
        elif key == "edge":
            m = _EDGE.match(rest)
            if not m:
                raise ParseError("edge must read '<src> -> <dst> : <name>'", n, line.find(rest) + 1)
            a, b, nm = m.groups()
            if nm in names:
                raise ParseError(f"edge name {nm!r} used twice", n, line.find(rest) + 1)
            edges.append((a, b))
            names.append(nm)
        else:
            raise ParseError(f"unknown directive {key!r}", n, 1)
    if sp_vertices is None:
        raise ParseError("missing 'vertices:' line")
    return sp_vertices, edges, names


def parse_stone_text(text: str) -> StonePartialAction:
    points = None
    maps: dict[str, dict[str, str]] = {}
    for n, line in _lines(text):
        key, rest = _directive(line, n)
        if key == "points":
            points = tuple(rest.split())
        elif key.startswith("map "):
            letter = key[4:].strip()
            rho = {}
            for item in rest.split(","):
                item = item.strip()
                if not item:
                    continue
                if "->" not in item:
                    raise ParseError(f"expected 'x->y', got {item!r}", n, line.find(item) + 1)
                x, y = (t.strip() for t in item.split("->", 1))
                rho[x] = y
            maps[letter] = rho
        else:
            raise ParseError(f"unknown directive {key!r}", n, 1)
    if points is None:
        raise ParseError("missing 'points:' line")
    return StonePartialAction(points, maps)


def format_stone(act: StonePartialAction) -> str:
    lines = ["points: " + " ".join(act.points)]
    for a, rho in act.maps.items():
        lines.append(f"map {a}: " + ", ".join(f"{x}->{y}" for x, y in rho.items()))
    return "\n".join(lines) + "\n"


# -- words, sets, triples -------------------------------------------------------

def parse_word(sp: LabelledSpace, text: str) -> Word:
    text = text.strip()
    if text in ("", "ω", "w0"):
        return ()
    letters = sp.graph.letter_pos
    if text in letters:
        return (text,)
    parts = text.split(".") if "." in text else list(text)
    for a in parts:
        if a not in letters:
            raise ParseError(f"unknown letter {a!r}")
    return tuple(parts)


def parse_set(sp: LabelledSpace, text: str) -> int:
    m = _SET.fullmatch(text.strip())
    if not m:
        raise ParseError(f"expected a vertex set, got {text!r}")
    try:
        return sp.graph.mask(_set_names(m.group(1)))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_triple(sp: LabelledSpace, text: str):
    text = text.strip()
    if text == "0":
        return ZERO
    m = re.fullmatch(r"\(\s*([^,{}]*)\s*,\s*(\{[^{}]*\})\s*,\s*([^,{}]*)\s*\)", text)
    if not m:
        raise ParseError(f"expected (word,{{set}},word) or 0, got {text!r}")
    alpha, A, beta = parse_word(sp, m.group(1)), parse_set(sp, m.group(2)), parse_word(sp, m.group(3))
    try:
        return make_triple(sp, alpha, A, beta)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_triple(sp: LabelledSpace, t) -> str:
    if t is ZERO:
        return "0"
    g = sp.graph
    return f"({g.fmt_word(t.alpha)},{g.fmt_set(t.A)},{g.fmt_word(t.beta)})"


def parse_group_word(sp: LabelledSpace, text: str) -> GroupWord:
    text = text.strip()
    if text in ("", "ω"):
        return ()
    raw = []
    for item in re.split(r"[\s.]+", text):
        if not item:
            continue
        inv = item.endswith("^-1")
        a = item[:-3] if inv else item
        if a not in sp.graph.letter_pos:
            raise ParseError(f"unknown letter {a!r}")
        raw.append((a, -1 if inv else 1))
    return reduce_word(raw)


def format_group_word(sp: LabelledSpace, t: GroupWord) -> str:
    return fmt_group_word(sp, t)


# -- filter literals ---------------------------------------------------------------

def parse_filter(sp: LabelledSpace, text: str) -> TightFilter:
    text = text.strip()
    m = re.fullmatch(r"(finite|periodic):([^@]*)@(.*)", text)
    if not m:
        raise ParseError(f"expected finite:<word>@<atoms> or periodic:<base>|<period>@<atoms>, got {text!r}")
    kind, words, atoms = m.groups()
    chain = []
    for item in atoms.split(";"):
        item = item.strip()
        chain.append(None if item == "-" else parse_set(sp, item))
    if kind == "finite":
        tf = finite_filter(parse_word(sp, words), chain)
    else:
        if "|" not in words:
            raise ParseError("periodic filters need '<base>|<period>'")
        b, per = words.split("|", 1)
        tf = periodic_filter(parse_word(sp, b), parse_word(sp, per), chain)
    try:
        return validate_filter(sp, tf)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_filter(sp: LabelledSpace, tf: TightFilter) -> str:
    g = sp.graph
    atoms = ";".join("-" if X is None else g.fmt_set(X) for X in tf.chain)
    if tf.finite:
        return f"finite:{g.fmt_word(tf.base)}@{atoms}"
    return f"periodic:{g.fmt_word(tf.base)}|{g.fmt_word(tf.period)}@{atoms}"


# -- expressions ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(p\{[^{}]*\})|(s'\([^()]*\))|(s\([^()]*\))|([-+*()]))")


def _tokenize(src: str):
    pos = 0
    out = []
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            col = pos + len(src[pos:]) - len(src[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {src[col - 1]!r}", 1, col)
        kind = m.lastindex
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return out


class _ExprParser:
    def __init__(self, sp: LabelledSpace, ring: str, src: str):
        self.sp, self.ring = sp, ring
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression")
        self.i += 1
        return tok

    def lift(self, v):
        """Scalars standing alone mean multiples of the unit."""
        if isinstance(v, Element):
            return v
        if not v:
            return zero(self.sp, self.ring)
        try:
            return unit_element(self.sp, self.ring) * v
        except NonUnital:
            raise ParseError("the algebra has no unit, so scalars cannot stand alone") from None

    def expr(self):
        v = self.term()
        while (tok := self.peek()) is not None and tok[0] == 5 and tok[1] in "+-":
            self.take()
            w = self.term()
            if isinstance(v, Fraction) and isinstance(w, Fraction):
                v = v + w if tok[1] == "+" else v - w
            else:
                v = self.lift(v) + self.lift(w) if tok[1] == "+" else self.lift(v) - self.lift(w)
        return v

    def term(self):
        v = self.factor()
        while (tok := self.peek()) is not None and tok[0] == 5 and tok[1] == "*":
            self.take()
            v = v * self.factor()
        return v

    def factor(self):
        kind, text, col = self.take()
        sp, ring = self.sp, self.ring
        try:
            if kind == 1:
                c = Fraction(text)
                if ring == "Z" and c.denominator != 1:
                    raise ParseError(f"{text} is not an integer", 1, col)
                return c
            if kind == 2:
                return p(sp, parse_set(sp, text[1:]), ring)
            if kind == 3:
                return s_star(sp, self.word(text[3:-1]), ring)
            if kind == 4:
                return s(sp, self.word(text[2:-1]), ring)
        except ParseError as exc:
            raise ParseError(str(exc), 1, col) from None
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(str(exc), 1, col) from None
        if text == "-":
            v = self.factor()
            return -v
        if text == "(":
            v = self.expr()
            tok = self.take()
            if tok[1] != ")":
                raise ParseError("expected ')'", 1, tok[2])
            return v
        raise ParseError(f"unexpected {text!r}", 1, col)

    def word(self, text: str) -> Word:
        w = parse_word(self.sp, text)
        if not w:
            raise ParseError("s() and s'() need a nonempty word")
        return w


def parse_expression(src: str, sp: LabelledSpace, ring: str = "Q", normal: bool = True) -> Element:
    parser = _ExprParser(sp, ring, src)
    if not parser.toks:
        raise ParseError("empty expression")
    v = parser.expr()
    if parser.peek() is not None:
        raise ParseError(f"unexpected {parser.peek()[1]!r}", 1, parser.peek()[2])
    x = parser.lift(v)
    return normalize(x) if normal else x
