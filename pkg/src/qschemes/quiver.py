"""Quivers with multiplicities: data model, text DSL, Cartan data.

DSL grammar (whitespace-insensitive, '#' starts a line comment):

    file  :=  "quiver" "{" stmt* "}"
    stmt  :=  "vertex" IDENT "mult" INT
           |  "arrow" IDENT ":" IDENT "->" IDENT

Vertex order is declaration order and fixes the row/column order of every
matrix derived from the quiver.  Edge-loops are rejected at parse time;
parallel arrows are allowed and counted with multiplicity in the adjacency
matrix.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DuplicateName,
    EdgeLoopForbidden,
    LengthMismatch,
    NegativeDimension,
    QuiverSyntaxError,
    UnknownVertex,
)


@dataclass(frozen=True)
class Vertex:
    name: str
    mult: int


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


class QuiverMult:
    """Immutable quiver with a positive multiplicity at each vertex."""

    __slots__ = ("vertices", "arrows", "_index")

    def __init__(self, vertices, arrows):
        vs = tuple(vertices)
        index = {}
        for v in vs:
            if v.mult < 1:
                raise ValueError(f"vertex {v.name}: multiplicity must be >= 1")
            if v.name in index:
                raise DuplicateName(f"vertex {v.name} declared twice")
            index[v.name] = len(index)
        seen = set()
        ars = tuple(arrows)
        for a in ars:
            if a.name in seen:
                raise DuplicateName(f"arrow {a.name} declared twice")
            seen.add(a.name)
            if not (0 <= a.source < len(vs)) or not (0 <= a.target < len(vs)):
                raise UnknownVertex(f"arrow {a.name}: endpoint out of range")
            if a.source == a.target:
                raise EdgeLoopForbidden(f"arrow {a.name} is an edge-loop")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "arrows", ars)
        object.__setattr__(self, "_index", index)

    def __setattr__(self, name, value):
        raise AttributeError("QuiverMult is immutable")

    @staticmethod
    def build(vertices, arrows=()) -> "QuiverMult":
        """Construct from (name, mult) and (name, source_name, target_name) tuples."""
        vs = [Vertex(n, m) for n, m in vertices]
        index = {v.name: i for i, v in enumerate(vs)}
        ars = []
        for name, s, t in arrows:
            if s not in index:
                raise UnknownVertex(f"arrow {name}: unknown vertex {s}")
            if t not in index:
                raise UnknownVertex(f"arrow {name}: unknown vertex {t}")
            ars.append(Arrow(name, index[s], index[t]))
        return QuiverMult(vs, ars)

    # accessors ---------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def mults(self) -> tuple[int, ...]:
        return tuple(v.mult for v in self.vertices)

    def index(self, vertex) -> int:
        """Vertex index from a name or an already-valid index."""
        if isinstance(vertex, int):
            if 0 <= vertex < len(self.vertices):
                return vertex
            raise UnknownVertex(f"vertex index {vertex} out of range")
        if vertex in self._index:
            return self._index[vertex]
        raise UnknownVertex(f"unknown vertex {vertex!r}")

    def name(self, i) -> str:
        return self.vertices[i].name

    def __eq__(self, other):
        if not isinstance(other, QuiverMult):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        return f"QuiverMult({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


@dataclass(frozen=True)
class DoubleArrow:
    """One arrow of the double: sign +1 for originals, -1 for reversals."""

    name: str
    source: int
    target: int
    sign: int
    base: int   # order of the common subring: gcd of the endpoint multiplicities
    f_out: int  # target multiplicity / base
    f_in: int   # source multiplicity / base

    @property
    def reversed_name(self) -> str:
        return self.name[:-1] if self.sign < 0 else self.name + "~"


def double(q: QuiverMult) -> tuple[DoubleArrow, ...]:
    """Arrows of the double quiver: originals first, then the reversals."""
    d = q.mults
    out = []
    for a in q.arrows:
        g = math.gcd(d[a.source], d[a.target])
        out.append(DoubleArrow(a.name, a.source, a.target, 1, g,
                               d[a.target] // g, d[a.source] // g))
    for a in q.arrows:
        g = math.gcd(d[a.source], d[a.target])
        out.append(DoubleArrow(a.name + "~", a.target, a.source, -1, g,
                               d[a.source] // g, d[a.target] // g))
    return tuple(out)


@dataclass(frozen=True)
class CartanData:
    a: tuple            # symmetric adjacency counts of the double
    aprime: tuple       # a_ij / gcd(d_i, d_j), exact fractions
    d: tuple            # multiplicities (the symmetrizer diagonal)
    c: tuple            # generalized Cartan matrix 2*Id - A'D, integer

    def c_list(self):
        return [list(r) for r in self.c]

    def dc_list(self):
        return [[self.d[i] * self.c[i][j] for j in range(len(self.d))]
                for i in range(len(self.d))]


def cartan(q: QuiverMult) -> CartanData:
    """Cartan data of the underlying graph with multiplicities."""
    n = q.n
    d = q.mults
    a = [[0] * n for _ in range(n)]
    for ar in q.arrows:
        a[ar.source][ar.target] += 1
        a[ar.target][ar.source] += 1
    aprime = [
        [Fraction(a[i][j], math.gcd(d[i], d[j])) for j in range(n)] for i in range(n)
    ]
    c = [
        [
            (2 if i == j else 0) - a[i][j] * d[j] // math.gcd(d[i], d[j])
            for j in range(n)
        ]
        for i in range(n)
    ]
    return CartanData(
        tuple(tuple(r) for r in a),
        tuple(tuple(r) for r in aprime),
        tuple(d),
        tuple(tuple(r) for r in c),
    )


def bilinear(q: QuiverMult, v, w) -> int:
    """Symmetric form (v, w) = v^T D C w on the lattice Z^I."""
    if len(v) != q.n or len(w) != q.n:
        raise LengthMismatch("dimension vector length differs from vertex count")
    cd = cartan(q)
    total = 0
    for i in range(q.n):
        row = cd.c[i]
        total += v[i] * cd.d[i] * sum(row[j] * w[j] for j in range(q.n))
    return total


def expected_dim(q: QuiverMult, v) -> int:
    """2 - (v, v) for a componentwise non-negative dimension vector."""
    if len(v) != q.n:
        raise LengthMismatch("dimension vector length differs from vertex count")
    if any(x < 0 for x in v):
        raise NegativeDimension("dimension vector has a negative entry")
    return 2 - bilinear(q, v, v)


# -- DSL ----------------------------------------------------------------------

_TOKEN_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|\d+|->|[{}:]|\S")


def _tokens(text):
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        for m in _TOKEN_RE.finditer(body):
            yield m.group(0), lineno, m.start() + 1
    yield None, lineno if text else 1, 1


class _Parser:
    def __init__(self, text):
        self._it = _tokens(text)
        self.tok, self.line, self.col = next(self._it)

    def advance(self):
        self.tok, self.line, self.col = next(self._it)

    def fail(self, message):
        raise QuiverSyntaxError(message, self.line, self.col)

    def expect(self, literal):
        if self.tok != literal:
            self.fail(f"expected {literal!r}, found {self.tok!r}")
        self.advance()

    def ident(self, what):
        t = self.tok
        if t is None or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", t):
            self.fail(f"expected {what}, found {self.tok!r}")
        self.advance()
        return t

    def integer(self, what):
        t = self.tok
        if t is None or not t.isdigit():
            self.fail(f"expected {what}, found {self.tok!r}")
        self.advance()
        return int(t)


def parse_quiver(text: str) -> QuiverMult:
    """Parse the DSL; positioned errors on malformed input."""
    p = _Parser(text)
    p.expect("quiver")
    p.expect("{")
    vertices, arrows, index = [], [], {}
    arrow_names = set()
    while p.tok != "}":
        if p.tok == "vertex":
            line, col = p.line, p.col
            p.advance()
            name = p.ident("vertex name")
            p.expect("mult")
            mult = p.integer("multiplicity")
            if mult < 1:
                raise QuiverSyntaxError("multiplicity must be >= 1", line, col)
            if name in index:
                raise QuiverSyntaxError(f"duplicate vertex {name}", line, col)
            index[name] = len(vertices)
            vertices.append(Vertex(name, mult))
        elif p.tok == "arrow":
            line, col = p.line, p.col
            p.advance()
            name = p.ident("arrow name")
            p.expect(":")
            src = p.ident("source vertex")
            p.expect("->")
            tgt = p.ident("target vertex")
            if name in arrow_names:
                raise QuiverSyntaxError(f"duplicate arrow {name}", line, col)
            if src not in index:
                raise QuiverSyntaxError(f"unknown vertex {src}", line, col)
            if tgt not in index:
                raise QuiverSyntaxError(f"unknown vertex {tgt}", line, col)
            if src == tgt:
                raise QuiverSyntaxError(f"arrow {name} is an edge-loop", line, col)
            arrow_names.add(name)
            arrows.append(Arrow(name, index[src], index[tgt]))
        elif p.tok is None:
            p.fail("unexpected end of input")
        else:
            p.fail(f"expected 'vertex', 'arrow' or '}}', found {p.tok!r}")
    p.advance()
    if p.tok is not None:
        p.fail(f"trailing input {p.tok!r}")
    return QuiverMult(vertices, arrows)


def serialize_quiver(q: QuiverMult) -> str:
    lines = ["quiver {"]
    for v in q.vertices:
        lines.append(f"  vertex {v.name} mult {v.mult}")
    for a in q.arrows:
        lines.append(f"  arrow {a.name} : {q.name(a.source)} -> {q.name(a.target)}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dot(q: QuiverMult) -> str:
    lines = ["digraph quiver {"]
    for v in q.vertices:
        lines.append(f'  "{v.name}" [label="{v.name} (mult {v.mult})"];')
    for a in q.arrows:
        lines.append(f'  "{q.name(a.source)}" -> "{q.name(a.target)}" [label="{a.name}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
