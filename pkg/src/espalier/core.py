"""
Espaliers: trees on finitely many points of the real line whose edges, drawn
in the lower half-plane, never cross.

Only the combinatorics is kept: a sorted tuple of exact rational vertices and a
set of edges ``(lo, hi)``. Two edges may share a vertex or be nested/disjoint,
but never interleave.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

Coord = Fraction
Edge = tuple[Fraction, Fraction]
Number = Union[int, str, Fraction]


class PairRelation(enum.Enum):
    TOUCH = "touch"
    LINK = "link"
    UNLINK = "unlink"


class EspalierError(ValueError):
    pass


def coord(x: Number) -> Fraction:
    if isinstance(x, float):
        raise TypeError("coordinates must be exact; got a float")
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def make_edge(p: Number, q: Number) -> Edge:
    a, b = coord(p), coord(q)
    if a == b:
        raise EspalierError(f"degenerate edge {{{a}, {b}}}")
    return (a, b) if a < b else (b, a)


def classify_pair(a: Iterable[Number], b: Iterable[Number]) -> PairRelation:
    """Touch, link or unlink, decided by the sign of the cross-ratio."""
    s, t = (coord(x) for x in a)
    s2, t2 = (coord(x) for x in b)
    if s == t or s2 == t2:
        raise EspalierError("pair with equal members")
    shared = len({s, t} & {s2, t2})
    if shared == 2:
        raise EspalierError("pairs are identical")
    if shared == 1:
        return PairRelation.TOUCH
    ratio = ((s - s2) * (t - t2)) / ((s - t2) * (s2 - t))
    return PairRelation.LINK if ratio > 0 else PairRelation.UNLINK


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    edges: tuple[Edge, ...] = ()

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_edge(e: Edge) -> str:
    return "{" + _fmt(e[0]) + "," + _fmt(e[1]) + "}"


def validate(vertices: Iterable[Number], edges: Iterable[Iterable[Number]]) -> list[Violation]:
    """Every violated espalier invariant; an empty list means the input is an espalier."""
    out: list[Violation] = []
    vs = [coord(v) for v in vertices]
    if not vs:
        out.append(Violation("empty", "vertex set is empty"))
    if any(a >= b for a, b in zip(vs, vs[1:])):
        out.append(Violation("order", "vertices are not strictly increasing"))
    vset = set(vs)
    es: list[Edge] = []
    for raw in edges:
        p, q = (coord(x) for x in raw)
        if p == q:
            out.append(Violation("degenerate", f"edge with equal endpoints {_fmt(p)}"))
            continue
        e = (min(p, q), max(p, q))
        if e[0] not in vset or e[1] not in vset:
            out.append(Violation("unknown-vertex", f"edge {fmt_edge(e)} has an endpoint outside the vertex set", (e,)))
            continue
        if e in es:
            out.append(Violation("duplicate", f"edge {fmt_edge(e)} listed twice", (e,)))
            continue
        es.append(e)
    if vs and len(es) != len(vset) - 1:
        out.append(Violation("edge-count", f"{len(es)} edges for {len(vset)} vertices (need {len(vset) - 1})"))
    # connectivity / cycles by union-find
    parent = {v: v for v in vset}

    def find(x: Fraction) -> Fraction:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in es:
        ra, rb = find(e[0]), find(e[1])
        if ra == rb:
            out.append(Violation("cycle", f"edge {fmt_edge(e)} closes a cycle", (e,)))
        else:
            parent[ra] = rb
    if len({find(v) for v in vset}) > 1:
        out.append(Violation("disconnected", "edge graph is not connected"))
    for i, e in enumerate(es):
        for f in es[i + 1:]:
            if classify_pair(e, f) is PairRelation.LINK:
                out.append(Violation("link", f"edge {fmt_edge(e)} links edge {fmt_edge(f)}", (e, f)))
    return out


@dataclass(frozen=True)
class Espalier:
    vertices: tuple[Fraction, ...]
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        vs = tuple(sorted(coord(v) for v in self.vertices))
        es = frozenset(make_edge(*e) for e in self.edges)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)
        problems = validate(vs, es)
        if problems:
            raise EspalierError("; ".join(str(p) for p in problems))

    def degree(self, v: Fraction) -> int:
        return sum(1 for e in self.edges if v in e)

    def end_vertices(self) -> frozenset[Fraction]:
        return frozenset(v for v in self.vertices if self.degree(v) == 1)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def edges_at(self, v: Fraction) -> list[Edge]:
        return sorted(e for e in self.edges if v in e)

    def __str__(self) -> str:
        vs = " ".join(_fmt(v) for v in self.vertices)
        es = " ".join(fmt_edge(e) for e in self.sorted_edges())
        return f"V: {vs} | E: {es}"


class Kind(enum.Enum):
    PATH = "path"
    STAR = "star"


def make_canonical(vertices: Iterable[Number], kind: Kind | str) -> Espalier:
    """The linear espalier (consecutive pairs) or the star at the minimum vertex."""
    xs = sorted(coord(v) for v in vertices)
    if not xs:
        raise EspalierError("empty vertex set")
    kind = Kind(kind)
    if kind is Kind.PATH:
        edges = [(xs[i], xs[i + 1]) for i in range(len(xs) - 1)]
    else:
        edges = [(xs[0], x) for x in xs[1:]]
    return Espalier(tuple(xs), frozenset(edges))


def path(vertices: Iterable[Number]) -> Espalier:
    return make_canonical(vertices, Kind.PATH)


def star(vertices: Iterable[Number]) -> Espalier:
    return make_canonical(vertices, Kind.STAR)


def is_star(t: Espalier) -> tuple[bool, Edge | None]:
    """Whether ``t`` is the star at its minimum vertex.

    When it is not, the returned edge has a maximum endpoint that is not an end
    vertex. The edge with the largest such maximum is reported.
    """
    ends = t.end_vertices()
    witnesses = [e for e in t.sorted_edges() if e[1] not in ends]
    if not witnesses:
        return True, None
    return False, max(witnesses, key=lambda e: (e[1], e[0]))


def prec_less(t: Espalier, t2: Espalier) -> bool:
    if t.vertices != t2.vertices:
        raise EspalierError("prec_less needs espaliers on the same vertex set")
    a, b = t.end_vertices(), t2.end_vertices()
    if len(a) != len(b):
        return len(a) < len(b)
    return sum(a, Fraction(0)) < sum(b, Fraction(0))


# --- espalier moves ----------------------------------------------------------

@dataclass(frozen=True)
class TreeDeflation:
    edge: Edge
    vertex: Fraction


@dataclass(frozen=True)
class TreeInflation:
    vertex: Fraction
    anchor: Fraction


@dataclass(frozen=True)
class TreeSlide:
    """Re-anchor every other edge at ``source`` onto the far end of ``edge``."""
    edge: Edge
    source: Fraction


@dataclass(frozen=True)
class TreeTwirl:
    new_vertex: Fraction


TreeMove = Union[TreeDeflation, TreeInflation, TreeSlide, TreeTwirl]


def espalier_move(t: Espalier, m: TreeMove) -> Espalier:
    if isinstance(m, TreeDeflation):
        e = make_edge(*m.edge)
        q = coord(m.vertex)
        if e not in t.edges:
            raise EspalierError(f"deflation: {fmt_edge(e)} is not an edge")
        if q not in e:
            raise EspalierError(f"deflation: {_fmt(q)} is not an endpoint of {fmt_edge(e)}")
        if t.degree(q) != 1:
            raise EspalierError(f"deflation: {_fmt(q)} is not an end vertex")
        return Espalier(tuple(v for v in t.vertices if v != q), t.edges - {e})
    if isinstance(m, TreeInflation):
        p, q = coord(m.vertex), coord(m.anchor)
        if p in t.vertices:
            raise EspalierError(f"inflation: {_fmt(p)} is already a vertex")
        if q not in t.vertices:
            raise EspalierError(f"inflation: anchor {_fmt(q)} is not a vertex")
        return Espalier(t.vertices + (p,), t.edges | {make_edge(p, q)})
    if isinstance(m, TreeSlide):
        e0 = make_edge(*m.edge)
        src = coord(m.source)
        if e0 not in t.edges:
            raise EspalierError(f"slide: {fmt_edge(e0)} is not an edge")
        if src not in e0:
            raise EspalierError(f"slide: {_fmt(src)} is not an endpoint of {fmt_edge(e0)}")
        dst = e0[0] if src == e0[1] else e0[1]
        edges = set()
        for e in t.edges:
            if e != e0 and src in e:
                other = e[0] if e[1] == src else e[1]
                edges.add(make_edge(other, dst))
            else:
                edges.add(e)
        return Espalier(t.vertices, frozenset(edges))
    if isinstance(m, TreeTwirl):
        x = coord(m.new_vertex)
        if x <= t.vertices[-1]:
            raise EspalierError(f"twirl: new vertex {_fmt(x)} must exceed max vertex {_fmt(t.vertices[-1])}")
        lo = t.vertices[0]
        rename = {v: v for v in t.vertices}
        rename[lo] = x
        return Espalier(t.vertices[1:] + (x,), frozenset(make_edge(rename[a], rename[b]) for a, b in t.edges))
    raise TypeError(f"unknown espalier move {m!r}")


def component(vertices: Iterable[Fraction], edges: Iterable[Edge], start: Fraction) -> tuple[frozenset[Fraction], frozenset[Edge]]:
    es = list(edges)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for a, b in es:
            for x, y in ((a, b), (b, a)):
                if x == v and y not in seen:
                    seen.add(y)
                    stack.append(y)
    return frozenset(seen), frozenset(e for e in es if e[0] in seen)


def split_at_edge(t: Espalier, e0: Iterable[Number]) -> tuple[Espalier, Espalier]:
    """The two pieces of ``t`` with the open edge ``e0`` removed, min side first."""
    e0 = make_edge(*e0)
    if e0 not in t.edges:
        raise EspalierError(f"{fmt_edge(e0)} is not an edge")
    rest = t.edges - {e0}
    lo_v, lo_e = component(t.vertices, rest, e0[0])
    hi_v, hi_e = component(t.vertices, rest, e0[1])
    return Espalier(tuple(lo_v), lo_e), Espalier(tuple(hi_v), hi_e)


def midpoint_gap(vertices: Iterable[Fraction], v: Fraction) -> Fraction:
    """A fresh coordinate strictly between ``v`` and the next vertex above it."""
    above = [x for x in vertices if x > v]
    return (v + min(above)) / 2 if above else v + 1
