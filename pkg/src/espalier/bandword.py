"""
Embedded band representations (words of signed bands over a vertex set) and
the elementary rewrites between them: inflation/deflation, slip, six slides,
twirl and turn.

Positions are 1-based. A Slip or Slide at position ``k`` rewrites the pair of
bands at ``k`` and ``k + 1``.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from .core import (
    Edge,
    Espalier,
    EspalierError,
    Number,
    PairRelation,
    _fmt,
    classify_pair,
    coord,
    fmt_edge,
)


class MoveError(ValueError):
    pass


class BandwordError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Band:
    lo: Fraction
    hi: Fraction
    sign: int = 1

    def __post_init__(self) -> None:
        lo, hi = coord(self.lo), coord(self.hi)
        if lo >= hi:
            raise BandwordError(f"band needs lo < hi, got {_fmt(lo)}-{_fmt(hi)}")
        if self.sign not in (1, -1):
            raise BandwordError(f"band sign must be +1 or -1, got {self.sign}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def support(self) -> Edge:
        return (self.lo, self.hi)

    def flipped(self) -> Band:
        return Band(self.lo, self.hi, -self.sign)

    def __str__(self) -> str:
        return f"{_fmt(self.lo)}-{_fmt(self.hi)}:{'+' if self.sign > 0 else '-'}"


def band(p: Number, q: Number, sign: int | str = 1) -> Band:
    if isinstance(sign, str):
        sign = {"+": 1, "-": -1}[sign]
    a, b = coord(p), coord(q)
    return Band(min(a, b), max(a, b), sign)


@dataclass(frozen=True)
class EmbeddedBandRep:
    vertices: tuple[Fraction, ...]
    word: tuple[Band, ...] = ()

    def __post_init__(self) -> None:
        vs = tuple(sorted(coord(v) for v in self.vertices))
        if len(set(vs)) != len(vs):
            raise BandwordError("repeated vertex")
        if not vs:
            raise BandwordError("empty vertex set")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "word", tuple(self.word))
        vset = set(vs)
        for b in self.word:
            if b.lo not in vset or b.hi not in vset:
                raise BandwordError(f"band {b} has an endpoint outside the vertex set")

    def __len__(self) -> int:
        return len(self.word)

    def ranks(self) -> dict[Fraction, int]:
        return {v: i + 1 for i, v in enumerate(self.vertices)}

    def supports(self) -> set[Edge]:
        return {b.support for b in self.word}

    def is_bandword_over(self, t: Espalier) -> bool:
        return self.vertices == t.vertices and self.supports() <= t.edges

    def __str__(self) -> str:
        vs = " ".join(_fmt(v) for v in self.vertices)
        return f"V: {vs}\n" + " ".join(str(b) for b in self.word)


def bandword(vertices: Iterable[Number], *bands: str | Band) -> EmbeddedBandRep:
    """Convenience constructor: ``bandword([1, 2, 3], "1-2:+", "2-3:-")``."""
    return EmbeddedBandRep(tuple(coord(v) for v in vertices), tuple(parse_band(b) for b in bands))


def parse_band(token: str | Band) -> Band:
    if isinstance(token, Band):
        return token
    try:
        body, sign = token.rsplit(":", 1)
        p, q = body.split("-", 1)
        return band(p, q, sign)
    except (ValueError, KeyError, ZeroDivisionError) as exc:
        raise BandwordError(f"malformed band token {token!r}") from exc


# --- analysis ---------------------------------------------------------------

@dataclass(frozen=True)
class EdgeSummary:
    edge: Edge
    count: int
    positive: int
    negative: int


@dataclass(frozen=True)
class InvariantReport:
    euler_characteristic: int
    edges: tuple[EdgeSummary, ...]
    strict: bool
    homogeneous: bool
    components: tuple[tuple[Fraction, ...], ...]
    permutation: tuple[int, ...]
    closure_components: int
    c_statistic: Optional[int]

    @property
    def connected(self) -> bool:
        return len(self.components) == 1


def support_components(b: EmbeddedBandRep) -> tuple[tuple[Fraction, ...], ...]:
    parent = {v: v for v in b.vertices}

    def find(x: Fraction) -> Fraction:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for lo, hi in b.supports():
        parent[find(lo)] = find(hi)
    groups: dict[Fraction, list[Fraction]] = {}
    for v in b.vertices:
        groups.setdefault(find(v), []).append(v)
    return tuple(sorted(tuple(g) for g in groups.values()))


def closure_permutation(b: EmbeddedBandRep) -> tuple[int, ...]:
    """Product of the transpositions (lo hi) in word order, on 1-based ranks."""
    ranks = b.ranks()
    perm = list(range(1, len(b.vertices) + 1))
    for x in b.word:
        i, j = ranks[x.lo], ranks[x.hi]
        perm = [j if p == i else i if p == j else p for p in perm]
    return tuple(perm)


def cycle_count(perm: tuple[int, ...]) -> int:
    seen: set[int] = set()
    cycles = 0
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cycles += 1
        x = start
        while x not in seen:
            seen.add(x)
            x = perm[x - 1]
    return cycles


def _check_over(b: EmbeddedBandRep, t: Espalier) -> None:
    if b.vertices != t.vertices:
        raise BandwordError("espalier vertex set differs from the word's vertex set")
    stray = sorted(b.supports() - t.edges)
    if stray:
        raise BandwordError(f"band support {fmt_edge(stray[0])} is not an espalier edge")


def analyze(b: EmbeddedBandRep, t: Optional[Espalier] = None) -> InvariantReport:
    """Surface invariants of the word.

    Without an espalier, strictness means the supports connect all vertices and
    the edges reported are the distinct supports.
    """
    if t is not None:
        _check_over(b, t)
        edges = t.sorted_edges()
    else:
        edges = sorted(b.supports())
    counts = Counter(x.support for x in b.word)
    pos = Counter(x.support for x in b.word if x.sign > 0)
    summaries = tuple(EdgeSummary(e, counts[e], pos[e], counts[e] - pos[e]) for e in edges)
    comps = support_components(b)
    if t is not None:
        strict = all(s.count > 0 for s in summaries)
    else:
        strict = len(comps) == 1
    homogeneous = strict and all(s.positive == 0 or s.negative == 0 for s in summaries)
    perm = closure_permutation(b)
    c = sum(abs(s.count - 2) for s in summaries) if t is not None else None
    return InvariantReport(
        euler_characteristic=len(b.vertices) - len(b.word),
        edges=summaries,
        strict=strict,
        homogeneous=homogeneous,
        components=comps,
        permutation=perm,
        closure_components=cycle_count(perm),
        c_statistic=c,
    )


def c_statistic(b: EmbeddedBandRep, t: Espalier) -> int:
    counts = Counter(x.support for x in b.word)
    return sum(abs(counts[e] - 2) for e in t.edges)


# --- moves ------------------------------------------------------------------

class SlideVariant(enum.Enum):
    STRAIGHT_UP = "straight-up"
    BENT_DOWN = "bent-down"
    STRAIGHT_DOWN = "straight-down"
    BENT_UP = "bent-up"
    DOUBLY_BENT_UP = "doubly-bent-up"
    DOUBLY_BENT_DOWN = "doubly-bent-down"


@dataclass(frozen=True)
class Inflation:
    position: int
    new_vertex: Fraction
    anchor: Fraction
    sign: int = 1


@dataclass(frozen=True)
class Deflation:
    position: int
    vertex: Optional[Fraction] = None


@dataclass(frozen=True)
class Slip:
    position: int


@dataclass(frozen=True)
class Slide:
    position: int
    variant: SlideVariant


@dataclass(frozen=True)
class Twirl:
    new_vertex: Fraction


@dataclass(frozen=True)
class Turn:
    pass


Move = Union[Inflation, Deflation, Slip, Slide, Twirl, Turn]

# A slot is (support among pq/qr/pr for p < q < r, sign: "+", "-" or "e").
# "e" stands for the sign that the display writes as ±1, bound across the pair.
_Slot = tuple[str, str]
_Rule = tuple[_Slot, _Slot, _Slot, _Slot]

_STRAIGHT_UP: tuple[_Rule, ...] = (
    (("pq", "e"), ("qr", "+"), ("qr", "+"), ("pr", "e")),
    # the display's second form, (qr^e, pr^-) -> (pq^-, pr^e), is not a braid
    # identity (the permutations differ); this is the form that holds
    (("qr", "e"), ("pq", "-"), ("pq", "-"), ("pr", "e")),
)
_STRAIGHT_DOWN: tuple[_Rule, ...] = (
    (("pq", "+"), ("qr", "e"), ("pr", "e"), ("pq", "+")),
    (("qr", "-"), ("pq", "e"), ("pr", "e"), ("qr", "-")),
)
_DOUBLY_BENT_UP: tuple[_Rule, ...] = (
    (("qr", "e"), ("pr", "+"), ("pr", "+"), ("pq", "e")),
    (("pq", "e"), ("pr", "-"), ("pr", "-"), ("qr", "e")),
)


def _inverse_rules(rules: tuple[_Rule, ...]) -> tuple[_Rule, ...]:
    return tuple((c, d, a, b) for a, b, c, d in rules)


SLIDE_RULES: dict[SlideVariant, tuple[_Rule, ...]] = {
    SlideVariant.STRAIGHT_UP: _STRAIGHT_UP,
    SlideVariant.BENT_DOWN: _inverse_rules(_STRAIGHT_UP),
    SlideVariant.STRAIGHT_DOWN: _STRAIGHT_DOWN,
    SlideVariant.BENT_UP: _inverse_rules(_STRAIGHT_DOWN),
    SlideVariant.DOUBLY_BENT_UP: _DOUBLY_BENT_UP,
    SlideVariant.DOUBLY_BENT_DOWN: _inverse_rules(_DOUBLY_BENT_UP),
}

SLIDE_INVERSE = {
    SlideVariant.STRAIGHT_UP: SlideVariant.BENT_DOWN,
    SlideVariant.BENT_DOWN: SlideVariant.STRAIGHT_UP,
    SlideVariant.STRAIGHT_DOWN: SlideVariant.BENT_UP,
    SlideVariant.BENT_UP: SlideVariant.STRAIGHT_DOWN,
    SlideVariant.DOUBLY_BENT_UP: SlideVariant.DOUBLY_BENT_DOWN,
    SlideVariant.DOUBLY_BENT_DOWN: SlideVariant.DOUBLY_BENT_UP,
}


def _sign_code(sign: int) -> str:
    return "+" if sign > 0 else "-"


def _match_rule(x: Band, y: Band, rule: _Rule) -> Optional[tuple[Band, Band]]:
    pts = sorted({x.lo, x.hi, y.lo, y.hi})
    if len(pts) != 3:
        return None
    p, q, r = pts
    names = {(p, q): "pq", (q, r): "qr", (p, r): "pr"}
    coords = {v: k for k, v in names.items()}
    eps: Optional[int] = None
    for b, (sup, sg) in zip((x, y), rule[:2]):
        if names[b.support] != sup:
            return None
        if sg == "e":
            if eps is not None and eps != b.sign:
                return None
            eps = b.sign
        elif sg != _sign_code(b.sign):
            return None
    assert eps is not None
    out = []
    for sup, sg in rule[2:]:
        sign = eps if sg == "e" else (1 if sg == "+" else -1)
        lo, hi = coords[sup]
        out.append(Band(lo, hi, sign))
    return out[0], out[1]


def slide_pair(x: Band, y: Band, variant: SlideVariant) -> tuple[Band, Band]:
    for rule in SLIDE_RULES[variant]:
        got = _match_rule(x, y, rule)
        if got is not None:
            return got
    raise MoveError(f"{variant.value} slide: pattern mismatch for ({x}, {y})")


def _pair_at(b: EmbeddedBandRep, position: int, what: str) -> tuple[Band, Band]:
    if not 1 <= position < len(b.word):
        raise MoveError(f"{what}: position {position} needs bands at {position} and {position + 1} (word length {len(b.word)})")
    return b.word[position - 1], b.word[position]


def band_degree(b: EmbeddedBandRep, v: Fraction) -> int:
    return sum(1 for x in b.word if v in x.support)


def apply_move(b: EmbeddedBandRep, m: Move) -> EmbeddedBandRep:
    w = list(b.word)
    if isinstance(m, Slip):
        x, y = _pair_at(b, m.position, "slip")
        if x.support == y.support or classify_pair(x.support, y.support) is not PairRelation.UNLINK:
            raise MoveError(f"slip: supports {fmt_edge(x.support)} and {fmt_edge(y.support)} do not unlink")
        w[m.position - 1], w[m.position] = y, x
        return EmbeddedBandRep(b.vertices, tuple(w))
    if isinstance(m, Slide):
        x, y = _pair_at(b, m.position, f"{SlideVariant(m.variant).value} slide")
        w[m.position - 1], w[m.position] = slide_pair(x, y, SlideVariant(m.variant))
        return EmbeddedBandRep(b.vertices, tuple(w))
    if isinstance(m, Turn):
        if not w:
            raise MoveError("turn: word is empty")
        return EmbeddedBandRep(b.vertices, (w[-1], *w[:-1]))
    if isinstance(m, Twirl):
        x = coord(m.new_vertex)
        if x <= b.vertices[-1]:
            raise MoveError(f"twirl: new vertex {_fmt(x)} must exceed max vertex {_fmt(b.vertices[-1])}")
        lo = b.vertices[0]
        f = (lambda v: x if v == lo else v)
        return EmbeddedBandRep(b.vertices[1:] + (x,), tuple(band(f(t.lo), f(t.hi), t.sign) for t in w))
    if isinstance(m, Inflation):
        p, q = coord(m.new_vertex), coord(m.anchor)
        if p in b.vertices:
            raise MoveError(f"inflation: new vertex {_fmt(p)} is already present")
        if q not in b.vertices:
            raise MoveError(f"inflation: anchor {_fmt(q)} is not a vertex")
        if not 1 <= m.position <= len(w) + 1:
            raise MoveError(f"inflation: position {m.position} outside 1..{len(w) + 1}")
        w.insert(m.position - 1, band(p, q, m.sign))
        return EmbeddedBandRep(b.vertices + (p,), tuple(w))
    if isinstance(m, Deflation):
        if not 1 <= m.position <= len(w):
            raise MoveError(f"deflation: position {m.position} outside 1..{len(w)}")
        t = w[m.position - 1]
        if len(b.vertices) < 2:
            raise MoveError("deflation: nothing to remove")
        loose = [v for v in t.support if band_degree(b, v) == 1]
        if m.vertex is not None:
            v = coord(m.vertex)
            if v not in loose:
                raise MoveError(f"deflation: vertex {_fmt(v)} is not an endpoint of {t} touched by no other band")
        elif len(loose) == 1:
            v = loose[0]
        elif not loose:
            raise MoveError(f"deflation: neither endpoint of {t} is free of other bands")
        else:
            raise MoveError(f"deflation: both endpoints of {t} qualify; name the vertex")
        del w[m.position - 1]
        return EmbeddedBandRep(tuple(u for u in b.vertices if u != v), tuple(w))
    raise TypeError(f"unknown move {m!r}")


def inverse_moves(before: EmbeddedBandRep, m: Move) -> list[Move]:
    """Moves that undo ``m`` applied to ``before``."""
    if isinstance(m, Slip):
        return [Slip(m.position)]
    if isinstance(m, Slide):
        return [Slide(m.position, SLIDE_INVERSE[SlideVariant(m.variant)])]
    if isinstance(m, Turn):
        return [Turn()] * (len(before.word) - 1)
    if isinstance(m, Inflation):
        return [Deflation(m.position, coord(m.new_vertex))]
    if isinstance(m, Deflation):
        t = before.word[m.position - 1]
        after = apply_move(before, m)
        gone = (set(before.vertices) - set(after.vertices)).pop()
        anchor = t.lo if t.hi == gone else t.hi
        return [Inflation(m.position, gone, anchor, t.sign)]
    raise MoveError(f"no inverse descriptor for {type(m).__name__}")


@dataclass(frozen=True)
class MoveTrace:
    initial: EmbeddedBandRep
    steps: tuple[tuple[Move, EmbeddedBandRep], ...] = ()

    @property
    def final(self) -> EmbeddedBandRep:
        return self.steps[-1][1] if self.steps else self.initial

    def then(self, other: MoveTrace) -> MoveTrace:
        if other.initial != self.final:
            raise ValueError("traces do not chain")
        return MoveTrace(self.initial, self.steps + other.steps)

    def __len__(self) -> int:
        return len(self.steps)


@dataclass
class Tracer:
    """Append-only recorder used by the rewriting pipelines."""
    state: EmbeddedBandRep
    steps: list[tuple[Move, EmbeddedBandRep]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.initial = self.state

    def apply(self, m: Move) -> EmbeddedBandRep:
        self.state = apply_move(self.state, m)
        self.steps.append((m, self.state))
        return self.state

    def trace(self) -> MoveTrace:
        return MoveTrace(self.initial, tuple(self.steps))


# --- splitting off a terminal edge ------------------------------------------

@dataclass(frozen=True)
class TerminalSplit:
    edge: Edge
    end_vertex: Fraction
    c: EmbeddedBandRep
    d: EmbeddedBandRep
    d_espalier: Espalier
    on_edge: tuple[bool, ...]  # for each original position, whether it went to c

    def reassemble(self) -> EmbeddedBandRep:
        ci, di = iter(self.c.word), iter(self.d.word)
        word = tuple(next(ci) if flag else next(di) for flag in self.on_edge)
        vertices = tuple(sorted(set(self.d.vertices) | set(self.edge)))
        return EmbeddedBandRep(vertices, word)


def terminal_edges(t: Espalier) -> list[Edge]:
    """Terminal edges whose endpoints are adjacent in the vertex order."""
    ends = t.end_vertices()
    pos = {v: i for i, v in enumerate(t.vertices)}
    return [e for e in t.sorted_edges() if (e[0] in ends or e[1] in ends) and pos[e[1]] == pos[e[0]] + 1]


def split_at_terminal_edge(b: EmbeddedBandRep, t: Espalier) -> TerminalSplit:
    _check_over(b, t)
    if len(t.vertices) <= 2:
        raise BandwordError("splitting needs more than two vertices")
    candidates = terminal_edges(t)
    if not candidates:
        raise AssertionError("espalier without a terminal edge over adjacent vertices")
    e = candidates[0]
    ends = t.end_vertices()
    p = e[0] if e[0] in ends else e[1]
    flags = tuple(x.support == e for x in b.word)
    c = EmbeddedBandRep(e, tuple(x for x, f in zip(b.word, flags) if f))
    rest_vertices = tuple(v for v in t.vertices if v != p)
    d = EmbeddedBandRep(rest_vertices, tuple(x for x, f in zip(b.word, flags) if not f))
    try:
        sub = Espalier(rest_vertices, t.edges - {e})
    except EspalierError as exc:  # pragma: no cover - removing an end vertex keeps a tree
        raise AssertionError(str(exc)) from exc
    return TerminalSplit(e, p, c, d, sub, flags)
