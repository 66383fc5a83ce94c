"""
From a bandword over an espalier to a classification.

Homogeneous words are pushed to a star espalier by slide steps, then the edge
multiplicities are driven to exactly two by deflations and inflate-slide-slip-
slide rounds, after which each star edge carries one Hopf plumband. Every
rewrite is recorded in a :class:`MoveTrace` that replays under
:func:`espalier.verify.verify_trace`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .bandword import (
    Deflation,
    EmbeddedBandRep,
    Inflation,
    MoveTrace,
    Slide,
    SlideVariant,
    Slip,
    Tracer,
    Turn,
    analyze,
    c_statistic,
    split_at_terminal_edge,
)
from .core import (
    Edge,
    Espalier,
    TreeSlide,
    espalier_move,
    fmt_edge,
    is_star,
    midpoint_gap,
    prec_less,
    split_at_edge,
    star,
)


class NormalizeError(ValueError):
    pass


def _require_homogeneous(b: EmbeddedBandRep, t: Espalier) -> None:
    if not b.is_bandword_over(t):
        raise NormalizeError("word is not a bandword over the espalier")
    r = analyze(b, t)
    if not r.strict:
        raise NormalizeError("word is not strict")
    if not r.homogeneous:
        raise NormalizeError("word is not homogeneous")


def choose_pivot_edge(t: Espalier) -> Edge:
    """Edge e0 whose max end v is interior and which has the largest min end among edges ending at v.

    The largest such v is used.
    """
    ends = t.end_vertices()
    for v in sorted({e[1] for e in t.edges}, reverse=True):
        if v in ends:
            continue
        return max((e for e in t.edges if e[1] == v), key=lambda e: e[0])
    raise NormalizeError("espalier is already a star")


@dataclass(frozen=True)
class SlideStep:
    word: EmbeddedBandRep
    espalier: Espalier
    trace: MoveTrace
    pivot: Edge


def _bubble(tr: Tracer, lo: int, hi: int, goes_first) -> None:
    # stable partition of 0-based [lo, hi) by adjacent slips
    changed = True
    while changed:
        changed = False
        for k in range(lo, hi - 1):
            x, y = tr.state.word[k], tr.state.word[k + 1]
            if not goes_first(x) and goes_first(y):
                tr.apply(Slip(k + 1))
                changed = True


def slide_step(b: EmbeddedBandRep, t: Espalier) -> SlideStep:
    _require_homogeneous(b, t)
    if is_star(t)[0]:
        raise NormalizeError("espalier is already a star")
    e0 = choose_pivot_edge(t)
    u, v = e0
    side_u, side_v = split_at_edge(t, e0)
    target = espalier_move(t, TreeSlide(e0, v))
    sign = next(x.sign for x in b.word if x.support == e0)
    tr = Tracer(b)
    in_v = (lambda x: x.support in side_v.edges)
    in_u = (lambda x: x.support in side_u.edges)

    if sign > 0:
        while tr.state.word[0].support != e0:
            tr.apply(Turn())
        start = 0
        while True:
            w = tr.state.word
            try:
                i = next(k for k in range(start, len(w)) if w[k].support == e0)
            except StopIteration:
                break
            j = next((k for k in range(i + 1, len(w)) if w[k].support == e0), len(w))
            _bubble(tr, i + 1, j, in_v)
            k = i
            while k + 1 < len(tr.state.word) and in_v(tr.state.word[k + 1]):
                g = tr.state.word[k + 1]
                if v in g.support:
                    variant = SlideVariant.STRAIGHT_DOWN if g.lo == v else SlideVariant.BENT_DOWN
                    tr.apply(Slide(k + 1, variant))
                else:
                    tr.apply(Slip(k + 1))
                k += 1
            start = k + 1
    else:
        while tr.state.word[-1].support != e0:
            tr.apply(Turn())
        prev = -1
        while True:
            w = tr.state.word
            try:
                i = next(k for k in range(prev + 1, len(w)) if w[k].support == e0)
            except StopIteration:
                break
            _bubble(tr, prev + 1, i, in_u)
            k = i
            while k - 1 > prev and in_v(tr.state.word[k - 1]):
                g = tr.state.word[k - 1]
                if v in g.support:
                    variant = SlideVariant.STRAIGHT_UP if g.lo == v else SlideVariant.BENT_UP
                    tr.apply(Slide(k, variant))
                else:
                    tr.apply(Slip(k))
                k -= 1
            prev = i

    out = tr.state
    if not out.is_bandword_over(target):
        raise AssertionError(f"slide step left bands off the target espalier {target}")
    r = analyze(out, target)
    if not (r.strict and r.homogeneous) or not prec_less(t, target):
        raise AssertionError("slide step broke strictness, homogeneity or the order")
    return SlideStep(out, target, tr.trace(), e0)


@dataclass(frozen=True)
class StarResult:
    word: EmbeddedBandRep
    espalier: Espalier
    trace: MoveTrace
    espaliers: tuple[Espalier, ...]  # every espalier visited, the input first


def to_star(b: EmbeddedBandRep, t: Espalier) -> StarResult:
    _require_homogeneous(b, t)
    trace = MoveTrace(b)
    seen = [t]
    while not is_star(t)[0]:
        step = slide_step(b, t)
        b, t = step.word, step.espalier
        trace = trace.then(step.trace)
        seen.append(t)
    return StarResult(b, t, trace, tuple(seen))


@dataclass(frozen=True)
class ReduceResult:
    word: EmbeddedBandRep
    espalier: Espalier
    trace: MoveTrace
    c_values: tuple[int, ...]


def _round(tr: Tracer, x: Fraction, v: Fraction) -> None:
    """One pass lowering the use count of edge {x, v} by one (count >= 3)."""
    word = tr.state.word
    e0 = (x, v)
    occ = [k for k, b in enumerate(word) if b.support == e0][:3]
    i1, i2, i3 = occ
    w = midpoint_gap(tr.state.vertices, v)
    if word[i1].sign > 0:
        tr.apply(Inflation(i2 + 2, w, v, 1))
        tr.apply(Slide(i2 + 1, SlideVariant.STRAIGHT_UP))
        for k in range(i2, i1 + 1, -1):
            tr.apply(Slip(k))
        tr.apply(Slide(i1 + 1, SlideVariant.STRAIGHT_DOWN))
    else:
        tr.apply(Inflation(i2 + 1, w, v, -1))
        tr.apply(Slide(i2 + 1, SlideVariant.STRAIGHT_DOWN))
        for k in range(i2 + 1, i3):
            tr.apply(Slip(k + 1))
        tr.apply(Slide(i3 + 1, SlideVariant.STRAIGHT_UP))


def reduce_c(b: EmbeddedBandRep, t: Espalier) -> ReduceResult:
    _require_homogeneous(b, t)
    if not is_star(t)[0]:
        raise NormalizeError("reduce_c needs a star espalier")
    tr = Tracer(b)
    cs = [c_statistic(b, t)]
    while cs[-1] > 0:
        counts = Counter(x.support for x in tr.state.word)
        e0 = min((e for e in t.edges if counts[e] != 2), key=lambda e: e[1])
        if counts[e0] == 1:
            pos = next(k for k, x in enumerate(tr.state.word) if x.support == e0) + 1
            tr.apply(Deflation(pos, e0[1]))
        else:
            _round(tr, *e0)
        t = star(tr.state.vertices)
        cs.append(c_statistic(tr.state, t))
        if cs[-1] != cs[-2] - 1:
            raise AssertionError("c statistic did not drop by exactly one")
    return ReduceResult(tr.state, t, tr.trace(), tuple(cs))


# --- baskets -----------------------------------------------------------------

@dataclass(frozen=True)
class Plumband:
    edge_max_vertex: Fraction
    twist: int
    arc: tuple[int, int]


@dataclass(frozen=True)
class BasketPresentation:
    star_vertices: tuple[Fraction, ...]
    plumbands: tuple[Plumband, ...]
    euler_characteristic: int


def extract_basket(b: EmbeddedBandRep) -> BasketPresentation:
    t = star(b.vertices)
    if not b.is_bandword_over(t):
        raise NormalizeError("word is not over the star espalier of its vertices")
    r = analyze(b, t)
    if not r.homogeneous:
        raise NormalizeError("word is not homogeneous")
    if r.c_statistic != 0:
        raise NormalizeError(f"c statistic is {r.c_statistic}, not 0")
    root = b.vertices[0]
    bands = []
    for x in b.vertices[1:]:
        pos = [k for k, y in enumerate(b.word, 1) if y.support == (root, x)]
        sign = b.word[pos[0] - 1].sign
        bands.append(Plumband(x, -1 if sign > 0 else 1, (pos[0], pos[-1])))
    return BasketPresentation(b.vertices, tuple(bands), len(b.vertices) - len(b.word))


# --- classification ------------------------------------------------------------

@dataclass(frozen=True)
class Fibered:
    basket: BasketPresentation
    trace: MoveTrace
    kind = "fibered"


@dataclass(frozen=True)
class CompressionWitness:
    edge: Edge
    subword: tuple  # bands on ``edge`` in word order
    pair: tuple[int, int]  # cyclically adjacent, opposite signs, 1-based in ``subword``
    positions: tuple[int, int]  # the same two bands, 1-based in the input word
    sides: str = "both"


@dataclass(frozen=True)
class Compressible:
    witness: CompressionWitness
    kind = "compressible"


@dataclass(frozen=True)
class Disconnected:
    partition: tuple[tuple[Fraction, ...], ...]
    kind = "disconnected"


Classification = Union[Fibered, Compressible, Disconnected]


def _adjacent_opposite(signs: list[int]) -> tuple[int, int]:
    m = len(signs)
    for i in range(m):
        if signs[i] != signs[(i + 1) % m]:
            return i + 1, (i + 1) % m + 1
    raise AssertionError("sub-word is homogeneous")


def compressibility_witness(b: EmbeddedBandRep, t: Espalier) -> CompressionWitness:
    r = analyze(b, t)
    if not r.strict:
        raise NormalizeError("word is not strict")
    if r.homogeneous:
        raise NormalizeError("word is homogeneous; there is no compression witness")
    positions = list(range(1, len(b.word) + 1))
    while len(t.vertices) > 2:
        split = split_at_terminal_edge(b, t)
        c_pos = [p for p, f in zip(positions, split.on_edge) if f]
        if len({x.sign for x in split.c.word}) > 1:
            b, t, positions = split.c, Espalier(split.c.vertices, frozenset({split.edge})), c_pos
            break
        positions = [p for p, f in zip(positions, split.on_edge) if not f]
        b, t = split.d, split.d_espalier
    (e,) = t.edges
    signs = [x.sign for x in b.word]
    i, j = _adjacent_opposite(signs)
    return CompressionWitness(e, b.word, (i, j), (positions[i - 1], positions[j - 1]))


def classify(b: EmbeddedBandRep, t: Espalier) -> Classification:
    """Fibered, compressible or disconnected; fibered results carry a verified-able trace."""
    r = analyze(b, t)
    if len(t.vertices) == 1:
        return Fibered(BasketPresentation(t.vertices, (), r.euler_characteristic), MoveTrace(b))
    if not r.strict:
        return Disconnected(r.components)
    if not r.homogeneous:
        return Compressible(compressibility_witness(b, t))
    s = to_star(b, t)
    red = reduce_c(s.word, s.espalier)
    return Fibered(extract_basket(red.word), s.trace.then(red.trace))


def describe(c: Classification) -> str:
    if isinstance(c, Fibered):
        tw = ", ".join(f"{p.twist:+d}" for p in c.basket.plumbands)
        return f"fibered: {len(c.basket.plumbands)} Hopf plumbands ({tw})"
    if isinstance(c, Compressible):
        return f"compressible: opposite signs at {c.witness.positions} on {fmt_edge(c.witness.edge)}"
    return f"disconnected: {len(c.partition)} components"
