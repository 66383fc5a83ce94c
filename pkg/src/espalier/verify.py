"""
Checking rewrites in the braid group.

A band on vertex ranks a < b is sent to the conjugate
``(s_a ... s_{b-2}) s_{b-1} (s_a ... s_{b-2})^-1`` of a standard generator.
This is the one of the two natural conventions for which
``σ_{p,q} σ_{q,r}^{±1} = σ_{p,r}^{±1} σ_{p,q}`` holds for p < q < r; the
relation tests pin it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bandword import (
    Band,
    Deflation,
    EmbeddedBandRep,
    Inflation,
    Move,
    MoveError,
    MoveTrace,
    Slide,
    Slip,
    Turn,
    Twirl,
    apply_move,
    band,
)
from .braid import StandardBraidWord, words_equal
from .core import coord


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""
    step: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


OK = Verdict(True)


def band_to_standard(b: Band, ranks: dict[Fraction, int]) -> StandardBraidWord:
    try:
        i, j = ranks[b.lo], ranks[b.hi]
    except KeyError as exc:
        raise ValueError(f"band {b} has a vertex outside the rank map") from exc
    n = max(ranks.values())
    prefix = tuple((k, 1) for k in range(i, j - 1))
    letters = prefix + ((j - 1, 1),) + tuple((k, -1) for k, _ in reversed(prefix))
    w = StandardBraidWord(n, letters)
    return w if b.sign > 0 else w.inverse()


def braid_of(b: EmbeddedBandRep) -> StandardBraidWord:
    ranks = b.ranks()
    letters: list[tuple[int, int]] = []
    for x in b.word:
        letters.extend(band_to_standard(x, ranks).letters)
    return StandardBraidWord(len(b.vertices), tuple(letters))


def rotation(n: int) -> StandardBraidWord:
    """s_1 s_2 ... s_{n-1}; a twirl conjugates by this braid."""
    return StandardBraidWord(n, tuple((k, 1) for k in range(1, n)))


def _drop(b: EmbeddedBandRep, position: int, vertex: Fraction) -> EmbeddedBandRep:
    return EmbeddedBandRep(
        tuple(v for v in b.vertices if v != vertex),
        b.word[: position - 1] + b.word[position:],
    )


def _check_stabilization(small: EmbeddedBandRep, big: EmbeddedBandRep, position: int,
                         vertex: Fraction, anchor: Optional[Fraction], sign: Optional[int]) -> Verdict:
    if set(big.vertices) != set(small.vertices) | {vertex} or vertex in small.vertices:
        return Verdict(False, "vertex sets do not differ by exactly the stabilizing vertex")
    if not 1 <= position <= len(big.word):
        return Verdict(False, "stabilizing position out of range")
    t = big.word[position - 1]
    if vertex not in t.support:
        return Verdict(False, f"band {t} at position {position} does not meet the new vertex")
    if anchor is not None and set(t.support) != {vertex, anchor}:
        return Verdict(False, f"band {t} is not on the named anchor")
    if sign is not None and t.sign != sign:
        return Verdict(False, f"band {t} has the wrong sign")
    if any(vertex in x.support for i, x in enumerate(big.word) if i != position - 1):
        return Verdict(False, "new vertex is touched by another band")
    if _drop(big, position, vertex) != small:
        return Verdict(False, "deleting the stabilizing band does not recover the smaller word")
    return OK


def verify_move(before: EmbeddedBandRep, after: EmbeddedBandRep, m: Move) -> Verdict:
    """Check the algebraic contract of a single move."""
    if isinstance(m, (Slip, Slide)):
        if before.vertices != after.vertices:
            return Verdict(False, "slip/slide changed the vertex set")
        if not words_equal(braid_of(before), braid_of(after)):
            return Verdict(False, "braid(before) != braid(after)")
        return OK
    if isinstance(m, Turn):
        if before.vertices != after.vertices or not before.word:
            return Verdict(False, "turn needs a nonempty word on a fixed vertex set")
        c = band_to_standard(before.word[-1], before.ranks())
        if not words_equal(braid_of(after), c * braid_of(before) * c.inverse()):
            return Verdict(False, "braid(after) != c braid(before) c^-1 for the rotated band c")
        return OK
    if isinstance(m, Twirl):
        x = coord(m.new_vertex)
        lo = before.vertices[0]
        if x <= before.vertices[-1] or after.vertices != before.vertices[1:] + (x,):
            return Verdict(False, "twirl vertex sets are inconsistent")
        if len(after.word) != len(before.word):
            return Verdict(False, "twirl changed the word length")
        for s, (p, q) in enumerate(zip(before.word, after.word), 1):
            f = (lambda v: x if v == lo else v)
            if band(f(p.lo), f(p.hi), p.sign) != q:
                return Verdict(False, f"band {s} is not the renaming of {p}")
        d = rotation(len(before.vertices))
        if not words_equal(braid_of(after), d.inverse() * braid_of(before) * d):
            return Verdict(False, "standardized braid(after) != d^-1 braid(before) d")
        return OK
    if isinstance(m, Inflation):
        return _check_stabilization(before, after, m.position, coord(m.new_vertex), coord(m.anchor), m.sign)
    if isinstance(m, Deflation):
        gone = set(before.vertices) - set(after.vertices)
        if len(gone) != 1:
            return Verdict(False, "deflation must remove exactly one vertex")
        v = gone.pop()
        if m.vertex is not None and coord(m.vertex) != v:
            return Verdict(False, "deflation removed a vertex other than the named one")
        return _check_stabilization(after, before, m.position, v, None, None)
    return Verdict(False, f"unknown move {m!r}")


def verify_trace(t: MoveTrace) -> Verdict:
    """Replay every step and check its contract; report the first failing step (1-based)."""
    state = t.initial
    for k, (m, recorded) in enumerate(t.steps, 1):
        try:
            replayed = apply_move(state, m)
        except MoveError as exc:
            return Verdict(False, f"move does not apply: {exc}", k)
        if replayed != recorded:
            return Verdict(False, "recorded word differs from the replayed move", k)
        v = verify_move(state, recorded, m)
        if not v:
            return Verdict(False, v.reason, k)
        state = recorded
    return OK
