"""Random generators and independent oracles shared by the test modules."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from espalier.bandword import (
    SLIDE_RULES,
    Band,
    Deflation,
    EmbeddedBandRep,
    Inflation,
    Slide,
    SlideVariant,
    Slip,
    Turn,
    Twirl,
    apply_move,
)
from espalier.braid import StandardBraidWord, words_equal
from espalier.core import Espalier, PairRelation, classify_pair
from espalier.verify import band_to_standard


def prufer_trees(n: int):
    """Every labeled tree on 0..n-1, as sorted edge lists."""
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        deg = [1] * n
        for x in seq:
            deg[x] += 1
        edges = []
        for x in seq:
            leaf = min(i for i in range(n) if deg[i] == 1)
            edges.append((min(leaf, x), max(leaf, x)))
            deg[leaf] -= 1
            deg[x] -= 1
        u, v = [i for i in range(n) if deg[i] == 1]
        edges.append((u, v))
        yield sorted(edges)


def interleaved(e, f) -> bool:
    (a, b), (c, d) = e, f
    return a < c < b < d or c < a < d < b


def noncrossing_count(n: int) -> int:
    return sum(
        1 for t in prufer_trees(n)
        if not any(interleaved(e, f) for e, f in itertools.combinations(t, 2))
    )


def random_espalier(rng: random.Random, n: int) -> Espalier:
    while True:
        xs = sorted(set(Fraction(rng.randint(-30, 30), rng.choice([1, 2, 3])) for _ in range(n)))
        if len(xs) == n:
            break
    if n == 1:
        return Espalier(tuple(xs))
    while True:
        seq = [rng.randrange(n) for _ in range(n - 2)]
        deg = [1] * n
        for x in seq:
            deg[x] += 1
        edges = []
        for x in seq:
            leaf = min(i for i in range(n) if deg[i] == 1)
            edges.append((min(leaf, x), max(leaf, x)))
            deg[leaf] -= 1
            deg[x] -= 1
        u, v = [i for i in range(n) if deg[i] == 1]
        edges.append((u, v))
        if not any(interleaved(e, f) for e, f in itertools.combinations(edges, 2)):
            return Espalier(tuple(xs), frozenset((xs[a], xs[b]) for a, b in edges))


def random_homogeneous(rng: random.Random, t: Espalier, max_len: int = 14) -> EmbeddedBandRep:
    edges = t.sorted_edges()
    signs = {e: rng.choice((1, -1)) for e in edges}
    length = rng.randint(len(edges), max(len(edges), max_len))
    pool = edges + [rng.choice(edges) for _ in range(length - len(edges))] if edges else []
    rng.shuffle(pool)
    return EmbeddedBandRep(t.vertices, tuple(Band(e[0], e[1], signs[e]) for e in pool))


def random_bandword(rng: random.Random, t: Espalier, max_len: int = 14) -> EmbeddedBandRep:
    edges = t.sorted_edges()
    if not edges:
        return EmbeddedBandRep(t.vertices)
    length = rng.randint(0, max_len)
    return EmbeddedBandRep(t.vertices, tuple(
        Band(*rng.choice(edges), rng.choice((1, -1))) for _ in range(length)))


def random_band_rep(rng: random.Random, n: int, length: int) -> EmbeddedBandRep:
    """An embedded band representation on n points with arbitrary supports."""
    xs = tuple(Fraction(i) for i in range(1, n + 1))
    word = []
    for _ in range(length):
        a, b = sorted(rng.sample(xs, 2))
        word.append(Band(a, b, rng.choice((1, -1))))
    return EmbeddedBandRep(xs, tuple(word))


def free_group_image(letters, n):
    """Artin action on the free group F_n: images of x_1..x_n as reduced words (faithful)."""

    def reduce_(w):
        out = []
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return out

    def inv(w):
        return [-x for x in reversed(w)]

    def act(i, e, w):
        out = []
        for x in w:
            k, s = abs(x), (1 if x > 0 else -1)
            if e > 0:
                im = [i, i + 1, -i] if k == i else [i] if k == i + 1 else [k]
            else:
                im = [i + 1] if k == i else [-(i + 1), i, i + 1] if k == i + 1 else [k]
            out.extend(im if s > 0 else inv(im))
        return reduce_(out)

    images = []
    for k in range(1, n + 1):
        w = [k]
        for i, e in reversed(letters):
            w = act(i, e, w)
        images.append(tuple(w))
    return tuple(images)


# --- move generators ------------------------------------------------------------

MOVE_KINDS = ("inflation", "deflation", "slip", "turn", "twirl") + tuple(v.value for v in SlideVariant)


def _rational_points(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    while True:
        xs = sorted({Fraction(rng.randint(-20, 20), rng.choice([1, 2, 3])) for _ in range(n)})
        if len(xs) == n:
            return tuple(xs)


def _random_bands(rng: random.Random, xs, length: int) -> list[Band]:
    out = []
    for _ in range(length):
        a, b = sorted(rng.sample(xs, 2))
        out.append(Band(a, b, rng.choice((1, -1))))
    return out


def _splice(rng: random.Random, xs, pair) -> tuple[EmbeddedBandRep, int]:
    word = _random_bands(rng, xs, rng.randint(0, 6))
    k = rng.randint(0, len(word))
    word[k:k] = pair
    return EmbeddedBandRep(tuple(xs), tuple(word)), k + 1


def _slide_pattern(rng: random.Random, xs, variant: SlideVariant) -> list[Band]:
    p, q, r = sorted(rng.sample(xs, 3))
    named = {"pq": (p, q), "qr": (q, r), "pr": (p, r)}
    rule = rng.choice(SLIDE_RULES[variant])
    eps = rng.choice((1, -1))
    out = []
    for sup, sg in rule[:2]:
        sign = eps if sg == "e" else (1 if sg == "+" else -1)
        out.append(Band(*named[sup], sign))
    return out


def legal_application(rng: random.Random, kind: str):
    """A random (before, move, after) whose move is legal and of the given kind."""
    n = rng.randint(4 if kind == "slip" else 3, 6)
    xs = list(_rational_points(rng, n))
    if kind == "slip":
        while True:
            a, b = sorted(rng.sample(xs, 2)), sorted(rng.sample(xs, 2))
            if a != b and classify_pair(a, b) is PairRelation.UNLINK:
                break
        before, pos = _splice(rng, xs, [Band(*a, rng.choice((1, -1))), Band(*b, rng.choice((1, -1)))])
        m = Slip(pos)
    elif kind in {v.value for v in SlideVariant}:
        before, pos = _splice(rng, xs, _slide_pattern(rng, xs, SlideVariant(kind)))
        m = Slide(pos, SlideVariant(kind))
    elif kind == "turn":
        before = EmbeddedBandRep(tuple(xs), tuple(_random_bands(rng, xs, rng.randint(1, 8))))
        m = Turn()
    elif kind == "twirl":
        before = EmbeddedBandRep(tuple(xs), tuple(_random_bands(rng, xs, rng.randint(0, 8))))
        m = Twirl(xs[-1] + Fraction(rng.randint(1, 6), rng.choice([1, 2])))
    elif kind == "inflation":
        before = EmbeddedBandRep(tuple(xs), tuple(_random_bands(rng, xs, rng.randint(0, 8))))
        while True:
            new = Fraction(rng.randint(-40, 40), rng.choice([1, 2, 3, 5]))
            if new not in xs:
                break
        m = Inflation(rng.randint(1, len(before.word) + 1), new, rng.choice(xs), rng.choice((1, -1)))
    elif kind == "deflation":
        small = EmbeddedBandRep(tuple(xs), tuple(_random_bands(rng, xs, rng.randint(0, 8))))
        while True:
            new = Fraction(rng.randint(-40, 40), rng.choice([1, 2, 3, 5]))
            if new not in xs:
                break
        pos = rng.randint(1, len(small.word) + 1)
        before = apply_move(small, Inflation(pos, new, rng.choice(xs), rng.choice((1, -1))))
        m = Deflation(pos, new)
    else:
        raise ValueError(kind)
    return before, m, apply_move(before, m)


def perturb(rng: random.Random, after: EmbeddedBandRep) -> EmbeddedBandRep:
    """Flip one band's sign or move one of its endpoints to another vertex."""
    word = list(after.word)
    k = rng.randrange(len(word))
    x = word[k]
    if rng.random() < 0.5 or len(after.vertices) < 3:
        word[k] = x.flipped()
    else:
        keep = rng.choice((x.lo, x.hi))
        other = rng.choice([v for v in after.vertices if v not in (x.lo, x.hi)])
        word[k] = Band(min(keep, other), max(keep, other), x.sign)
    return EmbeddedBandRep(after.vertices, tuple(word))


# --- relation suite ----------------------------------------------------------------

def relation_failures(n: int) -> list[str]:
    """Check the band relations on ranks 1..n; returns a description of each failure."""
    ranks = {Fraction(i): i for i in range(1, n + 1)}
    xs = sorted(ranks)

    def s(p, q, sign=1):
        return band_to_standard(Band(p, q, sign), ranks)

    ident = StandardBraidWord(n)
    bad = []
    pairs = list(itertools.combinations(xs, 2))
    for e, f in itertools.combinations(pairs, 2):
        g, h = s(*e), s(*f)
        rel = classify_pair(e, f)
        if rel is PairRelation.UNLINK:
            if not words_equal(g * h * g.inverse() * h.inverse(), ident):
                bad.append(f"commutator {e} {f}")
        elif rel is PairRelation.TOUCH:
            if not words_equal(g * h * g * h.inverse() * g.inverse() * h.inverse(), ident):
                bad.append(f"yangbaxter {e} {f}")
    for p, q, r in itertools.combinations(xs, 3):
        for sign in (1, -1):
            if not words_equal(s(p, q) * s(q, r, sign), s(p, r, sign) * s(p, q)):
                bad.append(f"triangle {p},{q},{r} sign {sign}")
    return bad


def generation_failures(t: Espalier) -> list[str]:
    """Express every band over t's vertices as a word in the bands of t's edges, then check it."""
    ranks = {v: i for i, v in enumerate(t.vertices, 1)}
    n = len(t.vertices)

    def s(e):
        return band_to_standard(Band(*e, 1), ranks)

    known: dict = {e: s(e) for e in t.edges}
    changed = True
    while changed:
        changed = False
        for e, f in itertools.combinations(sorted(known), 2):
            pts = sorted(set(e) | set(f))
            if len(pts) != 3:
                continue
            p, q, r = pts
            pq, qr, pr = (p, q), (q, r), (p, r)
            if pr not in known and pq in known and qr in known:
                known[pr] = known[pq] * known[qr] * known[pq].inverse()
            elif qr not in known and pq in known and pr in known:
                known[qr] = known[pq].inverse() * known[pr] * known[pq]
            elif pq not in known and qr in known and pr in known:
                known[pq] = known[pr].inverse() * known[qr] * known[pr]
            else:
                continue
            changed = True
    bad = [f"missing {e}" for e in itertools.combinations(t.vertices, 2) if e not in known]
    bad += [f"wrong word for {e}" for e, w in known.items() if not words_equal(w, s(e))]
    if n > 1 and any((t.vertices[i], t.vertices[i + 1]) not in known for i in range(n - 1)):
        bad.append("a standard generator is not reached")
    return bad
