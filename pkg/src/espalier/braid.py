"""
Words in the standard generators of the braid group B_n, and a decision
procedure for the word problem.

A braid is brought to left Garside normal form  Δ^p · A_1 ··· A_k  where each
A_i is a positive permutation braid (a *simple* element), stored as the tuple
``fin`` with ``fin[x]`` the bottom position of the strand that starts at top
position ``x`` (0-based). Two words are equal in B_n iff their normal forms
coincide, so :func:`words_equal` is complete rather than heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Letter = tuple[int, int]  # (generator index 1..n-1, exponent +1 or -1)
Simple = tuple[int, ...]


class StrandMismatch(ValueError):
    pass


@dataclass(frozen=True)
class StandardBraidWord:
    strand_count: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        if self.strand_count < 1:
            raise ValueError("strand_count must be positive")
        object.__setattr__(self, "letters", tuple((int(i), int(e)) for i, e in self.letters))
        for i, e in self.letters:
            if not 1 <= i < self.strand_count:
                raise ValueError(f"generator index {i} out of range for {self.strand_count} strands")
            if e not in (1, -1):
                raise ValueError(f"exponent must be +1 or -1, got {e}")

    def __mul__(self, other: StandardBraidWord) -> StandardBraidWord:
        _same_strands(self, other)
        return StandardBraidWord(self.strand_count, self.letters + other.letters)

    def inverse(self) -> StandardBraidWord:
        return StandardBraidWord(self.strand_count, tuple((i, -e) for i, e in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def exponent_sum(self) -> int:
        return sum(e for _, e in self.letters)

    def permutation(self) -> tuple[int, ...]:
        """Final position of each strand (0-based), ignoring crossing signs."""
        fin = list(range(self.strand_count))
        for i, _ in self.letters:
            fin = [i if f == i - 1 else i - 1 if f == i else f for f in fin]
        return tuple(fin)

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(f"s{i}" if e > 0 else f"S{i}" for i, e in self.letters)


def word(n: int, letters: Iterable[int]) -> StandardBraidWord:
    """Build a word from signed indices, e.g. ``word(3, [1, -2])`` is s1 s2^-1."""
    return StandardBraidWord(n, tuple((abs(x), 1 if x > 0 else -1) for x in letters))


def _same_strands(a: StandardBraidWord, b: StandardBraidWord) -> None:
    if a.strand_count != b.strand_count:
        raise StrandMismatch(f"strand counts differ: {a.strand_count} vs {b.strand_count}")


# --- simple elements ---------------------------------------------------------

def _identity(n: int) -> Simple:
    return tuple(range(n))


def _delta(n: int) -> Simple:
    return tuple(range(n - 1, -1, -1))


def _inverse_perm(fin: Simple) -> Simple:
    inv = [0] * len(fin)
    for x, y in enumerate(fin):
        inv[y] = x
    return tuple(inv)


def _starting_set(fin: Simple) -> set[int]:
    return {i for i in range(1, len(fin)) if fin[i - 1] > fin[i]}


def _finishing_set(fin: Simple) -> set[int]:
    inv = _inverse_perm(fin)
    return {i for i in range(1, len(fin)) if inv[i - 1] > inv[i]}


def _times_generator(fin: Simple, i: int) -> Simple:
    # A·σ_i: swap the bottom positions i-1, i
    a, b = i - 1, i
    return tuple(b if f == a else a if f == b else f for f in fin)


def _generator_times(fin: Simple, i: int) -> Simple:
    # σ_i^{-1}·B for i in S(B): swap the top positions i-1, i
    out = list(fin)
    out[i - 1], out[i] = out[i], out[i - 1]
    return tuple(out)


def _tau(fin: Simple) -> Simple:
    # Δ^{-1} A Δ, which equals Δ A Δ^{-1}
    n = len(fin)
    return tuple(n - 1 - fin[n - 1 - x] for x in range(n))


def _complement_of_generator(n: int, i: int) -> Simple:
    # X with Δ = X σ_i, so σ_i^{-1} = Δ^{-1} X
    return _times_generator(_delta(n), i)


def _normalize_pair(a: Simple, b: Simple) -> tuple[Simple, Simple]:
    """Left-weight the pair: move generators from the front of b to the back of a."""
    ainv = list(_inverse_perm(a))
    bl = list(b)
    n = len(bl)
    i = 1
    moved = False
    while i < n:
        # i in S(b) and i not in F(a)
        if bl[i - 1] > bl[i] and ainv[i - 1] < ainv[i]:
            bl[i - 1], bl[i] = bl[i], bl[i - 1]
            ainv[i - 1], ainv[i] = ainv[i], ainv[i - 1]
            moved = True
            i = max(1, i - 1)
        else:
            i += 1
    if not moved:
        return a, b
    return _inverse_perm(tuple(ainv)), tuple(bl)


@dataclass(frozen=True)
class NormalForm:
    strand_count: int
    infimum: int
    factors: tuple[Simple, ...]


def normal_form(w: StandardBraidWord) -> NormalForm:
    n = w.strand_count
    if n == 1:
        return NormalForm(1, 0, ())
    ident, delta = _identity(n), _delta(n)
    power = 0
    factors: list[Simple] = []

    def push(c: Simple) -> None:
        factors.append(c)
        for j in range(len(factors) - 1, 0, -1):
            a, b = _normalize_pair(factors[j - 1], factors[j])
            if (a, b) == (factors[j - 1], factors[j]):
                break
            factors[j - 1], factors[j] = a, b

    for i, e in w.letters:
        if e > 0:
            g = list(ident)
            g[i - 1], g[i] = g[i], g[i - 1]
            push(tuple(g))
        else:
            # A_1..A_k Δ^{-1} = Δ^{-1} τ(A_1)..τ(A_k); τ preserves left-weightedness
            power -= 1
            factors[:] = [_tau(f) for f in factors]
            push(_complement_of_generator(n, i))
        while factors and factors[0] == delta:
            factors.pop(0)
            power += 1
        while factors and factors[-1] == ident:
            factors.pop()
    return NormalForm(n, power, tuple(factors))


def free_reduce(letters: Sequence[Letter]) -> list[Letter]:
    out: list[Letter] = []
    for i, e in letters:
        if out and out[-1] == (i, -e):
            out.pop()
        else:
            out.append((i, e))
    return out


def words_equal(w1: StandardBraidWord, w2: StandardBraidWord) -> bool:
    """Decide equality in B_n.

    Exponent sum and permutation reject cheaply; a shared prefix and suffix are
    cancelled before both sides are brought to normal form.
    """
    _same_strands(w1, w2)
    if w1.exponent_sum() != w2.exponent_sum() or w1.permutation() != w2.permutation():
        return False
    a, b = free_reduce(w1.letters), free_reduce(w2.letters)
    if a == b:
        return True
    k = 0
    while k < min(len(a), len(b)) and a[k] == b[k]:
        k += 1
    a, b = a[k:], b[k:]
    k = 0
    while k < min(len(a), len(b)) and a[-1 - k] == b[-1 - k]:
        k += 1
    if k:
        a, b = a[:-k], b[:-k]
    n = w1.strand_count
    return normal_form(StandardBraidWord(n, tuple(a))) == normal_form(StandardBraidWord(n, tuple(b)))


def is_identity(w: StandardBraidWord) -> bool:
    return words_equal(w, StandardBraidWord(w.strand_count))


def simple_to_word(fin: Simple) -> StandardBraidWord:
    """A positive word for a permutation braid (bubble sort of the top order)."""
    n = len(fin)
    order = list(_inverse_perm(fin))  # strand occupying each bottom position
    target = list(range(n))
    cur = target[:]
    letters: list[Letter] = []
    # bring strands into bottom order by adjacent swaps of inverted neighbours
    rank = {s: order.index(s) for s in range(n)}
    changed = True
    while changed:
        changed = False
        for i in range(1, n):
            if rank[cur[i - 1]] > rank[cur[i]]:
                cur[i - 1], cur[i] = cur[i], cur[i - 1]
                letters.append((i, 1))
                changed = True
    return StandardBraidWord(n, tuple(letters))


def normal_form_word(nf: NormalForm) -> StandardBraidWord:
    n = nf.strand_count
    delta = simple_to_word(_delta(n)) if n > 1 else StandardBraidWord(1)
    out = StandardBraidWord(n)
    step = delta if nf.infimum >= 0 else delta.inverse()
    for _ in range(abs(nf.infimum)):
        out = out * step
    for f in nf.factors:
        out = out * simple_to_word(f)
    return out


def concat(n: int, words: Sequence[StandardBraidWord]) -> StandardBraidWord:
    out = StandardBraidWord(n)
    for w in words:
        out = out * w
    return out
