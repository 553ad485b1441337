"""Multi-index combinatorics for symmetric tensor algebra.

Two index pictures are used throughout the package and this module owns the
dictionary between them:

* an ordered multi-index ``I = (i_1, ..., i_l)`` lists axis numbers, 1-based,
  one per tensor slot, repetitions allowed in any order;
* a cardinality index records, for each axis ``r`` of the space, how many
  times ``r`` occurs in ``I``.  Cardinality indices label the slots of a
  compressed symmetric tensor and the monomials of a polynomial.

Non-decreasing multi-indices are ranked in graded colexicographic order via
the combinatorial number system, which gives dense array addressing for
compressed symmetric storage: the slot count for degree ``l`` in dimension
``n`` is ``C(n + l - 1, l)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

#: Largest slot count for which permutation-group enumeration is allowed.
#: Operations that sum over all l! permutations refuse larger degrees.
PERMUTATION_CAP = 8


@dataclass(frozen=True)
class MultiIndex:
    """Ordered multi-index: a tuple of 1-based axis numbers in dimension n."""

    entries: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if self.n < 1:
            raise ValueError(f"dimension must be positive, got {self.n}")
        for e in self.entries:
            if not 1 <= e <= self.n:
                raise ValueError(f"axis {e} out of range 1..{self.n}")

    @property
    def degree(self) -> int:
        return len(self.entries)

    def sorted(self) -> "MultiIndex":
        """The non-decreasing rearrangement, i.e. the canonical class member."""
        return MultiIndex(tuple(sorted(self.entries)), self.n)

    def is_nondecreasing(self) -> bool:
        return all(a <= b for a, b in zip(self.entries, self.entries[1:]))

    def concat(self, other: "MultiIndex") -> "MultiIndex":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return MultiIndex(self.entries + other.entries, self.n)

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)


@dataclass(frozen=True)
class CardinalityIndex:
    """Occurrence counts per axis; the unordered shadow of a multi-index.

    ``counts[r-1]`` says how many slots carry axis ``r``.  The length of
    ``counts`` is the space dimension.
    """

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if not self.counts:
            raise ValueError("cardinality index needs at least one axis")
        for c in self.counts:
            if c < 0:
                raise ValueError(f"negative count {c}")

    @classmethod
    def zero(cls, n: int) -> "CardinalityIndex":
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, axis: int) -> "CardinalityIndex":
        if not 1 <= axis <= n:
            raise ValueError(f"axis {axis} out of range 1..{n}")
        return cls(tuple(int(r == axis) for r in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def degree(self) -> int:
        return sum(self.counts)

    def canonical(self) -> MultiIndex:
        """The non-decreasing multi-index with these counts."""
        entries: list[int] = []
        for axis, count in enumerate(self.counts, start=1):
            entries.extend([axis] * count)
        return MultiIndex(tuple(entries), self.n)

    def __add__(self, other: "CardinalityIndex") -> "CardinalityIndex":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return CardinalityIndex(tuple(a + b for a, b in zip(self.counts, other.counts)))

    def __sub__(self, other: "CardinalityIndex") -> "CardinalityIndex":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        if not other <= self:
            raise ValueError(f"{other.counts} is not dominated by {self.counts}")
        return CardinalityIndex(tuple(a - b for a, b in zip(self.counts, other.counts)))

    def __le__(self, other: "CardinalityIndex") -> bool:
        """Componentwise domination; a partial order, not a total one."""
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return all(a <= b for a, b in zip(self.counts, other.counts))

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.counts)


@dataclass(frozen=True)
class Permutation:
    """A bijection of slot positions 1..l, stored as the image tuple.

    ``mapping[r-1]`` is the image of position ``r``.  Acting on a multi-index
    rearranges slots: the entry at position ``r`` of ``p(I)`` is ``I[p(r)]``.
    """

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "mapping", tuple(int(v) for v in self.mapping))
        if sorted(self.mapping) != list(range(1, len(self.mapping) + 1)):
            raise ValueError(f"{self.mapping} is not a permutation of 1..{len(self.mapping)}")

    @classmethod
    def identity(cls, l: int) -> "Permutation":
        return cls(tuple(range(1, l + 1)))

    @property
    def degree(self) -> int:
        return len(self.mapping)

    def __call__(self, position: int) -> int:
        if not 1 <= position <= self.degree:
            raise ValueError(f"position {position} out of range 1..{self.degree}")
        return self.mapping[position - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """Function composition self after other: ``(self.compose(other))(r) = self(other(r))``."""
        if other.degree != self.degree:
            raise ValueError("length mismatch")
        return Permutation(tuple(self.mapping[v - 1] for v in other.mapping))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for r, v in enumerate(self.mapping, start=1):
            inv[v - 1] = r
        return Permutation(tuple(inv))


IndexLike = Union[MultiIndex, CardinalityIndex, Sequence[int]]


def cardinality(index: MultiIndex) -> CardinalityIndex:
    """Occurrence counts of the axes of an ordered multi-index."""
    counts = [0] * index.n
    for e in index.entries:
        counts[e - 1] += 1
    return CardinalityIndex(tuple(counts))


def mi_factorial(card: CardinalityIndex) -> int:
    """Product of the factorials of the counts."""
    result = 1
    for c in card.counts:
        result *= math.factorial(c)
    return result


def multiplicity(card: CardinalityIndex) -> int:
    """Number of ordered multi-indices with these counts: degree! over counts!."""
    return math.factorial(card.degree) // mi_factorial(card)


def apply_permutation(p: Permutation, index: MultiIndex) -> MultiIndex:
    """Slot rearrangement: entry ``r`` of the result is ``index[p(r)]``.

    Acting twice composes contravariantly: applying ``p1`` then ``p2``
    equals applying ``p1.compose(p2)`` once.
    """
    if p.degree != index.degree:
        raise ValueError("length mismatch")
    return MultiIndex(tuple(index.entries[v - 1] for v in p.mapping), index.n)


def kron_delta(left: MultiIndex, right: MultiIndex) -> int:
    """1 if the two ordered multi-indices agree slot by slot, else 0."""
    if left.degree != right.degree:
        raise ValueError("length mismatch")
    return int(left.entries == right.entries)


def epsilon_abs(left: MultiIndex, right: MultiIndex) -> int:
    """1 if ``right`` is a rearrangement of ``left``, else 0.

    Indices of different lengths never match.  This is the unsigned
    permutation indicator that drives symmetrization and inclusion.
    """
    if left.degree != right.degree:
        return 0
    return int(sorted(left.entries) == sorted(right.entries))


def permutations_of(l: int, cap: int = PERMUTATION_CAP) -> Iterator[Permutation]:
    """All l! slot permutations. Refuses degrees above the cap."""
    if l < 0:
        raise ValueError(f"negative degree {l}")
    if l > cap:
        raise ValueError(f"degree {l} exceeds permutation cap {cap}")
    for mapping in itertools.permutations(range(1, l + 1)):
        yield Permutation(mapping)


def sym_dim(n: int, l: int) -> int:
    """Number of degree-l compressed slots in dimension n: C(n + l - 1, l)."""
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if l < 0:
        raise ValueError(f"negative degree {l}")
    return math.comb(n + l - 1, l)


def _colex_sequences(n: int, l: int) -> Iterator[tuple[int, ...]]:
    if l == 0:
        yield ()
        return
    for last in range(1, n + 1):
        for head in _colex_sequences(last, l - 1):
            yield head + (last,)


def enumerate_nondecreasing(n: int, l: int) -> list[CardinalityIndex]:
    """All degree-l cardinality indices in dimension n, in graded colex order
    of their canonical non-decreasing multi-indices."""
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if l < 0:
        raise ValueError(f"negative degree {l}")
    return [cardinality(MultiIndex(seq, n)) for seq in _colex_sequences(n, l)]


def rank(card: CardinalityIndex) -> int:
    """Colex rank of the canonical non-decreasing multi-index.

    With entries ``i_1 <= ... <= i_l`` the rank is the combinatorial number
    system value ``sum_j C(i_j + j - 2, j)``.
    """
    entries = card.canonical().entries
    return sum(math.comb(i + j - 2, j) for j, i in enumerate(entries, start=1))


def unrank(n: int, l: int, r: int) -> CardinalityIndex:
    """Inverse of :func:`rank` at fixed dimension and degree."""
    total = sym_dim(n, l)
    if not 0 <= r < total:
        raise ValueError(f"rank {r} out of range 0..{total - 1}")
    remaining = r
    entries = [0] * l
    for j in range(l, 0, -1):
        c = j - 1
        while math.comb(c + 1, j) <= remaining:
            c += 1
        remaining -= math.comb(c, j)
        entries[j - 1] = c - j + 2
    return cardinality(MultiIndex(tuple(entries), n))


def as_cardinality(index: IndexLike, n: int) -> CardinalityIndex:
    """Normalize a slot label to a cardinality index in dimension n.

    Accepts a CardinalityIndex, a MultiIndex, or a raw sequence of 1-based
    axis numbers.
    """
    if isinstance(index, CardinalityIndex):
        if index.n != n:
            raise ValueError("dimension mismatch")
        return index
    if isinstance(index, MultiIndex):
        if index.n != n:
            raise ValueError("dimension mismatch")
        return cardinality(index)
    return cardinality(MultiIndex(tuple(index), n))
