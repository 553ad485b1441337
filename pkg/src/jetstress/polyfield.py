"""Polynomial maps with exact rational coefficients.

A polynomial in n variables is a finite sum of monomials labeled by
cardinality indices: the index with counts ``(I_1, ..., I_n)`` labels
``(x^1)**I_1 * ... * (x^n)**I_n``.  Coefficients are exact rationals, so
evaluation, differentiation, Taylor expansion, and integration over boxes
are all exact.

A ``PolyField`` is a tuple of m such polynomials, a polynomial map from the
n-dimensional space to an m-dimensional value space.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .multiindex import (
    CardinalityIndex,
    IndexLike,
    MultiIndex,
    cardinality,
    enumerate_nondecreasing,
    mi_factorial,
    rank,
)

Scalar = Fraction | int | str


def _as_counts(index: IndexLike, n: int) -> CardinalityIndex:
    """Normalize a monomial label to a cardinality index.

    Polynomials label monomials by exponent counts, so a raw sequence here
    is a count vector, not a list of axis numbers.
    """
    if isinstance(index, CardinalityIndex):
        card = index
    elif isinstance(index, MultiIndex):
        card = cardinality(index)
    else:
        card = CardinalityIndex(tuple(index))
    if card.n != n:
        raise ValueError("dimension mismatch")
    return card


@dataclass(frozen=True)
class Point:
    """Position in the n-dimensional source space, exact coordinates."""

    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coords = tuple(Fraction(c) for c in self.coords)
        if not coords:
            raise ValueError("point needs at least one coordinate")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def origin(cls, n: int) -> "Point":
        return cls((Fraction(0),) * n)

    @property
    def n(self) -> int:
        return len(self.coords)


def _term_sort_key(item: tuple[CardinalityIndex, Fraction]) -> tuple[int, int]:
    card = item[0]
    return (card.degree, rank(card))


@dataclass(frozen=True)
class Polynomial:
    """Exact polynomial in n variables, stored as canonically sorted terms.

    Terms with zero coefficient are dropped at construction, so equality of
    two polynomials is equality of their coefficient maps.
    """

    n: int
    terms: tuple[tuple[CardinalityIndex, Fraction], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"dimension must be positive, got {self.n}")
        cleaned: dict[CardinalityIndex, Fraction] = {}
        for card, coeff in self.terms:
            if card.n != self.n:
                raise ValueError("term dimension mismatch")
            value = Fraction(coeff)
            if value != 0:
                if card in cleaned:
                    raise ValueError(f"duplicate term {card}")
                cleaned[card] = value
        ordered = tuple(sorted(cleaned.items(), key=_term_sort_key))
        object.__setattr__(self, "terms", ordered)

    @classmethod
    def from_map(cls, n: int, coeffs: Mapping[IndexLike, Scalar]) -> "Polynomial":
        """Build from a coefficient map keyed by exponent count vectors."""
        acc: dict[CardinalityIndex, Fraction] = {}
        for key, value in coeffs.items():
            card = _as_counts(key, n)
            acc[card] = acc.get(card, Fraction(0)) + Fraction(value)
        return cls(n, tuple(acc.items()))

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n, ())

    @classmethod
    def constant(cls, n: int, value: Scalar) -> "Polynomial":
        return cls(n, ((CardinalityIndex.zero(n), Fraction(value)),))

    @classmethod
    def variable(cls, n: int, axis: int) -> "Polynomial":
        return cls(n, ((CardinalityIndex.unit(n, axis), Fraction(1)),))

    @classmethod
    def monomial(cls, card: CardinalityIndex, coeff: Scalar = 1) -> "Polynomial":
        return cls(card.n, ((card, Fraction(coeff)),))

    def coeff(self, index: IndexLike) -> Fraction:
        """Coefficient of the monomial with the given exponent counts."""
        card = _as_counts(index, self.n)
        for term_card, value in self.terms:
            if term_card == card:
                return value
        return Fraction(0)

    def coeff_map(self) -> dict[CardinalityIndex, Fraction]:
        return dict(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial reports 0."""
        return max((card.degree for card, _ in self.terms), default=0)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        acc = dict(self.terms)
        for card, coeff in other.terms:
            acc[card] = acc.get(card, Fraction(0)) + coeff
        return Polynomial(self.n, tuple(acc.items()))

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n, tuple((card, -coeff) for card, coeff in self.terms))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if not isinstance(other, Polynomial):
            factor = Fraction(other)
            return Polynomial(self.n, tuple((card, factor * c) for card, c in self.terms))
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        acc: dict[CardinalityIndex, Fraction] = {}
        for card_a, coeff_a in self.terms:
            for card_b, coeff_b in other.terms:
                key = card_a + card_b
                acc[key] = acc.get(key, Fraction(0)) + coeff_a * coeff_b
        return Polynomial(self.n, tuple(acc.items()))

    __rmul__ = __mul__

    def power(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError(f"negative exponent {exponent}")
        result = Polynomial.constant(self.n, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __call__(self, point: Point | Sequence[Scalar]) -> Fraction:
        coords = point.coords if isinstance(point, Point) else tuple(Fraction(c) for c in point)
        if len(coords) != self.n:
            raise ValueError("point dimension mismatch")
        total = Fraction(0)
        for card, coeff in self.terms:
            value = coeff
            for coord, count in zip(coords, card.counts):
                if count:
                    value *= coord**count
            total += value
        return total

    def derive(self, order: IndexLike) -> "Polynomial":
        """Iterated partial derivative, one differentiation per count.

        A monomial contributes only when its exponents dominate the
        requested order; the surviving coefficient picks up the falling
        factorial of each exponent.  The order is an exponent count vector.
        """
        card_j = _as_counts(order, self.n)
        acc: dict[CardinalityIndex, Fraction] = {}
        for card_i, coeff in self.terms:
            if not card_j <= card_i:
                continue
            factor = 1
            for i_count, j_count in zip(card_i.counts, card_j.counts):
                for step in range(j_count):
                    factor *= i_count - step
            key = card_i - card_j
            acc[key] = acc.get(key, Fraction(0)) + coeff * factor
        return Polynomial(self.n, tuple(acc.items()))

    def taylor(self, center: Point, order: int) -> "Polynomial":
        """Taylor coefficients around a point, as a polynomial in the offset.

        The coefficient of the offset monomial with counts J is the J-th
        derivative at the center divided by counts!.  For a polynomial of
        degree at most the requested order this is an exact re-centering.
        """
        if center.n != self.n:
            raise ValueError("point dimension mismatch")
        if order < 0:
            raise ValueError(f"negative order {order}")
        acc: dict[CardinalityIndex, Fraction] = {}
        for l in range(order + 1):
            for card in enumerate_nondecreasing(self.n, l):
                value = self.derive(card)(center) / mi_factorial(card)
                if value != 0:
                    acc[card] = value
        return Polynomial(self.n, tuple(acc.items()))

    def substitute(self, axis: int, value: Scalar) -> "Polynomial":
        """Freeze one variable at an exact value; the axis count drops to zero."""
        if not 1 <= axis <= self.n:
            raise ValueError(f"axis {axis} out of range 1..{self.n}")
        fixed = Fraction(value)
        acc: dict[CardinalityIndex, Fraction] = {}
        for card, coeff in self.terms:
            count = card.counts[axis - 1]
            new_counts = tuple(
                0 if r == axis - 1 else c for r, c in enumerate(card.counts)
            )
            key = CardinalityIndex(new_counts)
            acc[key] = acc.get(key, Fraction(0)) + coeff * fixed**count
        return Polynomial(self.n, tuple(acc.items()))

    def compose_affine(
        self, matrix: Sequence[Sequence[Scalar]], offset: Sequence[Scalar]
    ) -> "Polynomial":
        """Substitute each variable by an affine expression of fresh variables.

        Variable j is replaced by ``sum_i matrix[j][i] * x^i + offset[j]``;
        the result is the pullback of the polynomial along the affine map.
        """
        rows = [[Fraction(v) for v in row] for row in matrix]
        shift = [Fraction(v) for v in offset]
        if len(rows) != self.n or len(shift) != self.n:
            raise ValueError("affine data dimension mismatch")
        replacements = []
        for j in range(self.n):
            if len(rows[j]) != self.n:
                raise ValueError("affine data dimension mismatch")
            poly = Polynomial.constant(self.n, shift[j])
            for i in range(self.n):
                if rows[j][i] != 0:
                    poly = poly + Polynomial.monomial(CardinalityIndex.unit(self.n, i + 1), rows[j][i])
            replacements.append(poly)
        result = Polynomial.zero(self.n)
        for card, coeff in self.terms:
            term = Polynomial.constant(self.n, coeff)
            for j, count in enumerate(card.counts):
                if count:
                    term = term * replacements[j].power(count)
            result = result + term
        return result


def box_integral(
    poly: Polynomial,
    lower: Sequence[Scalar],
    upper: Sequence[Scalar],
    skip_axes: Iterable[int] = (),
) -> Fraction:
    """Exact integral of a polynomial over an axis-aligned box.

    Monomials integrate axis by axis in closed form.  Axes listed in
    ``skip_axes`` are not integrated; the polynomial must not depend on them
    (freeze them with ``substitute`` first).
    """
    lo = [Fraction(v) for v in lower]
    hi = [Fraction(v) for v in upper]
    if len(lo) != poly.n or len(hi) != poly.n:
        raise ValueError("box dimension mismatch")
    skip = set(skip_axes)
    for axis in skip:
        if not 1 <= axis <= poly.n:
            raise ValueError(f"axis {axis} out of range 1..{poly.n}")
    total = Fraction(0)
    for card, coeff in poly.terms:
        value = coeff
        for axis, count in enumerate(card.counts, start=1):
            if axis in skip:
                if count:
                    raise ValueError(f"polynomial still depends on skipped axis {axis}")
                continue
            e = count + 1
            value *= (hi[axis - 1] ** e - lo[axis - 1] ** e) / e
        total += value
    return total


@dataclass(frozen=True)
class PolyField:
    """Polynomial map with m components on an n-dimensional source."""

    n: int
    m: int
    components: tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        if self.m < 1:
            raise ValueError(f"value dimension must be positive, got {self.m}")
        if len(comps) != self.m:
            raise ValueError(f"expected {self.m} components, got {len(comps)}")
        for poly in comps:
            if poly.n != self.n:
                raise ValueError("component dimension mismatch")
        object.__setattr__(self, "components", comps)

    def component(self, alpha: int) -> Polynomial:
        if not 1 <= alpha <= self.m:
            raise ValueError(f"component {alpha} out of range 1..{self.m}")
        return self.components[alpha - 1]

    def __call__(self, point: Point | Sequence[Scalar]) -> tuple[Fraction, ...]:
        return tuple(poly(point) for poly in self.components)
