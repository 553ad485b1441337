"""Higher-order stresses, their power densities, and boundary tractions.

A variational hyper-stress of order k is a covector on k-jets with a volume
form attached: paired with the k-jet of a virtual field it yields a power
density, a multiple of the coordinate volume form.

A traction hyper-stress of order k carries, for every order ``l <= k - 1``,
components with one symmetric contravariant leg of degree l, one value leg,
and one extra contraction axis that feeds a codimension-one form.  Acting on
a (k-1)-jet it produces a flux density, a codimension-one form, and
restricting that form to a hyperplane frame gives the traction the stress
induces on any boundary with that tangent plane.  Restriction commutes with
the jet action, so the traction on a frame is computable slot by slot from
the stress components alone; that is the generalized boundary-traction
formula implemented by ``cauchy_traction``.

Boundary orientation for boxes: on the face where axis i is at its upper
bound the outward-oriented frame is the coordinate frame with axis i
omitted, taken with sign ``(-1)**(i-1)`` so that the restriction of the
basis form contracted along axis i equals +1; on the lower face the sign is
negated.  With this convention the flux of a field through the boundary
matches the integral of its divergence over the box.

Symmetric-leg components are stored in arrow convention, mirroring jet
covectors, so every pairing in this module is a plain sum of stored
component products.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .altforms import CoDimOneForm, Vector, restrict
from .multiindex import IndexLike, as_cardinality, enumerate_nondecreasing, rank, sym_dim
from .polyfield import Point, PolyField, Polynomial, Scalar, box_integral
from .jet import JetCovector, JetElement, jet_of, pair_jet
from .symtensor import DenseTensor, SymTensor, compress, convert_convention, symmetrize_dense


@dataclass(frozen=True)
class BoxRegion:
    """Axis-aligned box with a midpoint-quadrature resolution."""

    lower: tuple[Fraction, ...]
    upper: tuple[Fraction, ...]
    subdivisions: int = 1

    def __post_init__(self) -> None:
        lower = tuple(Fraction(v) for v in self.lower)
        upper = tuple(Fraction(v) for v in self.upper)
        if len(lower) != len(upper) or not lower:
            raise ValueError("bounds must be nonempty and of equal length")
        for lo, hi in zip(lower, upper):
            if not lo < hi:
                raise ValueError(f"degenerate box: {lo} >= {hi}")
        if self.subdivisions < 1:
            raise ValueError(f"subdivisions must be positive, got {self.subdivisions}")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def n(self) -> int:
        return len(self.lower)

    def with_subdivisions(self, subdivisions: int) -> "BoxRegion":
        return BoxRegion(self.lower, self.upper, subdivisions)


@dataclass(frozen=True)
class VariationalHyperStress:
    """Order-k stress measured against k-jets; a jet covector with a volume factor."""

    covector: JetCovector

    @property
    def n(self) -> int:
        return self.covector.n

    @property
    def m(self) -> int:
        return self.covector.m

    @property
    def k(self) -> int:
        return self.covector.k

    @classmethod
    def from_map(
        cls, n: int, m: int, k: int, entries: dict[tuple[int, IndexLike], Scalar]
    ) -> "VariationalHyperStress":
        return cls(JetCovector.from_map(n, m, k, entries))

    def component(self, alpha: int, index: IndexLike) -> Fraction:
        return self.covector.component(alpha, index)


def _check_traction_blocks(
    n: int, m: int, k: int, blocks: tuple[tuple[tuple[SymTensor, ...], ...], ...]
) -> None:
    if n < 1 or m < 1:
        raise ValueError("dimensions must be positive")
    if k < 1:
        raise ValueError(f"order must be at least 1, got {k}")
    if len(blocks) != k:
        raise ValueError(f"expected {k} blocks, got {len(blocks)}")
    for l, block in enumerate(blocks):
        if len(block) != m:
            raise ValueError(f"block {l} must have {m} rows, got {len(block)}")
        for row in block:
            if len(row) != n:
                raise ValueError(f"block {l} rows must have {n} tensors")
            for tensor in row:
                if tensor.n != n or tensor.degree != l:
                    raise ValueError(f"block {l} tensor has wrong shape")
                if tensor.variance != "contra" or tensor.convention != "arrow":
                    raise ValueError(f"block {l} tensor must be contra/arrow")


@dataclass(frozen=True)
class TractionHyperStress:
    """Order-k stress acting on (k-1)-jets with a codimension-one form as value.

    ``blocks[l][alpha-1][j-1]`` is the degree-l symmetric leg for value
    component alpha and contraction axis j.  Components are symmetric in the
    degree-l leg only; the contraction axis is a free slot, which is all the
    symmetry such a stress can have.
    """

    n: int
    m: int
    k: int
    blocks: tuple[tuple[tuple[SymTensor, ...], ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "blocks", tuple(tuple(tuple(row) for row in block) for block in self.blocks)
        )
        _check_traction_blocks(self.n, self.m, self.k, self.blocks)

    @classmethod
    def zero(cls, n: int, m: int, k: int) -> "TractionHyperStress":
        blocks = tuple(
            tuple(
                tuple(SymTensor.zeros(n, l, "contra", "arrow") for _ in range(n))
                for _ in range(m)
            )
            for l in range(k)
        )
        return cls(n, m, k, blocks)

    @classmethod
    def from_map(
        cls, n: int, m: int, k: int, entries: Mapping[tuple[int, IndexLike, int], Scalar]
    ) -> "TractionHyperStress":
        """Build from arrow components keyed by (alpha, symmetric index, axis j)."""
        maps: list[list[list[dict]]] = [
            [[{} for _ in range(n)] for _ in range(m)] for _ in range(k)
        ]
        for (alpha, index, j), value in entries.items():
            if not 1 <= alpha <= m:
                raise ValueError(f"component {alpha} out of range 1..{m}")
            if not 1 <= j <= n:
                raise ValueError(f"axis {j} out of range 1..{n}")
            card = as_cardinality(index, n)
            if card.degree > k - 1:
                raise ValueError(f"order {card.degree} exceeds {k - 1}")
            maps[card.degree][alpha - 1][j - 1][card] = value
        blocks = tuple(
            tuple(
                tuple(
                    SymTensor.from_map(n, l, "contra", "arrow", maps[l][a][j])
                    for j in range(n)
                )
                for a in range(m)
            )
            for l in range(k)
        )
        return cls(n, m, k, blocks)

    @classmethod
    def from_dense(
        cls, n: int, m: int, k: int, entries: Mapping[tuple[int, tuple[int, ...], int], Scalar]
    ) -> "TractionHyperStress":
        """Build from dense components keyed by (alpha, ordered axes, axis j).

        The dense data is symmetrized over the ordered leg only; the
        contraction axis is untouched.  Feeding back the dense components of
        the result reproduces it, so the construction is idempotent.
        """
        dense: list[list[list[dict[tuple[int, ...], Fraction]]]] = [
            [[{} for _ in range(n)] for _ in range(m)] for _ in range(k)
        ]
        for (alpha, axes, j), value in entries.items():
            if not 1 <= alpha <= m:
                raise ValueError(f"component {alpha} out of range 1..{m}")
            if not 1 <= j <= n:
                raise ValueError(f"axis {j} out of range 1..{n}")
            axes = tuple(int(a) for a in axes)
            if len(axes) > k - 1:
                raise ValueError(f"order {len(axes)} exceeds {k - 1}")
            slot = dense[len(axes)][alpha - 1][j - 1]
            slot[axes] = slot.get(axes, Fraction(0)) + Fraction(value)
        blocks = []
        for l in range(k):
            block = []
            for a in range(m):
                row = []
                for j in range(n):
                    full = DenseTensor.from_map(n, l, "contra", dense[l][a][j])
                    sym = compress(symmetrize_dense(full))
                    row.append(convert_convention(sym, "arrow"))
                block.append(tuple(row))
            blocks.append(tuple(block))
        return cls(n, m, k, tuple(blocks))

    def component(self, alpha: int, index: IndexLike, j: int) -> Fraction:
        if not 1 <= alpha <= self.m:
            raise ValueError(f"component {alpha} out of range 1..{self.m}")
        if not 1 <= j <= self.n:
            raise ValueError(f"axis {j} out of range 1..{self.n}")
        card = as_cardinality(index, self.n)
        if card.degree > self.k - 1:
            raise ValueError(f"order {card.degree} exceeds {self.k - 1}")
        return self.blocks[card.degree][alpha - 1][j - 1].component(card)


@dataclass(frozen=True)
class HyperTraction:
    """Boundary traction induced on a fixed hyperplane frame.

    Shaped like a covector on (k-1)-jets; each coefficient multiplies the
    volume element of the frame it was computed against.
    """

    k: int
    covector: JetCovector

    def __post_init__(self) -> None:
        if self.covector.k != self.k - 1:
            raise ValueError("traction covector must act on jets of order k-1")

    @property
    def n(self) -> int:
        return self.covector.n

    @property
    def m(self) -> int:
        return self.covector.m

    def apply(self, jet: JetElement) -> Fraction:
        """Power per unit frame area against a (k-1)-jet."""
        return pair_jet(self.covector, jet)


def power_density(stress: VariationalHyperStress, jet: JetElement) -> Fraction:
    """Coefficient of the volume form in the stress power on a k-jet."""
    return pair_jet(stress.covector, jet)


def traction_density(stress: TractionHyperStress, jet: JetElement) -> CoDimOneForm:
    """Flux density of a traction stress acting on a (k-1)-jet.

    Coefficient j of the resulting codimension-one form is the plain sum
    over slots of stress component times derivative value.
    """
    if (stress.n, stress.m) != (jet.n, jet.m):
        raise ValueError("shape mismatch")
    if jet.k != stress.k - 1:
        raise ValueError(f"stress of order {stress.k} acts on jets of order {stress.k - 1}")
    coeffs = []
    for j in range(stress.n):
        total = Fraction(0)
        for l in range(stress.k):
            for a in range(stress.m):
                sigma = stress.blocks[l][a][j].components
                deriv = jet.blocks[l][a].components
                total += sum((s * d for s, d in zip(sigma, deriv)), Fraction(0))
        coeffs.append(total)
    return CoDimOneForm(stress.n, tuple(coeffs))


def cauchy_traction(stress: TractionHyperStress, frame: Sequence[Vector]) -> HyperTraction:
    """Traction induced by a traction stress on a hyperplane frame.

    Slot (alpha, index) of the result restricts, to the frame, the
    codimension-one form whose coefficients are the stress components at
    that slot across all contraction axes.  Applying the result to a
    (k-1)-jet equals restricting the full flux density of that jet, so the
    boundary traction depends on the boundary only through its tangent
    frame.
    """
    n, m, k = stress.n, stress.m, stress.k
    blocks = []
    for l in range(k):
        cards = enumerate_nondecreasing(n, l)
        block = []
        for a in range(m):
            comps = []
            for card in cards:
                form = CoDimOneForm(
                    n, tuple(stress.blocks[l][a][j].component(card) for j in range(n))
                )
                comps.append(restrict(form, frame))
            block.append(SymTensor(n, l, "contra", "arrow", tuple(comps)))
        blocks.append(tuple(block))
    return HyperTraction(k, JetCovector(n, m, k - 1, tuple(blocks)))


@dataclass(frozen=True)
class VariationalStressField:
    """Variational hyper-stress with polynomial dependence on position.

    ``blocks[l][alpha-1]`` is a tuple of coefficient polynomials over the
    compressed degree-l slots, in rank order and arrow convention.
    """

    n: int
    m: int
    k: int
    blocks: tuple[tuple[tuple[Polynomial, ...], ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "blocks", tuple(tuple(tuple(row) for row in block) for block in self.blocks)
        )
        if len(self.blocks) != self.k + 1:
            raise ValueError(f"expected {self.k + 1} blocks, got {len(self.blocks)}")
        for l, block in enumerate(self.blocks):
            if len(block) != self.m:
                raise ValueError(f"block {l} must have {self.m} rows")
            for row in block:
                if len(row) != sym_dim(self.n, l):
                    raise ValueError(f"block {l} rows must have {sym_dim(self.n, l)} slots")
                for poly in row:
                    if poly.n != self.n:
                        raise ValueError("coefficient polynomial dimension mismatch")

    @classmethod
    def constant(cls, stress: VariationalHyperStress) -> "VariationalStressField":
        blocks = tuple(
            tuple(
                tuple(Polynomial.constant(stress.n, c) for c in tensor.components)
                for tensor in block
            )
            for block in stress.covector.blocks
        )
        return cls(stress.n, stress.m, stress.k, blocks)

    @classmethod
    def from_map(
        cls, n: int, m: int, k: int, entries: Mapping[tuple[int, IndexLike], Polynomial]
    ) -> "VariationalStressField":
        blocks = [
            [[Polynomial.zero(n) for _ in range(sym_dim(n, l))] for _ in range(m)]
            for l in range(k + 1)
        ]
        for (alpha, index), poly in entries.items():
            if not 1 <= alpha <= m:
                raise ValueError(f"component {alpha} out of range 1..{m}")
            card = as_cardinality(index, n)
            if card.degree > k:
                raise ValueError(f"order {card.degree} exceeds jet order {k}")
            blocks[card.degree][alpha - 1][rank(card)] = poly
        return cls(
            n, m, k, tuple(tuple(tuple(row) for row in block) for block in blocks)
        )

    def at(self, x: Point) -> VariationalHyperStress:
        blocks = tuple(
            tuple(
                SymTensor(self.n, l, "contra", "arrow", tuple(poly(x) for poly in row))
                for row in block
            )
            for l, block in enumerate(self.blocks)
        )
        return VariationalHyperStress(JetCovector(self.n, self.m, self.k, blocks))

    def density(self, field: PolyField) -> Polynomial:
        """Power density against the jet of a polynomial field, as a polynomial."""
        if (field.n, field.m) != (self.n, self.m):
            raise ValueError("shape mismatch")
        total = Polynomial.zero(self.n)
        for l in range(self.k + 1):
            cards = enumerate_nondecreasing(self.n, l)
            for a in range(self.m):
                w = field.component(a + 1)
                for card, poly in zip(cards, self.blocks[l][a]):
                    if poly.terms:
                        total = total + poly * w.derive(card)
        return total


@dataclass(frozen=True)
class TractionStressField:
    """Traction hyper-stress with polynomial dependence on position."""

    n: int
    m: int
    k: int
    blocks: tuple[tuple[tuple[tuple[Polynomial, ...], ...], ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "blocks",
            tuple(
                tuple(tuple(tuple(slot) for slot in row) for row in block)
                for block in self.blocks
            ),
        )
        if self.k < 1:
            raise ValueError(f"order must be at least 1, got {self.k}")
        if len(self.blocks) != self.k:
            raise ValueError(f"expected {self.k} blocks, got {len(self.blocks)}")
        for l, block in enumerate(self.blocks):
            if len(block) != self.m:
                raise ValueError(f"block {l} must have {self.m} rows")
            for row in block:
                if len(row) != self.n:
                    raise ValueError(f"block {l} rows must have {self.n} axis slots")
                for slot in row:
                    if len(slot) != sym_dim(self.n, l):
                        raise ValueError("slot count mismatch")
                    for poly in slot:
                        if poly.n != self.n:
                            raise ValueError("coefficient polynomial dimension mismatch")

    @classmethod
    def constant(cls, stress: TractionHyperStress) -> "TractionStressField":
        blocks = tuple(
            tuple(
                tuple(
                    tuple(Polynomial.constant(stress.n, c) for c in tensor.components)
                    for tensor in row
                )
                for row in block
            )
            for block in stress.blocks
        )
        return cls(stress.n, stress.m, stress.k, blocks)

    @classmethod
    def from_map(
        cls, n: int, m: int, k: int, entries: Mapping[tuple[int, IndexLike, int], Polynomial]
    ) -> "TractionStressField":
        blocks = [
            [
                [[Polynomial.zero(n) for _ in range(sym_dim(n, l))] for _ in range(n)]
                for _ in range(m)
            ]
            for l in range(k)
        ]
        for (alpha, index, j), poly in entries.items():
            if not 1 <= alpha <= m:
                raise ValueError(f"component {alpha} out of range 1..{m}")
            if not 1 <= j <= n:
                raise ValueError(f"axis {j} out of range 1..{n}")
            card = as_cardinality(index, n)
            if card.degree > k - 1:
                raise ValueError(f"order {card.degree} exceeds {k - 1}")
            blocks[card.degree][alpha - 1][j - 1][rank(card)] = poly
        return cls(
            n,
            m,
            k,
            tuple(
                tuple(tuple(tuple(slot) for slot in row) for row in block) for block in blocks
            ),
        )

    def at(self, x: Point) -> TractionHyperStress:
        blocks = tuple(
            tuple(
                tuple(
                    SymTensor(self.n, l, "contra", "arrow", tuple(poly(x) for poly in slot))
                    for slot in row
                )
                for row in block
            )
            for l, block in enumerate(self.blocks)
        )
        return TractionHyperStress(self.n, self.m, self.k, blocks)

    def density_coeffs(self, field: PolyField) -> list[Polynomial]:
        """Flux density coefficients against the (k-1)-jet of a field."""
        if (field.n, field.m) != (self.n, self.m):
            raise ValueError("shape mismatch")
        coeffs = []
        for j in range(self.n):
            total = Polynomial.zero(self.n)
            for l in range(self.k):
                cards = enumerate_nondecreasing(self.n, l)
                for a in range(self.m):
                    w = field.component(a + 1)
                    for card, poly in zip(cards, self.blocks[l][a][j]):
                        if poly.terms:
                            total = total + poly * w.derive(card)
            coeffs.append(total)
        return coeffs


def _midpoints(lo: Fraction, hi: Fraction, cells: int) -> list[Fraction]:
    width = (hi - lo) / cells
    return [lo + width * (2 * c + 1) / 2 for c in range(cells)]


def total_power(
    stress: VariationalStressField,
    field: PolyField,
    region: BoxRegion,
    method: str = "exact",
) -> Fraction:
    """Power of a stress field over a box against the k-jet of a field.

    The density is a polynomial, so the exact method integrates it in
    closed form.  The midpoint method samples the density at cell centers
    with the region's subdivisions per axis; it is provided as an
    independent cross-check and converges at second order.  Both methods
    return exact rationals.
    """
    if region.n != stress.n:
        raise ValueError("region dimension mismatch")
    density = stress.density(field)
    if method == "exact":
        return box_integral(density, region.lower, region.upper)
    if method == "midpoint":
        cells = region.subdivisions
        axes = [
            _midpoints(region.lower[r], region.upper[r], cells) for r in range(region.n)
        ]
        volume = Fraction(1)
        for lo, hi in zip(region.lower, region.upper):
            volume *= (hi - lo) / cells
        total = Fraction(0)
        for coords in itertools.product(*axes):
            total += density(Point(coords))
        return total * volume
    raise ValueError(f"unknown method {method!r}")


def boundary_power_flux(
    stress: TractionStressField,
    field: PolyField,
    region: BoxRegion,
    k: int | None = None,
    method: str = "exact",
) -> Fraction:
    """Flux of the traction power through the oriented boundary of a box.

    Sums, over the 2n faces, the integral of the restricted flux density
    with the outward orientation convention of this module: the face where
    axis i is at its upper bound contributes the i-th density coefficient
    positively, the lower face negatively.  The midpoint method applies the
    region's subdivisions on each face.
    """
    if region.n != stress.n:
        raise ValueError("region dimension mismatch")
    if k is not None and k != stress.k:
        raise ValueError(f"stress has order {stress.k}, got k={k}")
    coeffs = stress.density_coeffs(field)
    total = Fraction(0)
    for axis in range(1, stress.n + 1):
        for is_upper in (True, False):
            bound = region.upper[axis - 1] if is_upper else region.lower[axis - 1]
            sign = 1 if is_upper else -1
            face_poly = coeffs[axis - 1].substitute(axis, bound)
            if method == "exact":
                value = box_integral(
                    face_poly, region.lower, region.upper, skip_axes=(axis,)
                )
            elif method == "midpoint":
                cells = region.subdivisions
                other_axes = [r for r in range(1, stress.n + 1) if r != axis]
                grids = [
                    _midpoints(region.lower[r - 1], region.upper[r - 1], cells)
                    for r in other_axes
                ]
                area = Fraction(1)
                for r in other_axes:
                    area *= (region.upper[r - 1] - region.lower[r - 1]) / cells
                value = Fraction(0)
                for combo in itertools.product(*grids):
                    coords = [Fraction(0)] * stress.n
                    coords[axis - 1] = bound
                    for r, c in zip(other_axes, combo):
                        coords[r - 1] = c
                    value += face_poly(Point(tuple(coords)))
                value *= area
            else:
                raise ValueError(f"unknown method {method!r}")
            total += sign * value
    return total


def box_face_frame(n: int, axis: int, is_upper: bool) -> tuple[list[Vector], int]:
    """Outward-oriented tangent frame data for a box face.

    Returns the coordinate frame with the given axis omitted together with
    the orientation sign making the restriction of the axis-contracted
    volume form equal +1 on the upper face and -1 on the lower one.
    """
    if not 1 <= axis <= n:
        raise ValueError(f"axis {axis} out of range 1..{n}")
    frame = [Vector.basis(n, r) for r in range(1, n + 1) if r != axis]
    sign = (-1) ** (axis - 1)
    if not is_upper:
        sign = -sign
    return frame, sign
