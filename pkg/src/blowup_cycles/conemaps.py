"""Cones over cycle classes, hyperplane sections, and special-position reductions.

The cone over a k-cycle of degree a and multiplicities (b_1..b_r), taken from a
new point, is a (k+1)-cycle of degree a with multiplicity a at the new vertex
and b_i along the old points.  The vertex is always prepended at index 0, so on
the target model its exceptional class is E_1 and the old E_i shift to E_{i+1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .classgroup import Ambient, CycleClass, linear_space_class, span_dim
from .errors import InvalidAmbient, InvalidDims, NotAConeClass, NotEffectiveShape


@dataclass(frozen=True)
class ConeMap:
    """The linear map sending k-classes on (n, r) to (k+1)-classes on (n+1, r+1)."""

    source: Ambient

    @property
    def target(self) -> Ambient:
        return Ambient(self.source.n + 1, self.source.r + 1, self.source.config)

    def apply(self, cycle: CycleClass) -> CycleClass:
        return cone_class(cycle)


def cone_class(cycle: CycleClass) -> CycleClass:
    """Class of the cone over the cycle, vertex prepended at index 0.

    In point-multiplicity form (a; b_1..b_r) on (n, r) maps to
    (a; a, b_1..b_r) on (n+1, r+1).
    """
    src = cycle.ambient
    target = Ambient(src.n + 1, src.r + 1, src.config)
    mults = (cycle.degree,) + cycle.multiplicities
    return CycleClass.from_multiplicities(target, cycle.dim + 1, cycle.degree, mults)


def section_class(cycle: CycleClass) -> CycleClass:
    """Inverse of cone_class: the hyperplane section of a cone-shaped class.

    Requires the vertex multiplicity b_1 to equal the degree; drops dimension,
    point count and ambient dimension by one.
    """
    src = cycle.ambient
    if src.n < 3 or src.r < 1:
        raise InvalidAmbient(f"cannot take a section below n=3, r=1 (got n={src.n}, r={src.r})")
    if cycle.dim < 1:
        raise InvalidDims("section of a 0-cycle is undefined")
    mults = cycle.multiplicities
    if mults[0] != cycle.degree:
        raise NotAConeClass(
            f"vertex multiplicity {mults[0]} differs from degree {cycle.degree}; not a cone class"
        )
    target = Ambient(src.n - 1, src.r - 1, src.config)
    return CycleClass.from_multiplicities(target, cycle.dim - 1, cycle.degree, mults[1:])


def iterated_cone(cycle: CycleClass, times: int) -> CycleClass:
    """Apply cone_class repeatedly; (a; b) becomes (a; a*times, b) after `times` steps."""
    for _ in range(times):
        cycle = cone_class(cycle)
    return cycle


# ---------------------------------------------------------------------------
# span reduction


@dataclass(frozen=True)
class LinearVerdict:
    """Outcome of a special-position reduction that settles linear generation outright."""

    linearly_generated: bool
    generator: CycleClass
    reason: str


def span_reduction(cycle: CycleClass) -> CycleClass | LinearVerdict:
    """Reduce a class on points spanning only an m-plane inside P^n.

    For k >= m every effective k-cycle decomposes against the k-plane through
    all the points, so the cone is linearly generated and the verdict carries
    the generator H_k - sum_i E_{i,k}.  For k < m the cycles can be projected
    into the m-plane without changing their classes, so the same coefficient
    vector is returned on the model (m, r).
    """
    m = cycle.ambient.config.span_dim
    if m is None:
        raise InvalidAmbient(
            f"span reduction needs a collinear or span-dim configuration, got {cycle.ambient.config}"
        )
    k = cycle.dim
    if k >= m:
        gen = linear_space_class(cycle.ambient, k, through=range(1, cycle.ambient.r + 1))
        return LinearVerdict(
            True,
            gen,
            f"points span only a {m}-plane; every effective {k}-cycle is a nonnegative "
            f"combination of the {k}-plane through all points and exceptional classes",
        )
    # viewed inside their span the points span everything
    target = Ambient(m, cycle.ambient.r, span_dim(m))
    return cycle.with_ambient(target)


# ---------------------------------------------------------------------------
# one point off a hyperplane


class AddPointShape(Enum):
    IN_EXCEPTIONAL = "in-exceptional"
    IN_HYPERPLANE_PART = "in-hyperplane-part"
    IN_HYPERPLANE_CONE = "in-hyperplane-cone"
    MIXED_WITNESS = "mixed-witness"


@dataclass(frozen=True)
class AddPointDecomposition:
    """Shape certificate for the generators of the cone when one point sits off a hyperplane.

    For the configuration of r points inside a hyperplane plus one point (index
    1) off it, every effective class is generated by cones with vertex at the
    new point, classes inside the hyperplane, and the new exceptional class.
    The mixed case records the split
        cycle = cone_coefficient * cone_class(section) + remainder
    with nonnegative data and the remainder supported in the hyperplane part.
    """

    shape: AddPointShape
    cone_coefficient: Fraction | None = None
    section: CycleClass | None = None
    remainder: CycleClass | None = None


def addpoint_decomposition_shape(cycle: CycleClass) -> AddPointDecomposition:
    """Classify a class on (n, r+1) with vertex point at index 1 per the generating decomposition."""
    a = cycle.degree
    mults = cycle.multiplicities
    if cycle.ambient.r < 1:
        raise InvalidAmbient("need at least the vertex point")
    b0 = mults[0]
    rest = mults[1:]
    if a == 0 and b0 < 0 and all(b == 0 for b in rest):
        return AddPointDecomposition(AddPointShape.IN_EXCEPTIONAL)
    if b0 < 0 or b0 > a:
        raise NotEffectiveShape(
            f"vertex multiplicity {b0} outside [0, {a}]; effective classes satisfy 0 <= b_0 <= a"
        )
    if b0 == 0:
        return AddPointDecomposition(AddPointShape.IN_HYPERPLANE_PART)
    section = section_class(
        CycleClass.from_multiplicities(cycle.ambient, cycle.dim, a, (a,) + rest)
    )
    if b0 == a:
        return AddPointDecomposition(
            AddPointShape.IN_HYPERPLANE_CONE,
            cone_coefficient=Fraction(1),
            section=section,
            remainder=cycle - cone_class(section),
        )
    coeff = b0 / a
    remainder = cycle - cone_class(section).scale(coeff)
    return AddPointDecomposition(
        AddPointShape.MIXED_WITNESS,
        cone_coefficient=coeff,
        section=section,
        remainder=remainder,
    )
