"""Cycle classes on blow-ups of projective space and their intersection calculus.

The model: X is P^n blown up at r points.  The group of numerical classes of
k-dimensional cycles is free of rank r+1 with basis H_k (a k-plane pulled back
from P^n) and E_{1,k}, ..., E_{r,k} (k-planes inside the exceptional divisors).
A class is stored as its raw coefficient vector (c_0, c_1, ..., c_r) meaning
c_0*H_k + sum_i c_i*E_{i,k}.  The point-multiplicity view writes the same class
as a*H_k - sum_i b_i*E_{i,k} with a = c_0 and b_i = -c_i; effective cycles not
contained in an exceptional divisor have a >= b_i >= 0, and b_i is the
multiplicity of the image cycle at the i-th blown-up point.

All coefficients are exact rationals.  No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    AmbientMismatch,
    InvalidAmbient,
    InvalidClass,
    InvalidDims,
    InvalidIndexPair,
)

RationalLike = Union[Fraction, int, str]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or 'p/q' string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidClass(f"not a rational: {value!r}") from exc
    if isinstance(value, float):
        raise InvalidClass("floating point input rejected; pass int, Fraction or 'p/q'")
    raise InvalidClass(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Render a rational as 'p' or 'p/q', never as a decimal."""
    return str(value)


# ---------------------------------------------------------------------------
# configuration tags


@dataclass(frozen=True)
class ConfigTag:
    """Position type of the blown-up points.

    Kinds:
      very-general       points avoiding countably many proper closed conditions
      linearly-general   no k+2 of the points in a common k-plane
      collinear          all points on one line
      span-dim:m         the points span exactly an m-plane
      planar-nine-plus:s nine general points in a plane plus s-1 linearly
                         general points whose span is disjoint from that plane
      custom:label       anything else; carries an opaque label
    """

    kind: str
    param: int | str | None = None

    _KINDS = ("very-general", "linearly-general", "collinear", "span-dim", "planar-nine-plus", "custom")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise InvalidAmbient(f"unknown configuration kind {self.kind!r}")
        if self.kind in ("very-general", "linearly-general", "collinear"):
            if self.param is not None:
                raise InvalidAmbient(f"configuration {self.kind} takes no parameter")
        elif self.kind == "custom":
            if not isinstance(self.param, str) or not self.param:
                raise InvalidAmbient("custom configuration needs a nonempty label")
        else:
            if not isinstance(self.param, int) or self.param < 1:
                raise InvalidAmbient(f"configuration {self.kind} needs a positive integer parameter")

    @property
    def span_dim(self) -> int | None:
        """Dimension of the span forced by the tag, if any (collinear counts as 1)."""
        if self.kind == "collinear":
            return 1
        if self.kind == "span-dim":
            return self.param  # type: ignore[return-value]
        return None

    @classmethod
    def parse(cls, text: str) -> "ConfigTag":
        text = text.strip()
        if ":" in text:
            kind, param = text.split(":", 1)
            kind = kind.strip()
            param = param.strip()
            if kind == "custom":
                return cls(kind, param)
            try:
                return cls(kind, int(param))
            except ValueError as exc:
                raise InvalidAmbient(f"bad configuration parameter in {text!r}") from exc
        return cls(text)

    def __str__(self) -> str:
        if self.param is None:
            return self.kind
        return f"{self.kind}:{self.param}"


VERY_GENERAL = ConfigTag("very-general")
LINEARLY_GENERAL = ConfigTag("linearly-general")
COLLINEAR = ConfigTag("collinear")


def span_dim(m: int) -> ConfigTag:
    return ConfigTag("span-dim", m)


def planar_nine_plus(s: int) -> ConfigTag:
    return ConfigTag("planar-nine-plus", s)


def custom(label: str) -> ConfigTag:
    return ConfigTag("custom", label)


# ---------------------------------------------------------------------------
# ambient model and classes


@dataclass(frozen=True)
class Ambient:
    """Blow-up of P^n at r points in the position described by ``config``."""

    n: int
    r: int
    config: ConfigTag = VERY_GENERAL

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidAmbient(f"projective dimension must be an integer >= 2, got {self.n}")
        if not isinstance(self.r, int) or self.r < 0:
            raise InvalidAmbient(f"point count must be an integer >= 0, got {self.r}")
        m = self.config.span_dim
        if m is not None and not 1 <= m <= self.n:
            raise InvalidAmbient(f"span dimension {m} outside 1..{self.n}")
        if self.config.kind == "planar-nine-plus":
            s = self.config.param
            if self.r != s + 8:
                raise InvalidAmbient(f"planar-nine-plus:{s} has 9 + (s-1) = {s + 8} points, got r={self.r}")
            if self.n < max(2, s + 1):
                raise InvalidAmbient(f"planar-nine-plus:{s} needs n >= {max(2, s + 1)}")

    @property
    def rank(self) -> int:
        """Rank of the numerical class group in every dimension."""
        return self.r + 1

    def __str__(self) -> str:
        return f"n={self.n},r={self.r},config={self.config}"


@dataclass(frozen=True)
class PointMultiplicityForm:
    """A class written as degree*H_k - sum multiplicities[i]*E_{i+1,k}."""

    degree: Fraction
    multiplicities: tuple[Fraction, ...]

    def __str__(self) -> str:
        mults = ", ".join(format_rational(b) for b in self.multiplicities)
        return f"({format_rational(self.degree)}; {mults})"


@dataclass(frozen=True)
class CycleClass:
    """A numerical class of k-dimensional cycles on a blow-up of P^n.

    Immutable; arithmetic returns new instances.  Equality and hashing are by
    exact coefficient comparison, so classes can be used in sets and dicts.
    """

    ambient: Ambient
    dim: int
    coeffs: tuple[Fraction, ...] = field()

    def __post_init__(self):
        coeffs = tuple(as_rational(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not 0 <= self.dim <= self.ambient.n - 1:
            raise InvalidClass(f"cycle dimension {self.dim} outside 0..{self.ambient.n - 1}")
        if len(coeffs) != self.ambient.rank:
            raise InvalidClass(
                f"expected {self.ambient.rank} coefficients for r={self.ambient.r}, got {len(coeffs)}"
            )

    # -- views --------------------------------------------------------------

    @property
    def degree(self) -> Fraction:
        return self.coeffs[0]

    @property
    def multiplicities(self) -> tuple[Fraction, ...]:
        return tuple(-c for c in self.coeffs[1:])

    def multiplicity_form(self) -> PointMultiplicityForm:
        return PointMultiplicityForm(self.degree, self.multiplicities)

    @classmethod
    def from_multiplicities(
        cls,
        ambient: Ambient,
        dim: int,
        degree: RationalLike,
        multiplicities: Iterable[RationalLike],
    ) -> "CycleClass":
        coeffs = [as_rational(degree)] + [-as_rational(b) for b in multiplicities]
        return cls(ambient, dim, tuple(coeffs))

    @property
    def is_divisor(self) -> bool:
        return self.dim == self.ambient.n - 1

    @property
    def is_curve(self) -> bool:
        return self.dim == 1

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def with_ambient(self, ambient: Ambient, dim: int | None = None) -> "CycleClass":
        """Reinterpret the same coefficient vector on another model of equal rank."""
        if ambient.r != self.ambient.r:
            raise AmbientMismatch(f"cannot move a class from r={self.ambient.r} to r={ambient.r}")
        return CycleClass(ambient, self.dim if dim is None else dim, self.coeffs)

    # -- linear structure ----------------------------------------------------

    def _check_compatible(self, other: "CycleClass") -> None:
        if self.ambient != other.ambient:
            raise AmbientMismatch(f"{self.ambient} vs {other.ambient}")
        if self.dim != other.dim:
            raise InvalidDims(f"cannot add classes of dimensions {self.dim} and {other.dim}")

    def __add__(self, other: "CycleClass") -> "CycleClass":
        self._check_compatible(other)
        return CycleClass(self.ambient, self.dim, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycleClass") -> "CycleClass":
        self._check_compatible(other)
        return CycleClass(self.ambient, self.dim, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycleClass":
        return CycleClass(self.ambient, self.dim, tuple(-a for a in self.coeffs))

    def scale(self, factor: RationalLike) -> "CycleClass":
        q = as_rational(factor)
        return CycleClass(self.ambient, self.dim, tuple(q * a for a in self.coeffs))

    def __mul__(self, factor):
        if isinstance(factor, (int, Fraction)):
            return self.scale(factor)
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_terms(
            [(self.coeffs[0], "H")] + [(c, f"E{i}") for i, c in enumerate(self.coeffs[1:], start=1)]
        )


def format_terms(terms: Sequence[tuple[Fraction, str]]) -> str:
    """Canonical rendering of a linear combination, e.g. '3H - 2E1 - E2'.

    Terms with zero coefficient are dropped; unit coefficients are implicit;
    non-integral coefficients are written 'p/q*sym'.
    """
    parts: list[str] = []
    for coeff, symbol in terms:
        if coeff == 0:
            continue
        mag = abs(coeff)
        if mag == 1:
            body = symbol
        elif mag.denominator == 1:
            body = f"{mag}{symbol}"
        else:
            body = f"{mag}*{symbol}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    if not parts:
        return "0"
    return " ".join(parts)


# ---------------------------------------------------------------------------
# constructors


def make_class(ambient: Ambient, dim: int, coeffs: Iterable[RationalLike]) -> CycleClass:
    """Build a class from raw coefficients (c_0, c_1, ..., c_r)."""
    return CycleClass(ambient, dim, tuple(as_rational(c) for c in coeffs))


def from_point_multiplicities(
    ambient: Ambient, dim: int, degree: RationalLike, multiplicities: Iterable[RationalLike]
) -> CycleClass:
    """Build a*H_k - sum b_i*E_{i,k} from (a; b_1..b_r)."""
    return CycleClass.from_multiplicities(ambient, dim, degree, multiplicities)


def hyperplane_class(ambient: Ambient, k: int) -> CycleClass:
    """H_k, the class of a k-plane pulled back from P^n."""
    return CycleClass(ambient, k, (Fraction(1),) + (Fraction(0),) * ambient.r)


def exceptional_class(ambient: Ambient, i: int, k: int) -> CycleClass:
    """E_{i,k}, the class of a k-plane inside the i-th exceptional divisor (i is 1-based)."""
    if not 1 <= i <= ambient.r:
        raise InvalidClass(f"exceptional index {i} outside 1..{ambient.r}")
    coeffs = [Fraction(0)] * ambient.rank
    coeffs[i] = Fraction(1)
    return CycleClass(ambient, k, tuple(coeffs))


def linear_space_class(ambient: Ambient, k: int, through: Iterable[int] = ()) -> CycleClass:
    """Strict transform of a k-plane through the given (1-based) points: H_k - sum E_{i,k}."""
    coeffs = [Fraction(0)] * ambient.rank
    coeffs[0] = Fraction(1)
    for i in through:
        if not 1 <= i <= ambient.r:
            raise InvalidClass(f"point index {i} outside 1..{ambient.r}")
        if coeffs[i] != 0:
            raise InvalidClass(f"repeated point index {i}")
        coeffs[i] = Fraction(-1)
    return CycleClass(ambient, k, tuple(coeffs))


# ---------------------------------------------------------------------------
# intersection calculus
#
# The products of basis classes: H.H_k = H_{k-1}, E_i.E_{i,k} = -E_{i,k-1},
# H.E_i = 0 and E_i.E_j = 0 for i != j.  In point-multiplicity form this
# collapses to a coordinatewise product:
#   (c; d_1..d_r) . (a; b_1..b_r) = (c*a; d_1*b_1, ..., d_r*b_r).


def intersect_divisor(divisor: CycleClass, cycle: CycleClass) -> CycleClass:
    """Intersect a divisor class with a k-cycle class, k >= 1; returns a (k-1)-cycle class."""
    if divisor.ambient != cycle.ambient:
        raise AmbientMismatch(f"{divisor.ambient} vs {cycle.ambient}")
    if not divisor.is_divisor:
        raise InvalidDims(f"first argument must be a divisor class (dim {divisor.ambient.n - 1})")
    if cycle.dim < 1:
        raise InvalidDims("cannot intersect a divisor with a 0-cycle")
    degree = divisor.degree * cycle.degree
    mults = tuple(d * b for d, b in zip(divisor.multiplicities, cycle.multiplicities))
    return CycleClass.from_multiplicities(divisor.ambient, cycle.dim - 1, degree, mults)


def degree_pairing(divisor: CycleClass, curve: CycleClass) -> Fraction:
    """Intersection number of a divisor class with a curve class: c*a - sum d_i*b_i."""
    if divisor.ambient != curve.ambient:
        raise AmbientMismatch(f"{divisor.ambient} vs {curve.ambient}")
    if not divisor.is_divisor:
        raise InvalidDims("first argument must be a divisor class")
    if not curve.is_curve:
        raise InvalidDims("second argument must be a curve class")
    return divisor.degree * curve.degree - sum(
        d * b for d, b in zip(divisor.multiplicities, curve.multiplicities)
    )


def top_self_intersection(divisor: CycleClass) -> Fraction:
    """n-fold self-intersection of a divisor class: a^n - sum b_i^n."""
    if not divisor.is_divisor:
        raise InvalidDims("top self-intersection is defined for divisor classes")
    n = divisor.ambient.n
    return divisor.degree**n - sum(b**n for b in divisor.multiplicities)


def mukai_pairing(d1: CycleClass, d2: CycleClass) -> Fraction:
    """The reflection-invariant pairing on divisor classes.

    (H, H) = n-1, (E_i, E_i) = -1, mixed products 0; computed on raw
    coefficient vectors.  Every Cremona/permutation reflection is an isometry
    of this pairing.
    """
    if d1.ambient != d2.ambient:
        raise AmbientMismatch(f"{d1.ambient} vs {d2.ambient}")
    if not (d1.is_divisor and d2.is_divisor):
        raise InvalidDims("the invariant pairing is defined on divisor classes")
    n = d1.ambient.n
    return (n - 1) * d1.coeffs[0] * d2.coeffs[0] - sum(a * b for a, b in zip(d1.coeffs[1:], d2.coeffs[1:]))


def line_multiplicity_bound(cycle: CycleClass, i: int, j: int) -> Fraction:
    """Lower bound max(0, b_i + b_j - a) for the multiplicity of the cycle along the line through points i and j."""
    if i == j:
        raise InvalidIndexPair(f"need two distinct point indices, got {i} twice")
    r = cycle.ambient.r
    if not (1 <= i <= r and 1 <= j <= r):
        raise InvalidIndexPair(f"indices {i}, {j} outside 1..{r}")
    b = cycle.multiplicities
    excess = b[i - 1] + b[j - 1] - cycle.degree
    return excess if excess > 0 else Fraction(0)
