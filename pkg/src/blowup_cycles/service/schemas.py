"""Request and response models for the service and the CLI.

All rationals cross the wire as exact 'p/q' strings (plain integers allowed on
input); nothing is ever converted through floating point.  Responses carry a
schema_version so clients can pin the format.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Annotated, Literal

from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer

from ..classgroup import Ambient, ConfigTag, CycleClass
from ..errors import InvalidClass
from ..grammar import format_class, parse_class

SCHEMA_VERSION = "1"


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise ValueError("rationals must be integers or 'p/q' strings (no floats)")


Rational = Annotated[
    Fraction,
    BeforeValidator(_to_fraction),
    PlainSerializer(str, return_type=str),
]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class AmbientModel(StrictModel):
    n: int
    r: int
    config: str = "very-general"

    def to_ambient(self) -> Ambient:
        return Ambient(self.n, self.r, ConfigTag.parse(self.config))

    @classmethod
    def from_ambient(cls, ambient: Ambient) -> "AmbientModel":
        return cls(n=ambient.n, r=ambient.r, config=str(ambient.config))


class ClassIn(StrictModel):
    """A class given as grammar text, raw coefficients, or degree plus multiplicities."""

    text: str | None = None
    coefficients: list[Rational] | None = None
    degree: Rational | None = None
    multiplicities: list[Rational] | None = None

    def to_cycle(self, ambient: Ambient, dim: int, vertex_zero: bool = False) -> CycleClass:
        given = [
            self.text is not None,
            self.coefficients is not None,
            self.degree is not None or self.multiplicities is not None,
        ]
        if sum(given) != 1:
            raise InvalidClass(
                "give the class exactly one way: text, coefficients, or degree+multiplicities"
            )
        if self.text is not None:
            return parse_class(self.text, ambient, dim, vertex_zero=vertex_zero)
        if self.coefficients is not None:
            return CycleClass(ambient, dim, tuple(self.coefficients))
        if self.degree is None or self.multiplicities is None:
            raise InvalidClass("degree and multiplicities must be given together")
        return CycleClass.from_multiplicities(ambient, dim, self.degree, self.multiplicities)


class ClassOut(StrictModel):
    text: str
    dim: int
    degree: Rational
    multiplicities: list[Rational]
    coefficients: list[Rational]
    ambient: AmbientModel

    @classmethod
    def from_cycle(cls, cycle: CycleClass) -> "ClassOut":
        return cls(
            text=format_class(cycle),
            dim=cycle.dim,
            degree=cycle.degree,
            multiplicities=list(cycle.multiplicities),
            coefficients=list(cycle.coeffs),
            ambient=AmbientModel.from_ambient(cycle.ambient),
        )


class ResponseBase(StrictModel):
    schema_version: Literal["1"] = SCHEMA_VERSION


# -- decompose ---------------------------------------------------------------


class DecomposeRequest(StrictModel):
    ambient: AmbientModel
    dim: int
    cycle: ClassIn
    span_size: int | None = None  # defaults to dim + 1


class DecompositionTermModel(StrictModel):
    generator: str
    coefficient: Rational


class ViolationModel(StrictModel):
    name: str
    description: str
    lhs: Rational
    rhs: Rational
    index: int | None = None


class DecomposeResponse(ResponseBase):
    member: bool
    span_size: int
    cycle: ClassOut
    decomposition: list[DecompositionTermModel] | None = None
    linear_degree: Rational | None = None
    violation: ViolationModel | None = None


# -- intersection calculus ----------------------------------------------------


class IntersectRequest(StrictModel):
    ambient: AmbientModel
    divisor: ClassIn
    cycle: ClassIn
    cycle_dim: int


class IntersectResponse(ResponseBase):
    result: ClassOut


class PairRequest(StrictModel):
    ambient: AmbientModel
    divisor: ClassIn
    curve: ClassIn


class PairResponse(ResponseBase):
    value: Rational


class TopSelfRequest(StrictModel):
    ambient: AmbientModel
    divisor: ClassIn


class TopSelfResponse(ResponseBase):
    value: Rational


# -- cones ---------------------------------------------------------------------


class ConeRequest(StrictModel):
    ambient: AmbientModel
    dim: int
    cycle: ClassIn


class ConeResponse(ResponseBase):
    result: ClassOut
    vertex_zero_text: str  # same class with the new vertex labelled E0


class SectionRequest(StrictModel):
    ambient: AmbientModel  # model of the cone class, vertex first
    dim: int
    cycle: ClassIn  # text input uses E0 for the vertex
    vertex_zero_labels: bool = True


class SectionResponse(ResponseBase):
    result: ClassOut


class ReduceSpanRequest(StrictModel):
    ambient: AmbientModel  # config must be collinear or span-dim:m
    dim: int
    cycle: ClassIn


class ReduceSpanResponse(ResponseBase):
    linearly_generated: bool
    generator: ClassOut | None = None
    reason: str | None = None
    reduced: ClassOut | None = None


# -- reflection group -----------------------------------------------------------


class OrbitRecordModel(StrictModel):
    degree: Rational
    multiplicities: list[Rational]
    word_length: int


class OrbitRequest(StrictModel):
    ambient: AmbientModel
    start: ClassIn | None = None  # defaults to E_1
    max_word_length: int
    degree_cap: Rational | None = None
    resume: list[OrbitRecordModel] | None = None
    include_records: bool = True


class OrbitResponse(ResponseBase):
    count: int
    max_degree: Rational
    closed: bool
    max_word_length: int
    records: list[OrbitRecordModel] | None = None


class GroupTypeRequest(StrictModel):
    n: int
    r: int


class GroupTypeResponse(ResponseBase):
    kind: str
    value: Rational
    infinite: bool


# -- status oracle ----------------------------------------------------------------


class StatusRequest(StrictModel):
    n: int
    r: int
    k: int
    config: str = "very-general"


class CitationModel(StrictModel):
    rule: str
    statement: str


class StatusResponse(ResponseBase):
    linear: str
    finite: str
    assumption: str | None = None
    citations: list[CitationModel]
    notes: list[str]


# -- quadric model and counts --------------------------------------------------------


class ShghRequest(StrictModel):
    degree: int
    multiplicities: list[int]


class ShghResponse(ResponseBase):
    value: int
    applicable: bool
    degree_margin: int


class CertifyRequest(StrictModel):
    delta: Rational
    delta_prime: Rational


class CertificateCheckModel(StrictModel):
    name: str
    passed: bool
    values: list[tuple[str, Rational]]


class CertifyResponse(ResponseBase):
    passed: bool
    checks: list[CertificateCheckModel]


class QuadricClassIn(StrictModel):
    basis: str  # "ruling" | "planar"
    text: str | None = None
    coefficients: list[Rational] | None = None


class PushforwardRequest(StrictModel):
    cycle: QuadricClassIn


class PushforwardResponse(ResponseBase):
    source_planar: list[Rational]
    source_ruling: list[Rational]
    result: ClassOut


class NamedClassRequest(StrictModel):
    name: str
    params: dict[str, int] = {}


class NamedClassResponse(ResponseBase):
    result: ClassOut
    membership: DecomposeResponse | None = None  # linear-generation test at s = dim+1


class ErrorResponse(StrictModel):
    detail: str
    error_type: str
