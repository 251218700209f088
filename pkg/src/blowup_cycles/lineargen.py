"""Membership in the cone spanned by linear cycle classes, with certificates.

A k-cycle class a*H_k - sum b_i*E_{i,k} lies in the cone generated by the
classes of k-planes (through up to s = k+1 of the points) and k-planes inside
the exceptional divisors exactly when

    a >= 0,        a >= b_i for all i,        s*a >= sum_i max(b_i, 0).

Membership comes with a constructive witness: a nonnegative combination of the
generators h{i_1,..,i_t} = H_k - E_{i_1,k} - ... - E_{i_t,k} (t <= s) and
e_i = E_{i,k} that re-sums to the class exactly.  For nonnegative b the witness
is produced by a greedy peeling of the largest multiplicities; otherwise an
exact LP provides it.  An independent LP oracle over the explicit generator
list is available for cross-validation.

Vectors are passed in point-multiplicity coordinates (a, b_1, ..., b_r).

By duality, for very general points the whole cone of k-cycles is spanned by
these generators exactly when the class (k+1)*H_{n-k} - sum_i E_{i,n-k} is
nef.  Nefness is a geometric statement about the blow-up, not decidable from
coefficient data, so this module only decides membership of individual
classes; the equivalence is recorded here for orientation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence, Union

from . import exactlp
from .classgroup import CycleClass, RationalLike, as_rational, format_rational
from .errors import InvalidDims, NotInCone

# ---------------------------------------------------------------------------
# generators and decompositions


@dataclass(frozen=True)
class ExceptionalGenerator:
    """e_i: a k-plane inside the i-th exceptional divisor."""

    index: int

    @property
    def label(self) -> str:
        return f"e{self.index}"

    def vector(self, r: int) -> tuple[Fraction, ...]:
        v = [Fraction(0)] * (r + 1)
        v[self.index] = Fraction(-1)  # multiplicity -1: the class is +E_{i,k}
        return tuple(v)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class LinearGenerator:
    """h_I: the strict transform of a k-plane through the points of I."""

    points: tuple[int, ...]

    @property
    def label(self) -> str:
        return "h{%s}" % ",".join(str(i) for i in self.points)

    def vector(self, r: int) -> tuple[Fraction, ...]:
        v = [Fraction(0)] * (r + 1)
        v[0] = Fraction(1)
        for i in self.points:
            v[i] = Fraction(1)
        return tuple(v)

    def __str__(self) -> str:
        return self.label


Generator = Union[ExceptionalGenerator, LinearGenerator]


@dataclass(frozen=True)
class Decomposition:
    """Nonnegative combination of generators; re-sums to the decomposed vector exactly."""

    terms: tuple[tuple[Generator, Fraction], ...]

    def resum(self, r: int) -> tuple[Fraction, ...]:
        total = [Fraction(0)] * (r + 1)
        for gen, coeff in self.terms:
            if isinstance(gen, LinearGenerator):
                total[0] += coeff
                for i in gen.points:
                    total[i] += coeff
            else:
                total[gen.index] -= coeff
        return tuple(total)

    @property
    def linear_degree(self) -> Fraction:
        """Total H-coefficient contributed by the plane generators."""
        return sum(
            (c for g, c in self.terms if isinstance(g, LinearGenerator)), start=Fraction(0)
        )

    def lines(self) -> list[str]:
        return [f"{format_rational(coeff)} * {gen.label}" for gen, coeff in self.terms]

    def __str__(self) -> str:
        return "\n".join(self.lines()) if self.terms else "(empty decomposition)"


@dataclass(frozen=True)
class ViolatedInequality:
    """Which membership inequality failed, with the exact offending values."""

    name: str  # "nonnegative-degree" | "degree-bounds-multiplicity" | "span-count"
    lhs: Fraction
    rhs: Fraction
    index: int | None = None

    def describe(self) -> str:
        if self.name == "nonnegative-degree":
            return f"degree must be nonnegative: a = {format_rational(self.lhs)} < 0"
        if self.name == "degree-bounds-multiplicity":
            return (
                f"multiplicity exceeds degree: b_{self.index} = {format_rational(self.rhs)}"
                f" > a = {format_rational(self.lhs)}"
            )
        return (
            f"span count fails: s*a = {format_rational(self.lhs)}"
            f" < sum of positive multiplicities = {format_rational(self.rhs)}"
        )

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    span_size: int
    witness: Decomposition | None = None
    violation: ViolatedInequality | None = None

    def __post_init__(self):
        if self.member and self.witness is None:
            raise ValueError("member verdict needs a witness decomposition")
        if not self.member and self.violation is None:
            raise ValueError("non-member verdict needs a violated inequality")


# ---------------------------------------------------------------------------
# the three inequalities


def _coerce(v: Sequence[RationalLike]) -> list[Fraction]:
    w = [as_rational(x) for x in v]
    if not w:
        raise InvalidDims("vector must contain at least the degree entry")
    return w


def _all_int(v) -> bool:
    return all(type(x) is int for x in v)


def violated_inequality(v: Sequence[RationalLike], s: int) -> ViolatedInequality | None:
    """First failing membership inequality for (a; b_1..b_r), or None.

    Negative multiplicities are absorbed by exceptional generators, so only
    the positive part of each b_i counts toward the span inequality.
    """
    w = v if _all_int(v) and len(v) > 0 else _coerce(v)
    a, b = w[0], w[1:]
    if a < 0:
        return ViolatedInequality("nonnegative-degree", Fraction(a), Fraction(0))
    for i, bi in enumerate(b, start=1):
        if bi > a:
            return ViolatedInequality("degree-bounds-multiplicity", Fraction(a), Fraction(bi), index=i)
    positive = sum(bi for bi in b if bi > 0)
    if s * a < positive:
        return ViolatedInequality("span-count", Fraction(s * a), Fraction(positive))
    return None


# ---------------------------------------------------------------------------
# greedy decomposition


def _greedy_int(a: int, b: list[int], s: int) -> dict[tuple[int, ...], int]:
    """Largest-first peeling on integer data; assumes the inequalities hold and b >= 0."""
    out: dict[tuple[int, ...], int] = {}
    b = list(b)
    order = list(range(len(b)))
    while a > 0:
        nonzero = [i for i in order if b[i] > 0]
        nonzero.sort(key=lambda i: -b[i])  # stable: ties stay in index order
        chosen = tuple(sorted(nonzero[: min(s, len(nonzero))]))
        out[chosen] = out.get(chosen, 0) + 1
        for i in chosen:
            b[i] -= 1
        a -= 1
    assert not any(b), "greedy invariant broken: multiplicities left after degree exhausted"
    return out


def greedy_decompose(v: Sequence[RationalLike], s: int) -> Decomposition:
    """Decompose (a; b_1..b_r) into plane generators by peeling largest multiplicities.

    Requires a >= b_i >= 0 and s*a >= sum b_i; raises NotInCone otherwise.  At
    each step the plane passes through the min(s, #nonzero) largest remaining
    multiplicities (ties to the smallest index); subtracting it preserves the
    inequalities, so the peeling runs for exactly a steps after clearing
    denominators.
    """
    if s < 1:
        raise InvalidDims(f"span size must be >= 1, got {s}")
    w = list(v) if _all_int(v) and len(v) > 0 else _coerce(v)
    a, b = w[0], w[1:]
    for i, bi in enumerate(b, start=1):
        if bi < 0:
            raise NotInCone(
                ViolatedInequality("degree-bounds-multiplicity", Fraction(a), Fraction(bi), index=i)
            )
    bad = violated_inequality(w, s)
    if bad is not None:
        raise NotInCone(bad)
    if type(a) is int:
        scale = 1
        counts = _greedy_int(a, list(b), s)
    else:
        scale = lcm(*(x.denominator for x in w))
        counts = _greedy_int(int(a * scale), [int(x * scale) for x in b], s)
    terms = tuple(
        (LinearGenerator(tuple(i + 1 for i in subset)), Fraction(count, scale))
        for subset, count in sorted(counts.items())
    )
    return Decomposition(terms)


# ---------------------------------------------------------------------------
# membership


@lru_cache(maxsize=None)
def _generator_tuple(r: int, s: int) -> tuple[Generator, ...]:
    gens: list[Generator] = [
        LinearGenerator(tuple(i + 1 for i in subset))
        for subset in itertools.combinations(range(r), min(s, r))
    ]
    gens.extend(ExceptionalGenerator(i) for i in range(1, r + 1))
    return tuple(gens)


def maininequality_generators(r: int, s: int) -> list[Generator]:
    """The explicit generator list: planes through min(s, r) points and exceptional planes.

    Planes through fewer points are nonnegative combinations of these, so the
    list generates the full cone of linear classes.
    """
    return list(_generator_tuple(r, s))


@lru_cache(maxsize=128)
def _prepared_generator_columns(r: int, gens: tuple[Generator, ...]) -> exactlp.PreparedColumns:
    return exactlp.prepare_columns([g.vector(r) for g in gens])


def lp_membership_oracle(
    v: Sequence[RationalLike], generators: Sequence[Sequence[RationalLike] | Generator]
) -> bool:
    """Exact LP decision: does v lie in the nonnegative hull of the generators?

    Independent of the inequality characterization and of the greedy witness;
    generators may be raw vectors or Generator objects (in point-multiplicity
    coordinates matching v).  Generator-object lists are normalized once and
    cached, so repeated queries against the same cone stay cheap.
    """
    r = len(v) - 1
    if r < 0:
        raise InvalidDims("vector must contain at least the degree entry")
    if all(isinstance(g, (ExceptionalGenerator, LinearGenerator)) for g in generators):
        prepared = _prepared_generator_columns(r, tuple(generators))
        return prepared.feasible(v if _all_int(v) else _coerce(v))
    return exactlp.feasible_nonnegative_combination(_coerce(v), list(generators))


def _lp_witness(v: Sequence[Fraction], s: int) -> Decomposition | None:
    gens = maininequality_generators(len(v) - 1, s)
    columns = [g.vector(len(v) - 1) for g in gens]
    lam = exactlp.nonnegative_combination(v, columns)
    if lam is None:
        return None
    terms = tuple((g, c) for g, c in zip(gens, lam) if c != 0)
    return Decomposition(terms)


def simplex_cone_membership(v: Sequence[RationalLike], s: int) -> MembershipVerdict:
    """Decide membership of (a; b_1..b_r) in the cone of linear classes at span size s.

    Nonnegative multiplicities: inequality check plus greedy witness.  Inputs
    with negative multiplicities are decided by the LP over the explicit
    generator list, whose solution supplies the witness (the greedy peeling
    does not apply there).
    """
    if s < 1:
        raise InvalidDims(f"span size must be >= 1, got {s}")
    w = _coerce(v)
    bad = violated_inequality(w, s)
    if bad is not None:
        return MembershipVerdict(False, s, violation=bad)
    if all(x >= 0 for x in w[1:]):
        return MembershipVerdict(True, s, witness=greedy_decompose(w, s))
    witness = _lp_witness(w, s)
    if witness is None:
        # unreachable if the clamped inequalities are the exact facet description;
        # kept as a hard failure rather than a wrong verdict
        raise AssertionError("inequalities passed but LP found no certificate")
    return MembershipVerdict(True, s, witness=witness)


def is_linearly_generated_class(cycle: CycleClass) -> MembershipVerdict:
    """Is the class spanned by k-plane classes?  Applies the cone test with s = k+1."""
    if cycle.dim < 1:
        raise InvalidDims("linear generation test needs a class of dimension >= 1")
    v = (cycle.degree,) + cycle.multiplicities
    return simplex_cone_membership(v, cycle.dim + 1)
