"""Expected dimension counts, the quadric lattice inside the 9-point blow-up of
P^3, and the exact extremality certificate for the null-ray divisor family.

A smooth quadric surface blown up alongside P^3 at 9 points carries two curve
bases related by

    e0 = r1 - f1,   e1 = r2 - f1,   f1 = h - e0 - e1,   ej = fj (j >= 2),

where r1, r2 are the rulings, f1..f9 restrict the exceptional divisors, and
(h, e0..e9) is a plane model with ten exceptional classes.  Pushing curve
classes forward to the blow-up of P^3 kills r1 - r2 and sends both rulings to
the line class.

The certified family is D = h - d*(e0 + e1) - d'*(e2 + ... + e9) with exact
rational d, d'; the certificate checks the five inequalities that make the
pushforward span an extremal ray when the expected dimension count for ten
points holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .classgroup import (
    Ambient,
    CycleClass,
    RationalLike,
    VERY_GENERAL,
    as_rational,
    degree_pairing,
    format_terms,
)
from .errors import InvalidClass, InvalidDims

# ---------------------------------------------------------------------------
# expected dimension of planar linear systems


@dataclass(frozen=True)
class PlanarSystem:
    """Plane curves of one degree with assigned point multiplicities."""

    degree: int
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.degree, int):
            raise InvalidClass("planar system degree must be an integer")
        if not all(isinstance(m, int) for m in self.multiplicities):
            raise InvalidClass("planar system multiplicities must be integers")
        object.__setattr__(self, "multiplicities", tuple(self.multiplicities))


@dataclass(frozen=True)
class ExpectedCount:
    """Virtual section count, signed, plus whether the counting hypothesis applies."""

    value: int
    applicable: bool
    degree_margin: int  # d - (m_1 + m_2 + m_3) after sorting, > 0 when applicable


def shgh_expected_dim(system: PlanarSystem) -> ExpectedCount:
    """Virtual count C(d+2, 2) - sum C(m_i + 1, 2), never clamped.

    The applicability flag requires at least ten points and, after sorting the
    multiplicities in decreasing order, d > m_1 + m_2 + m_3.  The raw formula
    itself never sorts and is permutation-invariant.
    """
    d = system.degree
    value = comb(d + 2, 2) - sum(comb(m + 1, 2) for m in system.multiplicities)
    top3 = sorted(system.multiplicities, reverse=True)[:3]
    margin = d - sum(top3)
    applicable = len(system.multiplicities) >= 10 and margin > 0
    return ExpectedCount(value, applicable, margin)


# ---------------------------------------------------------------------------
# the two curve bases on the quadric

RULING_BASIS = "ruling"  # coordinates over (r1, r2, f1..f9)
PLANAR_BASIS = "planar"  # coordinates over (h, e0..e9)

_RULING_SYMBOLS = ("r1", "r2") + tuple(f"f{i}" for i in range(1, 10))
_PLANAR_SYMBOLS = ("h",) + tuple(f"e{i}" for i in range(10))


@dataclass(frozen=True)
class QuadricClass:
    """A curve class on the quadric model, in one of the two bases (11 coordinates)."""

    basis: str
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.basis not in (RULING_BASIS, PLANAR_BASIS):
            raise InvalidClass(f"basis must be '{RULING_BASIS}' or '{PLANAR_BASIS}'")
        coeffs = tuple(as_rational(c) for c in self.coeffs)
        if len(coeffs) != 11:
            raise InvalidClass(f"quadric classes have 11 coordinates, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def symbols(self) -> tuple[str, ...]:
        return _RULING_SYMBOLS if self.basis == RULING_BASIS else _PLANAR_SYMBOLS

    def __str__(self) -> str:
        return format_terms(list(zip(self.coeffs, self.symbols)))


def quadric_class(basis: str, coeffs: Sequence[RationalLike]) -> QuadricClass:
    return QuadricClass(basis, tuple(as_rational(c) for c in coeffs))


def to_ruling(x: QuadricClass) -> QuadricClass:
    """Rewrite in the ruling basis: h = r1 + r2 - f1, e0 = r1 - f1, e1 = r2 - f1, ej = fj."""
    if x.basis == RULING_BASIS:
        return x
    p = x.coeffs  # (h, e0, e1, e2..e9)
    rho1 = p[0] + p[1]
    rho2 = p[0] + p[2]
    phi1 = -p[0] - p[1] - p[2]
    return QuadricClass(RULING_BASIS, (rho1, rho2, phi1) + p[3:])


def to_planar(x: QuadricClass) -> QuadricClass:
    """Rewrite in the plane-model basis: r1 = h - e1, r2 = h - e0, f1 = h - e0 - e1, fj = ej."""
    if x.basis == PLANAR_BASIS:
        return x
    c = x.coeffs  # (r1, r2, f1, f2..f9)
    h = c[0] + c[1] + c[2]
    e0 = -c[1] - c[2]
    e1 = -c[0] - c[2]
    return QuadricClass(PLANAR_BASIS, (h, e0, e1) + c[3:])


def quadric_basis_change(x: QuadricClass, target: str) -> QuadricClass:
    if target == RULING_BASIS:
        return to_ruling(x)
    if target == PLANAR_BASIS:
        return to_planar(x)
    raise InvalidClass(f"unknown basis {target!r}")


def quadric_to_plane_model(x: QuadricClass) -> CycleClass:
    """The same class as a curve class on the ten-point blow-up of the plane.

    Exceptional slots E_1..E_10 carry e0..e9.
    """
    p = to_planar(x).coeffs
    return CycleClass(Ambient(2, 10, VERY_GENERAL), 1, p)


def plane_model_to_quadric(cycle: CycleClass) -> QuadricClass:
    if (cycle.ambient.n, cycle.ambient.r) != (2, 10) or cycle.dim != 1:
        raise InvalidDims("expected a curve class on the ten-point blow-up of the plane")
    return QuadricClass(PLANAR_BASIS, cycle.coeffs)


def pushforward_to_x39(x: QuadricClass) -> CycleClass:
    """Push a quadric curve class forward to the nine-point blow-up of P^3.

    Both rulings map to the line class and fi maps to E_{i,1}; the kernel is
    spanned by r1 - r2.
    """
    c = to_ruling(x).coeffs
    h_coeff = c[0] + c[1]
    return CycleClass(Ambient(3, 9, VERY_GENERAL), 1, (h_coeff,) + c[2:])


# ---------------------------------------------------------------------------
# positive cone and the certificate family


def positive_cone_predicate(cycle: CycleClass) -> bool:
    """Self-intersection >= 0 and nonnegative degree, in the plane model intersection form."""
    if (cycle.ambient.n, cycle.ambient.r) != (2, 10) or cycle.dim != 1:
        raise InvalidDims("the positive cone lives on the ten-point blow-up of the plane")
    return degree_pairing(cycle, cycle) >= 0 and cycle.degree >= 0


@dataclass(frozen=True)
class NullRayParams:
    """Exact parameters (d, d') for D = h - d*(e0+e1) - d'*(e2+..+e9)."""

    delta: Fraction
    delta_prime: Fraction


def null_ray_class(params: NullRayParams) -> QuadricClass:
    d, dp = params.delta, params.delta_prime
    return QuadricClass(PLANAR_BASIS, (Fraction(1), -d, -d) + (-dp,) * 8)


@dataclass(frozen=True)
class CertificateCheck:
    name: str
    passed: bool
    values: tuple[tuple[str, Fraction], ...]

    def describe(self) -> str:
        vals = ", ".join(f"{k} = {v}" for k, v in self.values)
        return f"{'pass' if self.passed else 'FAIL'}  {self.name}: {vals}"


@dataclass(frozen=True)
class CertificateReport:
    params: NullRayParams
    checks: tuple[CertificateCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = [c.describe() for c in self.checks]
        out.append(f"overall: {'pass' if self.passed else 'FAIL'}")
        return out


def certify_null_ray(params: NullRayParams) -> CertificateReport:
    """Exact certificate that the pushforward of D spans an extremal ray.

    Checks, all in exact rational arithmetic:
      (1) 0 < d' < d < 1/3                    (open parameter range)
      (2) 2d^2 + 8d'^2 = 1                    (D lies on the null quadric, D^2 = 0)
      (3) -3 + 2d + 8d' > 0                   (positive pairing with the canonical class)
      (4) equal coefficients on e0 and e1     (kills the ruling-difference ambiguity)
      (5) d > d' and 1 - d - 2d' > 0          (strictly positive degree on every line class)
    """
    d, dp = params.delta, params.delta_prime
    one = Fraction(1)
    checks = [
        CertificateCheck(
            "parameter-range 0 < d' < d < 1/3",
            0 < dp < d < Fraction(1, 3),
            (("d", d), ("d'", dp)),
        ),
        CertificateCheck(
            "null-quadric 2d^2 + 8d'^2 = 1",
            2 * d * d + 8 * dp * dp == 1,
            (("2d^2 + 8d'^2", 2 * d * d + 8 * dp * dp),),
        ),
        CertificateCheck(
            "canonical-pairing -3 + 2d + 8d' > 0",
            -3 + 2 * d + 8 * dp > 0,
            (("-3 + 2d + 8d'", -3 + 2 * d + 8 * dp),),
        ),
    ]
    cls = null_ray_class(params)
    checks.append(
        CertificateCheck(
            "ruling-symmetry: equal e0, e1 coefficients",
            cls.coeffs[1] == cls.coeffs[2],
            (("e0 coefficient", cls.coeffs[1]), ("e1 coefficient", cls.coeffs[2])),
        )
    )
    checks.append(
        CertificateCheck(
            "line-positivity d > d' and 1 - d - 2d' > 0",
            d > dp and one - d - 2 * dp > 0,
            (("d - d'", d - dp), ("1 - d - 2d'", one - d - 2 * dp)),
        )
    )
    return CertificateReport(params, tuple(checks))
