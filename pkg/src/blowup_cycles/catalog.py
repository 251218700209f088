"""Generation-status oracle and a library of named example classes.

``status`` answers, for the cone of k-cycles on the blow-up of P^n at r points
in a given position: is the cone spanned by linear cycle classes, and is it
rational polyhedral?  The answers are a fixed rule table applied in precedence
order (first rule to speak for a field wins), followed by two closure steps:
linear generation implies polyhedrality, and failure of polyhedrality implies
failure of linear generation.  Every verdict carries the rule id and a
self-contained statement of the fact used, so results are auditable; regions
the table does not cover come back unknown, annotated with the open question
that delimits them.

The oracle states known results only; it proves nothing new.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .classgroup import (
    Ambient,
    ConfigTag,
    CycleClass,
    LINEARLY_GENERAL,
    VERY_GENERAL,
    custom,
)
from .errors import InvalidAmbient, InvalidQuery, UnknownClass

YES = "yes"
NO = "no"
UNKNOWN = "unknown"
CONDITIONAL_NO = "conditional-no"


@dataclass(frozen=True)
class Citation:
    """Rule id plus the mathematical statement it relies on."""

    rule: str
    statement: str

    def __str__(self) -> str:
        return f"[{self.rule}] {self.statement}"


@dataclass(frozen=True)
class GenerationStatus:
    linear: str
    finite: str
    assumption: str | None = None
    citations: tuple[Citation, ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.linear == YES and self.finite not in (YES,):
            raise AssertionError("linear generation implies a polyhedral cone")
        if self.finite == NO and self.linear != NO:
            raise AssertionError("a non-polyhedral cone cannot be linearly generated")
        if self.finite == CONDITIONAL_NO and not self.assumption:
            raise AssertionError("conditional verdicts must name their assumption")

    @property
    def citation(self) -> str:
        return "; ".join(str(c) for c in self.citations)


def divisor_cone_polyhedral(n: int, r: int) -> bool:
    """Very general points: the divisor cone is rational polyhedral exactly here.

    This is also exactly the range in which the blow-up is a Mori dream space.
    """
    if n == 2 or n == 4:
        return r <= 8
    if n == 3:
        return r <= 7
    return r <= n + 3


# ---------------------------------------------------------------------------
# the rule table

Effects = dict


@dataclass(frozen=True)
class Rule:
    id: str
    statement: str
    evaluate: Callable[[int, int, int, ConfigTag], Effects | None] = field(repr=False)

    def cite(self) -> Citation:
        return Citation(self.id, self.statement)


def _implies_linear_generality(r: int, config: ConfigTag) -> bool:
    if config.kind in ("very-general", "linearly-general"):
        return True
    # r points spanning an (r-1)-plane are projectively independent
    m = config.span_dim
    return m is not None and m == r - 1


def _toric(n, r, k, config):
    if r <= n + 1 and _implies_linear_generality(r, config):
        return {"linear": YES}
    return None


def _small_span(n, r, k, config):
    m = config.span_dim
    if m is not None and k >= m:
        return {"linear": YES}
    return None


def _planar_nine_plus(n, r, k, config):
    if config.kind != "planar-nine-plus":
        return None
    s = config.param
    if k <= s:
        return {"finite": NO}
    return {"linear": YES}


def _divisor_classification(n, r, k, config):
    if k != n - 1 or config != VERY_GENERAL:
        return None
    return {
        "linear": YES if r <= n + 2 else NO,
        "finite": YES if divisor_cone_polyhedral(n, r) else NO,
    }


def _curves_power_bound(n, r, k, config):
    if k != 1 or config != VERY_GENERAL:
        return None
    return {"linear": YES if r <= 2**n else NO}


def _very_general_linear_range(n, r, k, config):
    if config != VERY_GENERAL:
        return None
    if r <= 2 * n - k + 1:
        return {"linear": YES}
    if r >= 2 ** (n - k + 1) + k:
        return {"linear": NO}
    return None


def _surfaces_eight_points_p4(n, r, k, config):
    if (n, r, k) == (4, 8, 2) and config == VERY_GENERAL:
        return {"linear": YES}
    return None


def _surfaces_up_to_2n(n, r, k, config):
    if k == 2 and n >= 4 and r <= 2 * n and config == VERY_GENERAL:
        return {"linear": YES}
    return None


def _codim_two_conditional(n, r, k, config):
    if k == n - 2 and n >= 3 and r >= n + 6 and config == VERY_GENERAL:
        return {"finite": CONDITIONAL_NO, "assumption": "SHGH"}
    return None


def _seven_points_p4(n, r, k, config):
    if (n, r, k) == (4, 7, 2) and config == LINEARLY_GENERAL:
        return {"linear": YES}
    return None


def _linearly_general_bound(n, r, k, config):
    if config != LINEARLY_GENERAL:
        return None
    # r <= max(n+2, n + n/k), the fraction compared exactly
    if r <= n + 2 or k * (r - n) <= n:
        return {"linear": YES}
    return None


def _mori_dream_finite(n, r, k, config):
    if config == VERY_GENERAL and divisor_cone_polyhedral(n, r):
        return {"finite": YES}
    return None


RULES: tuple[Rule, ...] = (
    Rule(
        "toric",
        "at most n+1 linearly general points give a toric blow-up; every cone of "
        "effective cycles is spanned by linear cycle classes",
        _toric,
    ),
    Rule(
        "small-span",
        "if the points span only an m-plane, then for k >= m every effective k-cycle "
        "is a nonnegative combination of the k-plane through all the points and "
        "classes inside the exceptional divisors",
        _small_span,
    ),
    Rule(
        "planar-nine-plus",
        "nine general points in a plane carry infinitely many (-1)-curves; cones over "
        "them through the s-1 extra points stay extremal, so the k-cycle cone is not "
        "polyhedral for k <= s, while for k > s the span reduction gives linear generation",
        _planar_nine_plus,
    ),
    Rule(
        "divisor-classification",
        "very general points: the divisor cone is linearly generated exactly for "
        "r <= n+2, and rational polyhedral exactly for (n=2, r<=8), (n=3, r<=7), "
        "(n=4, r<=8), (n>=5, r<=n+3)",
        _divisor_classification,
    ),
    Rule(
        "curves-power-bound",
        "very general points: the curve cone is spanned by lines if and only if "
        "r <= 2^n (the quadric class through the points is nef up to 2^n points and "
        "has top self-intersection 2^n - r)",
        _curves_power_bound,
    ),
    Rule(
        "very-general-linear-range",
        "very general points: the k-cycle cone is linearly generated for r <= 2n-k+1; "
        "for r >= 2^(n-k+1) + k the (k-1)-fold cone over a non-spanned curve class "
        "shows it is not",
        _very_general_linear_range,
    ),
    Rule(
        "surfaces-eight-points-p4",
        "eight very general points in P^4: the surface cone is linearly generated",
        _surfaces_eight_points_p4,
    ),
    Rule(
        "surfaces-up-to-2n",
        "very general points, n >= 4: the surface cone is linearly generated for "
        "r <= 2n (degeneration from the eight-point case in P^4)",
        _surfaces_up_to_2n,
    ),
    Rule(
        "codim-two-conditional",
        "assuming the expected-dimension count for ten general points in the plane "
        "(SHGH), the codimension-two cone is not polyhedral for r >= n+6, n >= 3: "
        "null-ray divisor classes on the quadric push forward to infinitely many "
        "extremal rays and survive taking cones",
        _codim_two_conditional,
    ),
    Rule(
        "seven-points-p4",
        "seven linearly general points in P^4: the surface cone is linearly generated "
        "(every surface meets a cubic scroll or the secant variety calculus applies)",
        _seven_points_p4,
    ),
    Rule(
        "linearly-general-bound",
        "linearly general points: the k-cycle cone is linearly generated for "
        "r <= max(n+2, n + n/k)",
        _linearly_general_bound,
    ),
    Rule(
        "mori-dream-finite",
        "in the Mori dream range (divisor cone polyhedral) every cone of cycles on "
        "the blow-up is rational polyhedral",
        _mori_dream_finite,
    ),
)


def _open_question_notes(n, r, k, config, linear, finite) -> list[str]:
    notes = []
    if linear == UNKNOWN:
        if config == VERY_GENERAL:
            notes.append(
                f"open: for very general points with 2n-k+1 < r < 2^(n-k+1)+k "
                f"(here {2 * n - k + 1} < r < {2 ** (n - k + 1) + k}) linear generation is not settled"
            )
        elif config == LINEARLY_GENERAL:
            if r > 2 * n - k + 1:
                notes.append(
                    "witness: some linearly general configurations of this size are not "
                    "linearly generated; points on a cone over a rational normal curve "
                    "give the class "
                    f"{named_class('cone-over-rnc', n=n, k=k, r=r)}"
                )
            else:
                notes.append(
                    f"open: for linearly general points with max(n+2, n+n/k) < r <= 2n-k+1 "
                    f"(here r <= {2 * n - k + 1}) linear generation is expected but unproven"
                )
        elif config.kind == "span-dim" and config.span_dim is not None and k < config.span_dim:
            notes.append(
                f"reduces to the k-cycle cone on the spanned {config.span_dim}-plane; the "
                "position of the points inside their span is not recorded by this tag"
            )
        elif config.kind == "custom":
            notes.append("no rule covers custom configurations")
    if finite == UNKNOWN:
        if k == 1:
            notes.append(
                "open: whether the curve cone stops being rational polyhedral for some r "
                "is unknown for every n >= 3"
            )
        else:
            notes.append(
                "open: no polyhedrality criterion in the table applies; for fixed n and k "
                "it is unknown which r make the cone non-polyhedral"
            )
    return notes


def status(n: int, r: int, k: int, config: ConfigTag = VERY_GENERAL) -> GenerationStatus:
    """Generation status of the cone of k-cycles on the blow-up of P^n at r points."""
    if not isinstance(n, int) or not isinstance(r, int) or not isinstance(k, int):
        raise InvalidQuery("n, r, k must be integers")
    if not 1 <= k <= n - 1:
        raise InvalidQuery(f"cycle dimension k={k} outside 1..{n - 1}")
    try:
        Ambient(n, r, config)
    except InvalidAmbient as exc:
        raise InvalidQuery(str(exc)) from exc

    linear: str | None = None
    finite: str | None = None
    assumption: str | None = None
    citations: list[Citation] = []
    for rule in RULES:
        effects = rule.evaluate(n, r, k, config)
        if not effects:
            continue
        fired = False
        if "linear" in effects and linear is None:
            linear = effects["linear"]
            fired = True
        if "finite" in effects and finite is None:
            finite = effects["finite"]
            assumption = effects.get("assumption")
            fired = True
        if fired:
            citations.append(rule.cite())
        if linear is not None and finite is not None:
            break

    # closure: linear generation gives a polyhedral cone; a non-polyhedral cone
    # cannot be linearly generated
    if linear == YES and finite is None:
        finite = YES
    if finite in (NO,) and linear is None:
        linear = NO
    linear = linear or UNKNOWN
    finite = finite or UNKNOWN
    notes = _open_question_notes(n, r, k, config, linear, finite)
    return GenerationStatus(
        linear=linear,
        finite=finite,
        assumption=assumption,
        citations=tuple(citations),
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# named example classes


def rnc(n: int, r: int) -> CycleClass:
    """Strict transform of a rational normal curve of degree n through r points: (n; 1 x r)."""
    ambient = Ambient(n, r, custom("on-rational-normal-curve"))
    return CycleClass.from_multiplicities(ambient, 1, n, [1] * r)


def cone_over_rnc(n: int, k: int, r: int) -> CycleClass:
    """Cone over a rational normal curve of degree n-k+1 with a (k-2)-plane vertex.

    Class (n-k+1; (n-k+1) x (k-1), 1 x (r-k+1)): k-1 points on the vertex, the
    rest on the cone.  The configuration is linearly general, and for
    r > 2n-k+1 the class is not spanned by k-plane classes.
    """
    if not 1 <= k <= n - 1:
        raise UnknownClass(f"cone dimension k={k} outside 1..{n - 1}")
    if r < k - 1:
        raise UnknownClass(f"need at least k-1={k - 1} points for the vertex, got r={r}")
    deg = n - k + 1
    mults = [deg] * (k - 1) + [1] * (r - k + 1)
    return CycleClass.from_multiplicities(Ambient(n, r, LINEARLY_GENERAL), k, deg, mults)


def secant_quartic_p4() -> CycleClass:
    """Secant variety of the rational normal quartic through 7 points in P^4: (3; 2 x 7).

    A cubic hypersurface, double along the curve, hence with multiplicity 2 at
    each of the points.
    """
    return CycleClass.from_multiplicities(Ambient(4, 7, LINEARLY_GENERAL), 3, 3, [2] * 7)


def cm_curve() -> CycleClass:
    """The degree-57 plane curve with ten 18-fold points: (57; 18 x 10) on ten very general points."""
    return CycleClass.from_multiplicities(Ambient(2, 10, VERY_GENERAL), 1, 57, [18] * 10)


def ci_curve(d: int, n: int, r: int) -> CycleClass:
    """Curve cut out by n-1 degree-d hypersurfaces through the points: (d^(n-1); 1 x r).

    Pseudoeffective whenever d^n >= r; for r > 2*d^(n-1) it is not spanned by lines.
    """
    if d < 1:
        raise UnknownClass(f"complete intersection degree must be >= 1, got {d}")
    return CycleClass.from_multiplicities(Ambient(n, r, VERY_GENERAL), 1, d ** (n - 1), [1] * r)


_NAMED: dict[str, tuple[Callable[..., CycleClass], tuple[str, ...]]] = {
    "rnc": (rnc, ("n", "r")),
    "cone-over-rnc": (cone_over_rnc, ("n", "k", "r")),
    "secant-quartic-p4": (secant_quartic_p4, ()),
    "cm-curve": (cm_curve, ()),
    "ci-curve": (ci_curve, ("d", "n", "r")),
}


def named_class_catalog() -> dict[str, tuple[str, ...]]:
    """Available names and the integer parameters each takes."""
    return {name: params for name, (_, params) in _NAMED.items()}


def named_class(name: str, **params: int) -> CycleClass:
    """Construct a catalogued class by name, e.g. named_class('rnc', n=3, r=6)."""
    key = name.strip().lower().replace("_", "-")
    if key not in _NAMED:
        raise UnknownClass(f"unknown class name {name!r}; known: {', '.join(sorted(_NAMED))}")
    ctor, expected = _NAMED[key]
    missing = [p for p in expected if p not in params]
    extra = [p for p in params if p not in expected]
    if missing or extra:
        raise UnknownClass(
            f"{key} takes parameters ({', '.join(expected)});"
            + (f" missing {missing}" if missing else "")
            + (f" unexpected {extra}" if extra else "")
        )
    return ctor(**params)
