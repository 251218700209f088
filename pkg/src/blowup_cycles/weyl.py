"""Reflection group action on divisor classes and orbit enumeration.

The group is generated by reflections preserving the invariant pairing with
(H, H) = n-1, (E_i, E_i) = -1 and mixed products zero.  Every root alpha has
self-pairing -2 and reflects x to x + (x, alpha) * alpha.  Two families of
roots act:

  permutation roots   E_i - E_j            (swap the multiplicities at i, j)
  degree roots        H - E_{i_1} - ... - E_{i_{n+1}}   (Cremona moves)

The simple roots E_i - E_{i+1} (i = 1..r-1) together with the standard degree
root H - E_1 - ... - E_{n+1} form the T-shaped Coxeter diagram of type
T(2, n+1, r-n-1); the group is finite, affine or indefinite according as
1/2 + 1/(n+1) + 1/(r-n-1) is greater than, equal to, or less than 1.

Orbit enumeration runs breadth-first over the full reflection family (all
transpositions and all degree roots), which reaches classes of a given degree
in far shorter words than the simple generators alone; word length in the
output counts reflections applied.  For speed the closure runs on primitive
integer vectors; this is exact, and rational inputs are handled by scaling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .classgroup import Ambient, CycleClass, mukai_pairing
from .errors import InvalidClass, InvalidDims, NoCremonaRoot, NoTShape


@dataclass(frozen=True)
class Root:
    """A reflection root: a divisor class with self-pairing -2."""

    vector: CycleClass
    kind: str  # "cremona" | "permutation"

    def __post_init__(self):
        if mukai_pairing(self.vector, self.vector) != -2:
            raise InvalidClass(f"root must have self-pairing -2, got {self.vector}")


def cremona_root(ambient: Ambient, points: Sequence[int] | None = None) -> Root:
    """The degree root H - E_{i_1} - ... - E_{i_{n+1}}; defaults to the first n+1 points."""
    n, r = ambient.n, ambient.r
    if r < n + 1:
        raise NoCremonaRoot(f"a degree root needs n+1 = {n + 1} points, model has r = {r}")
    if points is None:
        points = tuple(range(1, n + 2))
    else:
        points = tuple(points)
        if len(set(points)) != n + 1 or not all(1 <= i <= r for i in points):
            raise InvalidClass(f"degree root needs {n + 1} distinct indices in 1..{r}")
    coeffs = [Fraction(0)] * (r + 1)
    coeffs[0] = Fraction(1)
    for i in points:
        coeffs[i] = Fraction(-1)
    return Root(CycleClass(ambient, n - 1, tuple(coeffs)), "cremona")


def permutation_root(ambient: Ambient, i: int) -> Root:
    """The root E_i - E_{i+1}, whose reflection swaps the two multiplicities."""
    if not 1 <= i <= ambient.r - 1:
        raise InvalidClass(f"adjacent transposition index {i} outside 1..{ambient.r - 1}")
    coeffs = [Fraction(0)] * (ambient.r + 1)
    coeffs[i] = Fraction(1)
    coeffs[i + 1] = Fraction(-1)
    return Root(CycleClass(ambient, ambient.n - 1, tuple(coeffs)), "permutation")


def simple_roots(ambient: Ambient) -> list[Root]:
    """Generator 0 is the standard degree root; generators 1..r-1 the adjacent transpositions."""
    return [cremona_root(ambient)] + [permutation_root(ambient, i) for i in range(1, ambient.r)]


def reflect(x: CycleClass, root: Root) -> CycleClass:
    """Reflection x -> x + (x, alpha) * alpha; an involutive isometry of the pairing."""
    c = mukai_pairing(x, root.vector)
    return x + root.vector.scale(c)


def apply_word(word: Iterable[int], x: CycleClass) -> CycleClass:
    """Apply simple reflections left to right; index 0 is the degree root."""
    roots = simple_roots(x.ambient)
    for idx in word:
        if not 0 <= idx < len(roots):
            raise InvalidClass(f"generator index {idx} outside 0..{len(roots) - 1}")
        x = reflect(x, roots[idx])
    return x


# ---------------------------------------------------------------------------
# group type


@dataclass(frozen=True)
class GroupType:
    """Finite / affine / indefinite, with the defining rational 1/2 + 1/(n+1) + 1/(r-n-1)."""

    kind: str
    value: Fraction

    @property
    def infinite(self) -> bool:
        return self.kind != "finite"

    def __str__(self) -> str:
        return f"{self.kind} (1/2 + 1/(n+1) + 1/(r-n-1) = {self.value})"


def group_type(n: int, r: int) -> GroupType:
    """Classify the T(2, n+1, r-n-1) reflection group.

    The group is infinite in the affine (= 1) and indefinite (< 1) cases; the
    affine boundary cases such as (n, r) = (2, 9) and (5, 9) are infinite.
    """
    if n < 2:
        raise NoTShape(f"need n >= 2, got {n}")
    if r < n + 2:
        raise NoTShape(f"the T-shaped diagram needs r >= n+2, got n={n}, r={r}")
    value = Fraction(1, 2) + Fraction(1, n + 1) + Fraction(1, r - n - 1)
    if value > 1:
        kind = "finite"
    elif value == 1:
        kind = "affine"
    else:
        kind = "indefinite"
    return GroupType(kind, value)


# ---------------------------------------------------------------------------
# orbit enumeration


@dataclass(frozen=True)
class OrbitRecord:
    cycle: CycleClass
    word_length: int


@dataclass(frozen=True)
class OrbitResult:
    """Breadth-first orbit closure up to a word-length bound.

    ``records`` is sorted lexicographically by coefficient vector, so output
    is deterministic.  ``closed`` means a whole level produced nothing new, so
    the full orbit has been reached.
    """

    records: tuple[OrbitRecord, ...]
    closed: bool
    max_word_length: int
    degree_cap: Fraction | None

    @property
    def count(self) -> int:
        return len(self.records)

    @property
    def classes(self) -> tuple[CycleClass, ...]:
        return tuple(rec.cycle for rec in self.records)

    @property
    def max_degree(self) -> Fraction:
        return max(rec.cycle.degree for rec in self.records)


def _reflection_vectors(n: int, r: int) -> list[tuple[int, ...]]:
    """Integer root vectors for all transpositions and all degree roots."""
    roots: list[tuple[int, ...]] = []
    for i, j in itertools.combinations(range(1, r + 1), 2):
        v = [0] * (r + 1)
        v[i], v[j] = 1, -1
        roots.append(tuple(v))
    for subset in itertools.combinations(range(1, r + 1), n + 1):
        v = [0] * (r + 1)
        v[0] = 1
        for i in subset:
            v[i] = -1
        roots.append(tuple(v))
    return roots


def _primitive(x: CycleClass) -> tuple[tuple[int, ...], Fraction]:
    """Write x = scale * v with v a primitive integer vector and scale > 0."""
    mult = lcm(*(c.denominator for c in x.coeffs))
    ints = [int(c * mult) for c in x.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g == 0:
        return tuple(ints), Fraction(1)
    return tuple(c // g for c in ints), Fraction(g, mult)


def orbit_enumerate(
    x: CycleClass,
    max_word_length: int,
    degree_cap: Fraction | int | None = None,
    resume: Iterable[tuple[CycleClass, int]] | None = None,
) -> OrbitResult:
    """Closure of a divisor class under the reflection family, up to a word-length bound.

    ``degree_cap`` discards images whose degree exceeds the cap (safety valve
    for infinite orbits).  ``resume`` seeds the search with previously found
    (class, word_length) records, continuing from their deepest level; the
    records must come from a completed run on the same model.
    """
    ambient = x.ambient
    n, r = ambient.n, ambient.r
    if not x.is_divisor:
        raise InvalidDims("orbit enumeration acts on divisor classes")
    if r < n + 1:
        raise NoCremonaRoot(f"degree roots need r >= n+1, got r={r}")
    start_vec, scale = _primitive(x)
    roots = _reflection_vectors(n, r)
    cap = None
    if degree_cap is not None:
        # cap applies to the class itself; translate to the primitive vector
        cap_frac = Fraction(degree_cap) / scale if scale != 0 else Fraction(degree_cap)
        cap = cap_frac

    seen: dict[tuple[int, ...], int] = {start_vec: 0}
    frontier: list[tuple[int, ...]] = [start_vec]
    depth = 0
    if resume is not None:
        for cycle, wl in resume:
            scaled = [c / scale for c in cycle.coeffs]
            if any(q.denominator != 1 for q in scaled):
                raise InvalidClass("resume record is not a multiple of the starting class scale")
            vec = tuple(int(q) for q in scaled)
            seen[vec] = min(wl, seen.get(vec, wl))
        depth = max(seen.values())
        frontier = [v for v, wl in seen.items() if wl == depth]

    nm1 = n - 1
    closed = False
    while depth < max_word_length:
        depth += 1
        next_frontier: list[tuple[int, ...]] = []
        for vec in frontier:
            for root in roots:
                c = nm1 * vec[0] * root[0]
                for a, b in zip(vec[1:], root[1:]):
                    if b:
                        c -= a * b
                if c == 0:
                    continue
                image = tuple(a + c * b for a, b in zip(vec, root))
                if image not in seen:
                    if cap is not None and image[0] > cap:
                        continue
                    seen[image] = depth
                    next_frontier.append(image)
        if not next_frontier:
            closed = True
            break
        frontier = next_frontier

    def rebuild(vec: tuple[int, ...]) -> CycleClass:
        return CycleClass(ambient, n - 1, tuple(scale * v for v in vec))

    records = tuple(
        OrbitRecord(rebuild(vec), wl) for vec, wl in sorted(seen.items())
    )
    return OrbitResult(records, closed, max_word_length, Fraction(degree_cap) if degree_cap is not None else None)


# ---------------------------------------------------------------------------
# orbit dump format: one record per line, `degree;m_1,...,m_r;word_length`


def orbit_dump_lines(result: OrbitResult) -> list[str]:
    lines = []
    for rec in result.records:
        mults = ",".join(str(b) for b in rec.cycle.multiplicities)
        lines.append(f"{rec.cycle.degree};{mults};{rec.word_length}")
    return lines


def parse_orbit_dump(lines: Iterable[str], ambient: Ambient) -> list[tuple[CycleClass, int]]:
    out = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(";")
        if len(parts) != 3:
            raise InvalidClass(f"orbit dump line {lineno}: expected 'degree;m_1,..,m_r;word_length'")
        degree = Fraction(parts[0])
        mults = [Fraction(p) for p in parts[1].split(",")] if parts[1] else []
        if len(mults) != ambient.r:
            raise InvalidClass(f"orbit dump line {lineno}: expected {ambient.r} multiplicities")
        wl = int(parts[2])
        out.append((CycleClass.from_multiplicities(ambient, ambient.n - 1, degree, mults), wl))
    return out
