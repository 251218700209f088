"""Exact linear feasibility: is a vector a nonnegative combination of given columns?

Phase-1 simplex on an integer row-scaled tableau.  Every row carries an
implicit positive denominator, so pivots stay in integer arithmetic and the
decision is exact.  Entering column: most negative reduced cost, switching to
Bland's rule (with the matching leaving-row tie-break) after a fixed number of
iterations to rule out cycling.

Two backends share the pivot rules: a pure-Python big-integer tableau that
also extracts the certificate, and an int64 kernel (JIT-compiled when numba is
available) that only decides.  The kernel watches for potential overflow and
reports it, in which case the caller falls back to the big-integer path, so
exactness never depends on word size.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

from .classgroup import RationalLike, as_rational

_BLAND_AFTER = 200
_REDUCE_ABOVE = 1 << 62

try:  # pragma: no cover - exercised implicitly
    import numpy as _np
    from numba import njit as _njit

    _HAVE_KERNEL = True
except Exception:  # pragma: no cover
    _HAVE_KERNEL = False


def _integer_vector_scaled(values: Sequence[RationalLike]) -> tuple[list[int], int]:
    """Scale a rational vector by a positive integer to integer entries.

    Scaling a column (or the target) by a positive factor does not change
    feasibility of  sum lam_j col_j = target, lam >= 0.
    """
    if all(isinstance(x, int) for x in values):
        return list(values), 1
    v = [as_rational(x) for x in values]
    scale = lcm(*(x.denominator for x in v)) if v else 1
    return [int(x * scale) for x in v], scale


def _integer_vector(values: Sequence[RationalLike]) -> list[int]:
    return _integer_vector_scaled(values)[0]


def _phase1_python(target: list[int], columns: list[list[int]]):
    """Big-integer phase-1 simplex.  Returns basis data for certificate extraction, or None."""
    d = len(target)
    m = len(columns)
    rows: list[list[int]] = []
    rhs: list[int] = []
    for i in range(d):
        t = target[i]
        if t < 0:
            rows.append([-columns[j][i] for j in range(m)])
            rhs.append(-t)
        else:
            rows.append([columns[j][i] for j in range(m)])
            rhs.append(t)
    obj = [0] * m
    for row in rows:
        for j in range(m):
            obj[j] -= row[j]
    objval = -sum(rhs)
    basis = [-1 - i for i in range(d)]  # negative labels mark artificial variables
    it = 0
    while objval != 0:
        it += 1
        q = -1
        if it > _BLAND_AFTER:
            for j in range(m):
                if obj[j] < 0:
                    q = j
                    break
        else:
            best = 0
            for j in range(m):
                if obj[j] < best:
                    best = obj[j]
                    q = j
        if q < 0:
            return None  # optimum positive: infeasible
        p = -1
        bn = bd = 0
        for i in range(d):
            a = rows[i][q]
            if a > 0:
                rn = rhs[i]
                if p < 0 or rn * bd < bn * a or (rn * bd == bn * a and basis[i] < basis[p]):
                    p, bn, bd = i, rn, a
        if p < 0:
            return None  # unbounded cannot happen in phase 1; defensive
        piv = rows[p][q]
        prow = rows[p]
        prhs = rhs[p]
        for i in range(d):
            if i == p:
                continue
            a = rows[i][q]
            if a:
                ri = rows[i]
                rows[i] = [piv * x - a * y for x, y in zip(ri, prow)]
                rhs[i] = piv * rhs[i] - a * prhs
                if max(map(abs, rows[i]), default=0) > _REDUCE_ABOVE:
                    g = reduce(gcd, rows[i], rhs[i])
                    if g > 1:
                        rows[i] = [x // g for x in rows[i]]
                        rhs[i] //= g
        a = obj[q]
        if a:
            obj = [piv * x - a * y for x, y in zip(obj, prow)]
            objval = piv * objval - a * prhs
            g = reduce(gcd, obj, objval)
            if g > 1:
                obj = [x // g for x in obj]
                objval //= g
        basis[p] = q
    return rows, rhs, basis


def nonnegative_combination(
    target: Sequence[RationalLike], columns: Sequence[Sequence[RationalLike]]
) -> list[Fraction] | None:
    """Exact coefficients lam >= 0 with sum lam_j columns[j] = target, or None.

    The returned coefficients refer to the columns as given (before internal
    scaling) and re-sum to the target exactly.
    """
    d = len(target)
    cols_scaled = []
    col_scales = []
    for col in columns:
        if len(col) != d:
            raise ValueError(f"column of length {len(col)} does not match target of length {d}")
        ints, scale = _integer_vector_scaled(col)
        cols_scaled.append(ints)
        col_scales.append(scale)
    tint, tscale = _integer_vector_scaled(target)
    result = _phase1_python(tint, cols_scaled)
    if result is None:
        return None
    rows, rhs, basis = result
    lam = [Fraction(0)] * len(columns)
    for i, b in enumerate(basis):
        if b >= 0:
            lam[b] = Fraction(rhs[i], rows[i][b])
    out = [lam[j] * col_scales[j] / tscale for j in range(len(columns))]
    # exact re-summation check; cheap relative to the solve
    for i in range(d):
        acc = Fraction(0)
        for j, col in enumerate(columns):
            if out[j]:
                acc += out[j] * as_rational(col[i])
        assert acc == as_rational(target[i]), "internal error: certificate does not re-sum"
    return out


if _HAVE_KERNEL:
    _GUARD = 1 << 31  # factors kept below this bound so int64 products are exact

    @_njit(cache=True)
    def _phase1_int64(rows, rhs, obj, objval):  # pragma: no cover - jitted
        """int64 twin of the big-integer solver. 1 feasible, 0 infeasible, -1 rescale needed."""
        d, m = rows.shape
        basis = -_np.arange(1, d + 1)
        it = 0
        while objval != 0:
            it += 1
            if it > 10000:
                return -1
            q = -1
            if it > 200:
                for j in range(m):
                    if obj[j] < 0:
                        q = j
                        break
            else:
                best = _np.int64(0)
                for j in range(m):
                    if obj[j] < best:
                        best = obj[j]
                        q = j
            if q < 0:
                return 0
            p = -1
            bn = _np.int64(0)
            bd = _np.int64(1)
            for i in range(d):
                a = rows[i, q]
                if a > 0:
                    rn = rhs[i]
                    if p < 0 or rn * bd < bn * a or (rn * bd == bn * a and basis[i] < basis[p]):
                        p = i
                        bn = rn
                        bd = a
            if p < 0:
                return 0
            piv = rows[p, q]
            if piv >= _GUARD:
                return -1
            for i in range(d):
                if i == p:
                    continue
                a = rows[i, q]
                if a != 0:
                    if a >= _GUARD or -a >= _GUARD:
                        return -1
                    mx = _np.int64(0)
                    for j in range(m):
                        v = piv * rows[i, j] - a * rows[p, j]
                        rows[i, j] = v
                        if v > mx:
                            mx = v
                        elif -v > mx:
                            mx = -v
                    rhs[i] = piv * rhs[i] - a * rhs[p]
                    if rhs[i] > mx:
                        mx = rhs[i]
                    if mx >= _GUARD:
                        g = rhs[i]
                        for j in range(m):
                            v = rows[i, j]
                            if v < 0:
                                v = -v
                            while v:
                                g, v = v, g % v
                        if g > 1:
                            for j in range(m):
                                rows[i, j] //= g
                            rhs[i] //= g
                        mx = rhs[i]
                        for j in range(m):
                            v = rows[i, j]
                            if v > mx:
                                mx = v
                            elif -v > mx:
                                mx = -v
                        if mx >= _GUARD:
                            return -1
            a = obj[q]
            if a != 0:
                if a >= _GUARD or -a >= _GUARD:
                    return -1
                for j in range(m):
                    obj[j] = piv * obj[j] - a * rows[p, j]
                objval = piv * objval - a * rhs[p]
                g = -objval
                for j in range(m):
                    v = obj[j]
                    if v < 0:
                        v = -v
                    while v:
                        g, v = v, g % v
                if g > 1:
                    for j in range(m):
                        obj[j] //= g
                    objval //= g
            basis[p] = q
        return 1


class PreparedColumns:
    """Integer-normalized generator columns, reusable across many targets.

    Holds the big-integer column list and, when the int64 kernel is usable for
    these columns, the transposed numpy matrix it pivots on.
    """

    __slots__ = ("columns", "matrix")

    def __init__(self, columns: Sequence[Sequence[RationalLike]]):
        self.columns = [_integer_vector(col) for col in columns]
        d = len(self.columns[0]) if self.columns else 0
        if any(len(c) != d for c in self.columns):
            raise ValueError("generator columns must all have the same length")
        self.matrix = None
        if _HAVE_KERNEL and self.columns:
            biggest = max(max(map(abs, c), default=0) for c in self.columns)
            if biggest < _GUARD:
                self.matrix = _np.array(self.columns, dtype=_np.int64).T.copy()

    def feasible(self, target: Sequence[RationalLike]) -> bool:
        tint = _integer_vector(target)
        if self.columns and len(tint) != len(self.columns[0]):
            raise ValueError(
                f"target of length {len(tint)} does not match columns of length {len(self.columns[0])}"
            )
        if self.matrix is not None and all(-_GUARD < t < _GUARD for t in tint):
            d = len(tint)
            rows = _np.empty((d, self.matrix.shape[1]), dtype=_np.int64)
            rhs = _np.empty(d, dtype=_np.int64)
            for i in range(d):
                if tint[i] < 0:
                    rows[i] = -self.matrix[i]
                    rhs[i] = -tint[i]
                else:
                    rows[i] = self.matrix[i]
                    rhs[i] = tint[i]
            obj = -rows.sum(axis=0)
            res = int(_phase1_int64(rows, rhs, obj, -int(rhs.sum())))
            if res >= 0:
                return bool(res)
        return _phase1_python(tint, self.columns) is not None


def prepare_columns(columns: Sequence[Sequence[RationalLike]]) -> PreparedColumns:
    return PreparedColumns(columns)


def feasible_nonnegative_combination(
    target: Sequence[RationalLike], columns: Sequence[Sequence[RationalLike]]
) -> bool:
    """Exact yes/no version of :func:`nonnegative_combination`.

    Prefers the int64 kernel; any risk of overflow routes the instance to the
    big-integer solver, so the answer is always exact.
    """
    return PreparedColumns(columns).feasible(target)
