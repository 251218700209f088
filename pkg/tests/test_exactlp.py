import random
from fractions import Fraction as F

import pytest

from blowup_cycles.exactlp import (
    feasible_nonnegative_combination,
    nonnegative_combination,
    prepare_columns,
)


def brute_force_feasible(target, columns, denominator_bound=6, coeff_bound=6):
    """Rational grid search used as an independent check on tiny instances."""
    from itertools import product

    grid = [F(n, d) for d in range(1, denominator_bound) for n in range(0, coeff_bound * d + 1)]
    grid = sorted(set(grid))
    if len(columns) > 3:
        raise ValueError("brute force only for <= 3 columns")
    for lams in product(grid, repeat=len(columns)):
        ok = all(
            sum(l * c[i] for l, c in zip(lams, columns)) == target[i] for i in range(len(target))
        )
        if ok:
            return True
    return False


def resums(target, columns, lam):
    for i in range(len(target)):
        acc = sum((l * F(c[i]) for l, c in zip(lam, columns)), start=F(0))
        if acc != F(target[i]):
            return False
    return True


class TestCertificates:
    def test_identity_columns(self):
        cols = [[1, 0], [0, 1]]
        lam = nonnegative_combination([3, 5], cols)
        assert lam == [F(3), F(5)]

    def test_infeasible_sign(self):
        assert nonnegative_combination([-1, 0], [[1, 0], [0, 1]]) is None
        assert not feasible_nonnegative_combination([-1, 0], [[1, 0], [0, 1]])

    def test_redundant_columns(self):
        cols = [[1, 1], [2, 2], [1, 0]]
        lam = nonnegative_combination([3, 2], cols)
        assert lam is not None and resums([3, 2], cols, lam)

    def test_rational_scaling(self):
        cols = [[F(1, 2), F(1, 3)], [F(0), F(1, 7)]]
        target = [F(1, 4), F(5, 21)]
        lam = nonnegative_combination(target, cols)
        assert lam is not None and resums(target, cols, lam)
        assert feasible_nonnegative_combination(target, cols)

    def test_zero_target(self):
        cols = [[1, -1], [0, 1]]
        lam = nonnegative_combination([0, 0], cols)
        assert lam == [F(0), F(0)]

    def test_no_columns(self):
        assert nonnegative_combination([0, 0], []) == []
        assert nonnegative_combination([1, 0], []) is None


class TestAgreementWithBruteForce:
    def test_tiny_instances(self):
        rng = random.Random(99)
        for _ in range(60):
            d = rng.randint(1, 3)
            ncols = rng.randint(1, 3)
            cols = [[rng.randint(0, 3) for _ in range(d)] for _ in range(ncols)]
            target = [rng.randint(0, 4) for _ in range(d)]
            expect = brute_force_feasible(target, cols)
            got = feasible_nonnegative_combination(target, cols)
            if expect:
                # grid search can only confirm membership
                assert got
            if got:
                lam = nonnegative_combination(target, cols)
                assert lam is not None and resums(target, cols, lam)


class TestBackendsAgree:
    def test_decision_matches_certificate_path(self):
        rng = random.Random(4)
        for _ in range(300):
            d = rng.randint(1, 6)
            ncols = rng.randint(1, 12)
            cols = [[rng.randint(-3, 5) for _ in range(d)] for _ in range(ncols)]
            target = [rng.randint(-4, 8) for _ in range(d)]
            fast = feasible_nonnegative_combination(target, cols)
            slow = nonnegative_combination(target, cols)
            assert fast == (slow is not None)
            if slow is not None:
                assert all(l >= 0 for l in slow)
                assert resums(target, cols, slow)

    def test_large_entries_fall_back_exactly(self):
        # entries beyond the int64 guard must route to the big-integer path
        big = 1 << 45
        cols = [[big, 0], [0, big], [big, big]]
        assert feasible_nonnegative_combination([big * 3, big * 2], cols)
        assert not feasible_nonnegative_combination([1, -1], [[big, 0], [0, 1]])
        lam = nonnegative_combination([big * 3, big * 2], cols)
        assert lam is not None and resums([big * 3, big * 2], cols, lam)


class TestPreparedColumns:
    def test_reuse_across_targets(self):
        cols = [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
        prep = prepare_columns(cols)
        for target in ([2, 1, 1], [0, 0, 0], [1, 1, 1], [5, 0, 0]):
            assert prep.feasible(target) == feasible_nonnegative_combination(target, cols)

    def test_length_checks(self):
        with pytest.raises(ValueError):
            prepare_columns([[1, 0], [1]])
        with pytest.raises(ValueError):
            prepare_columns([[1, 0]]).feasible([1, 2, 3])
