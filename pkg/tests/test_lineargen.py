import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blowup_cycles.catalog import cm_curve, cone_over_rnc, rnc
from blowup_cycles.classgroup import Ambient, from_point_multiplicities
from blowup_cycles.errors import InvalidDims, NotInCone
from blowup_cycles.lineargen import (
    Decomposition,
    ExceptionalGenerator,
    LinearGenerator,
    greedy_decompose,
    is_linearly_generated_class,
    lp_membership_oracle,
    maininequality_generators,
    simplex_cone_membership,
    violated_inequality,
)


def check_resum(v, dec: Decomposition):
    got = dec.resum(len(v) - 1)
    assert got == tuple(F(x) for x in v), (v, dec)


class TestInequalities:
    def test_clamped_span_count(self):
        # negative multiplicities do not count toward the span inequality
        assert violated_inequality((1, -5, 1), 1) is None
        bad = violated_inequality((1, 1, 1, 1), 2)
        assert bad is not None and bad.name == "span-count"
        assert (bad.lhs, bad.rhs) == (F(2), F(3))

    def test_degree_bound(self):
        bad = violated_inequality((2, 3, 0), 5)
        assert bad.name == "degree-bounds-multiplicity" and bad.index == 1

    def test_negative_degree(self):
        assert violated_inequality((-1,), 2).name == "nonnegative-degree"


class TestSimplexConeMembership:
    def test_generator_itself(self):
        verdict = simplex_cone_membership((1, 1, 1), 2)
        assert verdict.member
        assert [(g.label, c) for g, c in verdict.witness.terms] == [("h{1,2}", F(1))]

    def test_cm_class_not_member(self):
        verdict = simplex_cone_membership((57,) + (18,) * 10, 2)
        assert not verdict.member
        assert verdict.violation.name == "span-count"
        assert (verdict.violation.lhs, verdict.violation.rhs) == (F(114), F(180))

    def test_pushforward_not_member(self):
        verdict = simplex_cone_membership((78, 21) + (18,) * 8, 2)
        assert not verdict.member
        assert (verdict.violation.lhs, verdict.violation.rhs) == (F(156), F(165))

    def test_negative_multiplicity_member_with_witness(self):
        # H + E_1 in multiplicity coordinates is (1; -1)
        verdict = simplex_cone_membership((1, -1), 2)
        assert verdict.member
        check_resum((1, -1), verdict.witness)
        assert any(isinstance(g, ExceptionalGenerator) for g, _ in verdict.witness.terms)

    def test_negative_multiplicity_non_member(self):
        verdict = simplex_cone_membership((0, -1, 1), 2)
        assert not verdict.member

    def test_bad_span_size(self):
        with pytest.raises(InvalidDims):
            simplex_cone_membership((1, 1), 0)


class TestGreedyDecompose:
    def test_four_ones(self):
        dec = greedy_decompose((2, 1, 1, 1, 1), 2)
        assert [(g.label, c) for g, c in dec.terms] == [("h{1,2}", F(1)), ("h{3,4}", F(1))]
        check_resum((2, 1, 1, 1, 1), dec)

    def test_largest_first_tiebreak(self):
        dec = greedy_decompose((2, 2, 1, 1), 2)
        assert [(g.label, c) for g, c in dec.terms] == [("h{1,2}", F(1)), ("h{1,3}", F(1))]
        check_resum((2, 2, 1, 1), dec)

    def test_zero_vector(self):
        dec = greedy_decompose((0, 0, 0), 3)
        assert dec.terms == ()

    def test_plain_degree_uses_empty_plane(self):
        dec = greedy_decompose((2, 1, 0), 2)
        check_resum((2, 1, 0), dec)
        labels = [g.label for g, _ in dec.terms]
        assert "h{}" in labels and "h{1}" in labels

    def test_linear_degree_equals_input_degree(self):
        rng = random.Random(17)
        for _ in range(150):
            r = rng.randint(0, 7)
            s = rng.randint(1, 4)
            a = rng.randint(0, 9)
            b = [rng.randint(0, a) for _ in range(r)]
            while sum(b) > s * a:
                b[b.index(max(b))] -= 1
            dec = greedy_decompose([a] + b, s)
            assert dec.linear_degree == a
            check_resum([a] + b, dec)

    def test_rational_input_scaled(self):
        v = (F(3, 2), F(1, 2), F(1, 2), F(1, 2))
        dec = greedy_decompose(v, 2)
        check_resum(v, dec)

    def test_rejects_outside_cone(self):
        with pytest.raises(NotInCone) as exc:
            greedy_decompose((1, 1, 1, 1), 2)
        assert exc.value.violation.name == "span-count"
        with pytest.raises(NotInCone):
            greedy_decompose((1, -1), 2)  # negative multiplicities are not greedy material

    def test_step_bound(self):
        # integer input takes exactly `a` peeling steps, so coefficient totals stay small
        dec = greedy_decompose((12,) + (12,) * 4, 5)
        assert sum(c for _, c in dec.terms) == 12


class TestLpOracle:
    def test_greedy_outputs_are_members(self):
        rng = random.Random(31)
        for _ in range(60):
            r = rng.randint(1, 6)
            s = rng.randint(1, 3)
            a = rng.randint(0, 6)
            b = [rng.randint(0, a) for _ in range(r)]
            while sum(b) > s * a:
                b[b.index(max(b))] -= 1
            v = [a] + b
            greedy_decompose(v, s)
            assert lp_membership_oracle(v, maininequality_generators(r, s))

    def test_three_ones_not_member(self):
        assert not lp_membership_oracle((1, 1, 1, 1), maininequality_generators(3, 2))

    def test_six_ones_member(self):
        assert lp_membership_oracle((2, 1, 1, 1, 1, 1, 1), maininequality_generators(6, 3))

    def test_raw_vector_generators(self):
        gens = [g.vector(2) for g in maininequality_generators(2, 2)]
        assert lp_membership_oracle((1, 1, 1), gens)
        assert not lp_membership_oracle((0, 1, 0), gens)


class TestThreeWayAgreement:
    def test_small_exhaustive(self):
        # inequalities <=> greedy success <=> LP oracle, for a <= 6, r <= 5, s <= 3
        for s in (1, 2, 3):
            for r in range(0, 6):
                gens = maininequality_generators(r, s)
                for a in range(0, 7):
                    for b in itertools.combinations_with_replacement(range(a, -1, -1), r):
                        v = (a,) + b
                        ineq = violated_inequality(v, s) is None
                        try:
                            dec = greedy_decompose(v, s)
                            check_resum(v, dec)
                            greedy_ok = True
                        except NotInCone:
                            greedy_ok = False
                        assert ineq == greedy_ok == lp_membership_oracle(v, gens), (v, s)

    def test_permutation_equivariance(self):
        rng = random.Random(41)
        for _ in range(120):
            r = rng.randint(2, 6)
            s = rng.randint(1, 4)
            a = rng.randint(0, 8)
            b = [rng.randint(0, a) for _ in range(r)]
            perm = list(range(r))
            rng.shuffle(perm)
            v1 = (a,) + tuple(b)
            v2 = (a,) + tuple(b[i] for i in perm)
            assert (violated_inequality(v1, s) is None) == (violated_inequality(v2, s) is None)
            gens = maininequality_generators(r, s)
            assert lp_membership_oracle(v1, gens) == lp_membership_oracle(v2, gens)
            ok1 = ok2 = True
            try:
                greedy_decompose(v1, s)
            except NotInCone:
                ok1 = False
            try:
                greedy_decompose(v2, s)
            except NotInCone:
                ok2 = False
            assert ok1 == ok2


rationals = st.fractions(min_value=-6, max_value=12, max_denominator=4)
small_rationals = st.fractions(min_value=0, max_value=8, max_denominator=3)


class TestScalingAndAdditivity:
    @given(
        st.lists(small_rationals, min_size=1, max_size=6),
        st.integers(min_value=1, max_value=4),
        st.fractions(min_value=F(1, 5), max_value=7, max_denominator=5),
    )
    @settings(max_examples=120, deadline=None)
    def test_scaling_invariance(self, v, s, lam):
        assert lam > 0
        scaled = [lam * x for x in v]
        assert simplex_cone_membership(v, s).member == simplex_cone_membership(scaled, s).member

    @given(
        st.lists(rationals, min_size=1, max_size=5),
        st.lists(rationals, min_size=1, max_size=5),
        st.integers(min_value=1, max_value=4),
    )
    @settings(max_examples=120, deadline=None)
    def test_additivity(self, u, v, s):
        size = max(len(u), len(v))
        u = u + [F(0)] * (size - len(u))
        v = v + [F(0)] * (size - len(v))
        if simplex_cone_membership(u, s).member and simplex_cone_membership(v, s).member:
            assert simplex_cone_membership([x + y for x, y in zip(u, v)], s).member

    @given(st.lists(small_rationals, min_size=1, max_size=6), st.integers(min_value=1, max_value=4))
    @settings(max_examples=150, deadline=None)
    def test_member_witness_resums(self, v, s):
        verdict = simplex_cone_membership(v, s)
        if verdict.member:
            check_resum(v, verdict.witness)


class TestIsLinearlyGenerated:
    def test_cone_over_rnc_beyond_bound(self):
        # r > 2n - k + 1 fails the span inequality
        for (n, k, r) in [(4, 2, 8), (5, 3, 9), (3, 2, 7)]:
            assert r > 2 * n - k + 1
            verdict = is_linearly_generated_class(cone_over_rnc(n, k, r))
            assert not verdict.member

    def test_cone_over_rnc_at_bound(self):
        for (n, k) in [(4, 2), (5, 3)]:
            r = 2 * n - k + 1
            assert is_linearly_generated_class(cone_over_rnc(n, k, r)).member

    def test_rnc_within_doubled_dimension(self):
        assert is_linearly_generated_class(rnc(3, 6)).member
        assert is_linearly_generated_class(rnc(3, 7)).member is False
        assert is_linearly_generated_class(rnc(5, 10)).member

    def test_cm_curve_not_member(self):
        assert not is_linearly_generated_class(cm_curve()).member

    def test_single_plane(self):
        for k in (1, 2, 3):
            cls = from_point_multiplicities(Ambient(5, k + 1), k, 1, [1] * (k + 1))
            verdict = is_linearly_generated_class(cls)
            assert verdict.member
            assert [(g.label, c) for g, c in verdict.witness.terms] == [
                ("h{%s}" % ",".join(str(i + 1) for i in range(k + 1)), F(1))
            ]

    def test_needs_positive_dimension(self):
        with pytest.raises(InvalidDims):
            is_linearly_generated_class(from_point_multiplicities(Ambient(3, 1), 0, 1, [0]))


class TestGeneratorObjects:
    def test_labels(self):
        assert ExceptionalGenerator(3).label == "e3"
        assert LinearGenerator((1, 2, 5)).label == "h{1,2,5}"
        assert LinearGenerator(()).label == "h{}"

    def test_vectors(self):
        assert ExceptionalGenerator(2).vector(3) == (F(0), F(0), F(-1), F(0))
        assert LinearGenerator((1, 3)).vector(3) == (F(1), F(1), F(0), F(1))

    def test_decomposition_lines(self):
        dec = greedy_decompose((2, 2, 1, 1), 2)
        assert dec.lines() == ["1 * h{1,2}", "1 * h{1,3}"]
