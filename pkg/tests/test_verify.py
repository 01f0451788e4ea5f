import random
from fractions import Fraction

import pytest

from heightbounds.algebraic import AlgebraicNumber, _isolated, as_algebraic
from heightbounds.factor import factor_over_rationals
from heightbounds.forms import MultihomogeneousPolynomial
from heightbounds.heights import MultiProjectivePoint
from heightbounds.intervals import Rect
from heightbounds.polys import IntPolynomial, parse_polynomial
from heightbounds.verify import (CorollaryInstance, InstanceError, build_sum_form,
                                 check_hypotheses, evaluate, point_inverse,
                                 schinzel_check, verify_corollary,
                                 verify_corollary_batch, verify_theorem)

from conftest import HALF_LN_PHI, LN_2, LN_PHI, alg

SLACK = Fraction(1, 10**38)


def P(text):
    return parse_polynomial(text)


class TestEvaluate:
    def test_zero_at_equality_point(self, golden):
        F, _ = build_sum_form(golden, 1)
        point = MultiProjectivePoint([(1, golden)])
        v = evaluate(F, point)
        assert isinstance(v, AlgebraicNumber) and v.is_zero()

    def test_nonzero_value(self, golden):
        F, _ = build_sum_form(golden, 1)
        point = MultiProjectivePoint([(1, 2)])
        v = evaluate(F, point)
        # 2 - phi ~ 0.382
        assert isinstance(v, AlgebraicNumber) and not v.is_zero()
        assert abs(float(v) - 0.3819660112501051) < 1e-12

    def test_zero_coordinate(self):
        F = MultihomogeneousPolynomial((1,), (2,), {((1, 1),): 1})
        point = MultiProjectivePoint([(0, 1)])
        v = evaluate(F, point)
        assert v.is_zero()

    def test_interval_fallback_on_tiny_cap(self, golden, sqrt2, sqrt3):
        F, _ = build_sum_form(golden, 2)
        point = MultiProjectivePoint([(1, sqrt2), (1, sqrt3)])
        v = evaluate(F, point, cap=2)
        assert isinstance(v, Rect)
        assert not v.contains_zero()


class TestHypotheses:
    def test_equality_point_passes_all(self, golden):
        F, E = build_sum_form(golden, 1)
        point = MultiProjectivePoint([(1, golden)])
        results = check_hypotheses(F, E, point)
        assert all(h.passed for h in results)

    def test_reciprocal_failure(self):
        one = as_algebraic(1)
        F, E = build_sum_form(one, 1)
        point = MultiProjectivePoint([(1, 1)])
        results = check_hypotheses(F, E, point)
        table = {h.name: h for h in results}
        assert table["zero-set"].passed
        assert table["coordinates-nonzero"].passed
        assert not table["reciprocal-nonzero"].passed
        assert table["reciprocal-nonzero"].witness == "F(x^-1) = 0"

    def test_zero_coordinate_witness(self, golden):
        F, E = build_sum_form(golden, 2)
        point = MultiProjectivePoint([(1, golden), (1, 0)])
        # the sum no longer matches N, but hypothesis checking is independent
        results = check_hypotheses(F, E, point)
        table = {h.name: h for h in results}
        assert not table["coordinates-nonzero"].passed
        assert "x_11" in table["coordinates-nonzero"].witness

    def test_point_inverse(self, golden):
        point = MultiProjectivePoint([(Fraction(1, 2), golden)])
        inv = point_inverse(point)
        assert inv.blocks[0][0] == 2
        assert inv.blocks[0][1].equals(golden.inv())


class TestVerifyTheorem:
    def test_equality_candidate(self, golden):
        F, E = build_sum_form(golden, 1)
        point = MultiProjectivePoint([(1, golden)])
        v = verify_theorem(F, E, point, 128)
        assert v.status == "equality-candidate"
        assert v.margin.contains(0)
        assert -Fraction(1, 10**9) <= v.margin.lo and v.margin.hi <= Fraction(1, 10**9)

    def test_holds_with_margin(self):
        two = as_algebraic(2)
        F, E = build_sum_form(two, 1)
        point = MultiProjectivePoint([(1, 2)])
        v = verify_theorem(F, E, point, 128)
        assert v.status == "holds"
        expect = 2 * LN_2 - LN_PHI
        assert v.margin.lo - SLACK <= expect <= v.margin.hi + SLACK

    def test_hypothesis_gate_blocks_margin(self):
        one = as_algebraic(1)
        F, E = build_sum_form(one, 1)
        point = MultiProjectivePoint([(1, 1)])
        v = verify_theorem(F, E, point, 128)
        assert v.status == "violated-hypotheses"
        assert v.margin is None and v.lhs is None


class TestVerifyCorollary:
    def test_r1_equality(self, golden):
        v = verify_corollary(CorollaryInstance([golden], golden), 128)
        assert v.status == "equality-candidate"
        assert v.lhs.log_height.lo - SLACK <= HALF_LN_PHI <= v.lhs.log_height.hi + SLACK

    def test_r2_equality(self, golden):
        inst = CorollaryInstance([as_algebraic(1), golden._add_rational(-1)], golden)
        v = verify_corollary(inst, 128)
        assert v.status == "equality-candidate"

    def test_holds(self):
        v = verify_corollary(CorollaryInstance([as_algebraic(2)], as_algebraic(2)), 128)
        assert v.status == "holds"
        expect = LN_2 - HALF_LN_PHI
        assert v.margin.lo - SLACK <= expect <= v.margin.hi + SLACK

    def test_not_an_instance(self, golden, sqrt2):
        with pytest.raises(InstanceError):
            verify_corollary(CorollaryInstance([sqrt2], golden), 64)

    def test_n_must_be_totally_real_integer(self, sqrt2):
        i_num = alg("x^2+1", 0)
        with pytest.raises(InstanceError):
            verify_corollary(CorollaryInstance([i_num], i_num), 64)
        half = as_algebraic(Fraction(1, 2))
        with pytest.raises(InstanceError):
            verify_corollary(CorollaryInstance([half], half), 64)

    def test_zero_alpha_rejected(self, golden):
        with pytest.raises(InstanceError):
            CorollaryInstance([as_algebraic(0)], golden)

    def test_reciprocal_violation_is_verdict(self):
        one = as_algebraic(1)
        v = verify_corollary(CorollaryInstance([one], one), 64)
        assert v.status == "violated-hypotheses"


class TestSchinzel:
    def test_golden_equality(self, golden):
        res = schinzel_check(golden, 128)
        assert res.applicable and res.verdict.status == "equality-candidate"

    def test_sqrt2_holds(self, sqrt2):
        res = schinzel_check(sqrt2, 128)
        assert res.applicable and res.verdict.status == "holds"
        # log h(sqrt2) = (1/2) log 2 ~ 0.3466 > 0.2406
        assert float(res.verdict.margin.mid) == pytest.approx(0.10596767750017091, abs=1e-9)

    def test_not_applicable_cases(self):
        for bad, why in ((alg("x^2+1", 0), "totally real"),
                         (as_algebraic(1), "unit"),
                         (as_algebraic(0), "0"),
                         (as_algebraic(Fraction(1, 2)), "integer")):
            res = schinzel_check(bad, 64)
            assert not res.applicable
            assert any(why in r for r in res.reasons), (why, res.reasons)

    def test_soundness_sample(self):
        # 200 randomized totally real algebraic integers of degree <= 4 with
        # coefficients in [-5, 5]: the floor never fails
        rng = random.Random(424242)
        threshold = HALF_LN_PHI - Fraction(1, 10**9)
        checked = 0
        while checked < 200:
            deg = rng.randint(1, 4)
            cs = [rng.randint(-5, 5) for _ in range(deg)] + [1]
            f = IntPolynomial(cs)
            facs = [g for g, _ in factor_over_rationals(f)
                    if g.degree >= 1 and g.is_monic()]
            if not facs:
                continue
            g = rng.choice(facs)
            if g.coeffs in ((0, 1), (-1, 1), (1, 1)):
                continue
            from heightbounds.polys import count_real_roots
            if count_real_roots(g) != g.degree:
                continue
            a = AlgebraicNumber(g, rng.choice(_isolated(g)))
            res = schinzel_check(a, 64)
            assert res.applicable
            assert res.verdict.status in ("holds", "equality-candidate")
            assert res.verdict.lhs.log_height.hi >= threshold
            checked += 1


class TestZhangZagierSample:
    def test_valid_instances_hold(self):
        rng = random.Random(31415)
        checked = 0
        while checked < 12:
            deg = rng.randint(1, 3)
            cs = [rng.randint(-5, 5) for _ in range(deg)] + [rng.randint(1, 5)]
            f = IntPolynomial(cs)
            facs = [g for g, _ in factor_over_rationals(f) if g.degree >= 1]
            if not facs:
                continue
            g = rng.choice(facs)
            if g.coeffs in ((0, 1), (-1, 1), (1, -1, 1)):
                continue
            alpha = AlgebraicNumber(g, rng.choice(_isolated(g)))
            one_minus = alpha.neg()._add_rational(1)
            inst = CorollaryInstance([alpha, one_minus], as_algebraic(1))
            v = verify_corollary(inst, 128)
            assert v.status in ("holds", "equality-candidate")
            checked += 1


class TestBatch:
    def test_deterministic_across_jobs(self, golden):
        insts = [CorollaryInstance([golden], golden),
                 CorollaryInstance([as_algebraic(2)], as_algebraic(2)),
                 CorollaryInstance([as_algebraic(1)], as_algebraic(1))]
        seq = verify_corollary_batch(insts, 128, jobs=1)
        par = verify_corollary_batch(insts, 128, jobs=3)
        assert [v.status for v in seq] == [v.status for v in par]
        for a, b in zip(seq, par):
            if a.margin is not None:
                assert a.margin.lo == b.margin.lo and a.margin.hi == b.margin.hi
