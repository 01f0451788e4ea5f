import random
from fractions import Fraction

import mpmath
import pytest

from heightbounds.intervals import (Interval, IntervalError, Rect, decimal_lower,
                                    decimal_midpoint, decimal_upper, exp_fraction,
                                    ln_fraction, log_interval, poly_eval_rect,
                                    rect_inverse, sqrt_interval, xlogx_interval)


def mpf_frac(value) -> Fraction:
    """Exact Fraction of an mpmath float (mpf values are dyadic)."""
    sign, man, exp, _ = mpmath.mpf(value)._mpf_
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def contains_mp(iv: Interval, value, slack_bits=140) -> bool:
    v = mpf_frac(value)
    eps = Fraction(1, 1 << slack_bits)
    return iv.lo - eps <= v <= iv.hi + eps


class TestIntervalOps:
    def test_arith(self):
        a, b = Interval(1, 2), Interval(-1, 3)
        assert (a + b).lo == 0 and (a + b).hi == 5
        assert (a * b).lo == -2 and (a * b).hi == 6
        assert (-a).lo == -2

    def test_division_by_zero_interval(self):
        with pytest.raises(IntervalError):
            Interval(1) / Interval(-1, 1)

    def test_round_out_contains(self):
        iv = Interval(Fraction(1, 3), Fraction(2, 3))
        out = iv.round_out(16)
        assert out.lo <= iv.lo and iv.hi <= out.hi
        assert out.lo.denominator <= 1 << 16

    def test_pow_int(self):
        iv = Interval(Fraction(-2), Fraction(3))
        sq = iv.pow_int(2)
        assert sq.lo == 0 or sq.lo == 4  # even power of sign-changing interval
        assert sq.hi == 9
        assert iv.pow_int(0) == Interval(1)


class TestTranscendental:
    def test_ln_against_mpmath(self):
        mpmath.mp.dps = 50
        rng = random.Random(11)
        for _ in range(40):
            q = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
            iv = ln_fraction(q, 96)
            assert iv.width < Fraction(1, 1 << 90)
            true = mpmath.log(mpmath.mpf(q.numerator) / q.denominator)
            assert contains_mp(iv, true)

    def test_ln_one_exact(self):
        iv = ln_fraction(Fraction(1), 64)
        assert iv.lo == 0 and iv.hi == 0

    def test_ln_rejects_nonpositive(self):
        with pytest.raises(IntervalError):
            ln_fraction(Fraction(0), 64)

    def test_exp_against_mpmath(self):
        mpmath.mp.dps = 50
        rng = random.Random(13)
        for _ in range(40):
            q = Fraction(rng.randint(-8 * 10**5, 8 * 10**5), rng.randint(1, 10**5))
            if abs(q) > 20:
                continue
            iv = exp_fraction(q, 96)
            true = mpmath.exp(mpmath.mpf(q.numerator) / q.denominator)
            assert contains_mp(iv, true)
            assert iv.width / mpf_frac(true) < Fraction(1, 1 << 80)

    def test_exp_ln_round_trip(self):
        q = Fraction(7, 3)
        iv = exp_fraction(ln_fraction(q, 128).lo, 128)
        assert iv.lo <= q <= iv.hi + Fraction(1, 1 << 100)

    def test_sqrt(self):
        iv = sqrt_interval(Interval(2), 128)
        assert iv.lo * iv.lo <= 2 <= iv.hi * iv.hi
        assert iv.width < Fraction(1, 1 << 120)

    def test_xlogx_range(self):
        # range over [0, 1] is [-1/e, 0]
        iv = xlogx_interval(Interval(Fraction(0), Fraction(1)), 80)
        assert iv.hi == 0
        assert abs(float(iv.lo) + 0.36787944117144233) < 1e-20

    def test_xlogx_zero_convention(self):
        assert xlogx_interval(Interval(0), 64) == Interval(0)

    def test_log_interval_monotone(self):
        iv = log_interval(Interval(Fraction(2), Fraction(3)), 80)
        assert float(iv.lo) <= 0.6931471805599453
        assert float(iv.hi) >= 1.0986122886681098


class TestRect:
    def test_mul_contains_products(self):
        rng = random.Random(4)
        for _ in range(30):
            a = Rect(Interval(Fraction(rng.randint(-5, 5)), Fraction(rng.randint(6, 9))),
                     Interval(Fraction(rng.randint(-5, 5)), Fraction(rng.randint(6, 9))))
            b = Rect(Interval(Fraction(rng.randint(-5, 5)), Fraction(rng.randint(6, 9))),
                     Interval(Fraction(rng.randint(-5, 5)), Fraction(rng.randint(6, 9))))
            prod = a * b
            for _ in range(5):
                za = complex(rng.uniform(float(a.re.lo), float(a.re.hi)),
                             rng.uniform(float(a.im.lo), float(a.im.hi)))
                zb = complex(rng.uniform(float(b.re.lo), float(b.re.hi)),
                             rng.uniform(float(b.im.lo), float(b.im.hi)))
                z = za * zb
                assert float(prod.re.lo) - 1e-9 <= z.real <= float(prod.re.hi) + 1e-9
                assert float(prod.im.lo) - 1e-9 <= z.imag <= float(prod.im.hi) + 1e-9

    def test_inverse(self):
        z = Rect(Interval(Fraction(1), Fraction(2)), Interval(Fraction(1), Fraction(2)))
        inv = rect_inverse(z)
        w = 1 / complex(1.5, 1.5)
        assert float(inv.re.lo) <= w.real <= float(inv.re.hi)
        assert float(inv.im.lo) <= w.imag <= float(inv.im.hi)

    def test_inverse_through_zero_rejected(self):
        with pytest.raises(IntervalError):
            rect_inverse(Rect(Interval(-1, 1), Interval(-1, 1)))

    def test_poly_eval(self):
        # f(z) = z^2 + 1 at the point i: exactly 0
        z = Rect(Interval(0), Interval(1))
        v = poly_eval_rect((1, 0, 1), z)
        assert v.contains_zero()


class TestDecimal:
    def test_directed_rounding(self):
        x = Fraction(1, 3)
        assert decimal_lower(x, 5) == "0.33333"
        assert decimal_upper(x, 5) == "0.33334"
        assert decimal_lower(-x, 5) == "-0.33334"

    def test_midpoint_certified_digits(self):
        iv = Interval(Fraction("1.6180339887"), Fraction("1.6180339888"))
        mid, pm = decimal_midpoint(iv)
        assert mid.startswith("1.61803398")
        assert float(pm) >= float(iv.width) / 2
