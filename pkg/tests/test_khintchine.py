"""Khintchine constants: both regimes, the crossover, and their ordering."""

from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr, mpq
from hypothesis import given, strategies as st

from bhconstants.khintchine import (
    Regime,
    crossover_p0,
    khintchine_gamma,
    khintchine_gamma_log2,
    khintchine_small_p,
    khintchine_small_p_log2,
)
from bhconstants.numerics import DEFAULT_CONTEXT, PrecisionContext

import oracle_values as ov


def test_gamma_at_4_3_matches_oracle(ctx128):
    got = khintchine_gamma(Fraction(4, 3), ctx128).value.to_mpfr(ctx128)
    with gmpy2.context(precision=200):
        resid = abs(mpfr(got) - mpfr(ov.A_4_3, precision=200))
    assert float(resid) < 1e-36


def test_both_regimes_equal_one_at_p2(ctx128):
    g = khintchine_gamma_log2(2, ctx128)
    s = khintchine_small_p_log2(2, ctx128)
    assert s == 0  # exact dyadic arithmetic
    assert abs(float(g)) < 1e-38


def test_small_p_exact_dyadic(ctx128):
    # 1/2 - 3/4 = -1/4 is exactly representable: bitwise equality expected
    got = khintchine_small_p_log2(Fraction(4, 3), ctx128)
    with ctx128.gmpy_context():
        assert got == mpfr(mpq(-1, 4))


def test_small_p_value(ctx128):
    v = khintchine_small_p(Fraction(4, 3), ctx128).value.to_mpfr(ctx128)
    with ctx128.gmpy_context():
        resid = abs(v - gmpy2.exp2(mpfr(mpq(-1, 4))))
    assert float(resid) < 1e-38


def test_constant_records_inputs(ctx128):
    k = khintchine_gamma(Fraction(3, 2), ctx128)
    assert k.p == Fraction(3, 2)
    assert k.regime is Regime.GAMMA_FORMULA
    assert k.value.sign == 1


@pytest.mark.parametrize("bad", [0, -1, Fraction(-1, 2)])
def test_nonpositive_p_rejected(bad, ctx128):
    with pytest.raises(ValueError):
        khintchine_gamma_log2(bad, ctx128)
    with pytest.raises(ValueError):
        khintchine_small_p_log2(bad, ctx128)


class TestCrossover:
    def test_value(self, ctx128):
        p0 = crossover_p0(ctx128)
        with gmpy2.context(precision=200):
            resid = abs(mpfr(p0) - mpfr(ov.P0_CROSSOVER, precision=200))
        assert float(resid) < 1e-35

    def test_regimes_meet_there(self, ctx128):
        p0 = crossover_p0(ctx128)
        # cast the high-precision root back to an exact rational argument
        p_rat = Fraction(gmpy2.mpq(p0))
        with ctx128.gmpy_context():
            diff = khintchine_gamma_log2(p_rat, ctx128) - \
                khintchine_small_p_log2(p_rat, ctx128)
        assert abs(float(diff)) < 1e-35

    def test_higher_precision_refines(self, ctx128, ctx256):
        p0_128 = crossover_p0(ctx128)
        p0_256 = crossover_p0(ctx256)
        with gmpy2.context(precision=400):
            resid = abs(mpfr(p0_128) - mpfr(p0_256))
        assert float(resid) < 1e-37


class TestOrdering:
    """gamma >= small-p below the crossover, gamma <= small-p above it."""

    @pytest.mark.parametrize("p", [Fraction(11, 10), Fraction(4, 3),
                                   Fraction(3, 2), Fraction(9, 5)])
    def test_gamma_dominates_below_crossover(self, p, ctx128):
        assert p < Fraction(ov.P0_CROSSOVER[:6])  # sanity on the fixture
        with ctx128.gmpy_context():
            diff = khintchine_gamma_log2(p, ctx128) - \
                khintchine_small_p_log2(p, ctx128)
        assert float(diff) > 0

    @pytest.mark.parametrize("p", [Fraction(37, 20), Fraction(19, 10),
                                   Fraction(39, 20), Fraction(199, 100)])
    def test_small_p_dominates_above_crossover(self, p, ctx128):
        with ctx128.gmpy_context():
            diff = khintchine_gamma_log2(p, ctx128) - \
                khintchine_small_p_log2(p, ctx128)
        assert float(diff) < 0

    def test_gap_at_19_10(self, ctx128):
        # frozen magnitude of the inversion above the crossover, value space
        with ctx128.gmpy_context():
            diff = gmpy2.exp2(khintchine_gamma_log2(Fraction(19, 10), ctx128)) - \
                gmpy2.exp2(khintchine_small_p_log2(Fraction(19, 10), ctx128))
        assert float(diff) == pytest.approx(-0.000329847030168936, rel=1e-9)

    @given(st.fractions(min_value=Fraction(101, 100),
                        max_value=Fraction(2), max_denominator=500))
    def test_sign_switches_exactly_at_crossover(self, p):
        ctx = DEFAULT_CONTEXT
        p0 = Fraction(1847416336076342129, 10**18)  # truncation, only for sorting
        with ctx.gmpy_context():
            diff = float(khintchine_gamma_log2(p, ctx) -
                         khintchine_small_p_log2(p, ctx))
        if p < p0:
            assert diff > 0
        elif p > p0 + Fraction(1, 10**9):
            assert diff <= 0


def test_recursion_exponent_crosses_between_14_and_15(ctx128):
    # p = (2n-4)/(n-1) passes the crossover between n = 14 and n = 15; this
    # is the regime switch the improved complex chain relies on
    p0 = Fraction(ov.P0_CROSSOVER[:20])
    p14 = Fraction(2 * 14 - 4, 14 - 1)
    p15 = Fraction(2 * 15 - 4, 15 - 1)
    assert p14 < p0 < p15
