"""Release gate: ten criteria, one test function per criterion.

Each criterion is a single pass/fail line under ``pytest -v``.  Tolerances
are fixed here and must not be loosened to make a failing line pass: where
the computed digits genuinely disagree with a published reference table,
the failing assertion carries both values and the divergence stands as
documentation.  Known divergences at the time of writing:

* criterion 1: the computed r_100 rounds to 1.41639 (exact value
  1.4163931...) while the published table prints 1.41640, and r_300000
  rounds to 1.44024 against a printed 1.44023; both computed roundings are
  confirmed by an independent 60-digit oracle.
* criterion 2: round(log10 C_1000) = round(37.8615) = 38, while the pinned
  expectation is 37 (the printed "10^37" matches floor, not round).
"""

import math
import time

import gmpy2
from gmpy2 import mpfr, mpq

from bhconstants.cli import approx_cell, fmt_fixed
from bhconstants.constants import (
    BnForm,
    ScalarField,
    accumulator_for,
    bn_log2,
    complex_closed,
    complex_improved,
    complex_improved_closed,
    consistency_report,
    gamma_product,
    ratio_diagnostics,
    real_closed,
    real_recursive,
    rn,
    rn_log2,
)
from bhconstants.numerics import DEFAULT_CONTEXT, PrecisionContext, log2_pi
from bhconstants.verifier import (
    MultilinearForm,
    SearchStrategy,
    search_lower_bound,
    sup_norm_complex,
)
from oracle_values import CONSISTENCY_GAP_4, RN_TABLE_5DP

import numpy as np

CTX_128 = DEFAULT_CONTEXT
CTX_256 = PrecisionContext(mantissa_bits=256)

# thinned lattices for the 256-bit recomputation in criterion 10
EVEN_THIN = (4, 10, 50, 100, 500, 1000, 2000, 5000, 9998, 10000)
BN_THIN = (3, 4, 5, 7, 10, 100, 999, 1000, 5001, 10000)
IMPROVED_THIN = (16, 50, 200, 1000, 2000)


def rn_5dp(n: int, ctx: PrecisionContext) -> str:
    return fmt_fixed(rn(n, accumulator_for(ctx), ctx), 5)


def rel_gap_of_values(a_log2: mpfr, b_log2: mpfr, ctx: PrecisionContext) -> float:
    """|a/b - 1| for values given in log2 form (safe for huge magnitudes)."""
    with ctx.gmpy_context():
        return float(abs(gmpy2.exp2(a_log2 - b_log2) - 1))


def test_criterion_01_rn_table_reproduction():
    started = time.monotonic()
    mismatches = []
    for n, published in RN_TABLE_5DP.items():
        got = rn_5dp(n, CTX_128)
        if got != published:
            mismatches.append(
                f"n={n}: computed {got}, published table prints {published}")
    elapsed = time.monotonic() - started
    assert elapsed < 300, f"full sweep took {elapsed:.1f}s"
    assert not mismatches, "; ".join(mismatches)


def test_criterion_02_real_constant_table_reproduction():
    assert abs(real_closed(30, CTX_128).value.to_float() - 22) <= 0.5
    assert abs(real_closed(50, CTX_128).value.to_float() - 126) <= 1.0
    assert abs(real_closed(100, CTX_128).value.to_float() - 9757) <= 2.0
    failures = []
    for n, expected in ((500, 19), (1000, 37), (5000, 188)):
        log10 = float(real_closed(n, CTX_128).value.log10(CTX_128))
        if round(log10) != expected:
            failures.append(
                f"n={n}: round(log10 C) = {round(log10)} from log10 = "
                f"{log10:.4f} (floor gives {math.floor(log10)}), "
                f"published exponent is {expected}")
    assert not failures, "; ".join(failures)


def test_criterion_03_telescoping_equivalence():
    acc = accumulator_for(CTX_128)
    worst = 0.0
    for n in range(4, 10**4 + 1, 2):
        a = real_recursive(n, CTX_128).log2_value
        b = real_closed(n, CTX_128, acc).log2_value
        with CTX_128.gmpy_context():
            rel = float(abs(a - b) / abs(b))
        worst = max(worst, rel)
    assert worst <= 1e-12, f"worst log-space relative gap {worst:.3e}"


def test_criterion_04_bn_two_forms():
    assert bn_log2(3, BnForm.GAMMA_FORM, CTX_128) == 0.5  # exact in log-space
    worst = 0.0
    for n in range(3, 10**4 + 1):
        g = bn_log2(n, BnForm.GAMMA_FORM, CTX_128)
        r = bn_log2(n, BnForm.RECURSION_FORM, CTX_128)
        worst = max(worst, rel_gap_of_values(g, r, CTX_128))
    assert worst <= 1e-12, f"worst relative gap between forms {worst:.3e}"
    with CTX_128.gmpy_context():
        drift = float(abs(gmpy2.exp2(bn_log2(10**6, BnForm.GAMMA_FORM, CTX_128))
                          - gmpy2.sqrt(2)))
    assert drift < 1e-4, f"|B_1e6 - sqrt2| = {drift:.3e}"


def test_criterion_05_field_coupling_identity():
    acc = accumulator_for(CTX_128)
    with CTX_128.gmpy_context():
        target = (1 - log2_pi(CTX_128)) / 2  # log2(sqrt2/sqrt pi)
    worst = 0.0
    for n in range(2, 10**4 + 1, 2):
        c = complex_closed(n, CTX_128, acc).log2_value
        r = real_closed(n, CTX_128, acc).log2_value
        with CTX_128.gmpy_context():
            worst = max(worst, float(abs((c - r) - target)))
    assert worst <= 1e-14, f"worst coupling defect {worst:.3e}"


def test_criterion_06_improved_complex_constants():
    with CTX_128.gmpy_context():
        ref = mpfr(mpq(30, 7)) - mpq(19, 14) * log2_pi(CTX_128)  # 2^(30/7)/pi^(19/14)
    got = complex_improved(14, CTX_128).log2_value
    assert rel_gap_of_values(got, ref, CTX_128) <= 1e-12

    with CTX_256.gmpy_context():
        product_err = float(abs(gamma_product(CTX_256) - mpfr("0.003929571803")))
    assert product_err < 5e-13  # 10 significant digits

    worst = 0.0
    for n in range(16, 2001, 2):
        a = complex_improved(n, CTX_128).log2_value
        b = complex_improved_closed(n, CTX_128).log2_value
        worst = max(worst, rel_gap_of_values(a, b, CTX_128))
    assert worst <= 1e-10, f"worst recursion/closed-form gap {worst:.3e}"


def test_criterion_07_ratio_diagnostics():
    for row in ratio_diagnostics(10**4, ScalarField.REAL, CTX_128):
        assert row.ratio_log2 == row.identity_log2, f"identity broken at n={row.n}"
    acc = accumulator_for(CTX_128)
    hi = rn_log2(10**6, acc, CTX_128)
    lo = rn_log2(10**6 - 2, acc, CTX_128)
    drift = rel_gap_of_values(hi, lo, CTX_128)
    assert drift < 1e-6, f"consecutive-step drift at 1e6 is {drift:.3e}"


def test_criterion_08_verifier_soundness_and_sharpness():
    report, form = search_lower_bound(2, 2, SearchStrategy.EXHAUSTIVE_PM1)
    assert abs(report.ratio - math.sqrt(2)) <= 1e-12
    # sign-equivalent of the Littlewood form: unimodular entries, |det| = 2
    assert abs(abs(np.linalg.det(form.coefficients)) - 2.0) < 1e-9

    bounds = {n: real_recursive(n, CTX_128).value.to_float() for n in (2, 3)}
    for n, N in ((2, 2), (2, 3), (3, 2)):
        for strategy in (SearchStrategy.RANDOM_PM1, SearchStrategy.LOCAL_FLIP):
            for seed in (0, 1, 2):
                found, _ = search_lower_bound(n, N, strategy,
                                              budget=40, seed=seed)
                assert found.ratio <= bounds[n] * (1 + 1e-9), (
                    f"strategy {strategy.value} exceeded the n={n} bound")

    forms = [MultilinearForm(2, 2, ScalarField.COMPLEX,
                             np.array([[1.0, 1.0], [1.0, -1.0]]))]
    rng = np.random.default_rng(2024)
    forms.append(MultilinearForm(2, 2, ScalarField.COMPLEX,
                                 rng.standard_normal((2, 2))
                                 + 1j * rng.standard_normal((2, 2))))
    for f in forms:
        values = [sup_norm_complex(f, grid_order=g, ascent_iters=0).value
                  for g in (2, 4, 8)]
        assert values[0] <= values[1] <= values[2], values


def test_criterion_09_consistency_report_flags_n4():
    report = consistency_report(CTX_128)
    row4 = report.row(4)
    assert row4.power_of_two_log2 == 1.0  # the power-of-two route gives exactly 2
    gap4 = float(row4.relative_gap)
    assert row4.flagged
    assert 0.03 <= gap4 <= 0.04, f"n=4 gap {gap4:.4%} not ~3.5%"
    assert abs(gap4 - CONSISTENCY_GAP_4) <= 1e-9 * CONSISTENCY_GAP_4
    gap14 = float(report.row(14).relative_gap)
    assert 0.0 < gap14 < gap4, f"n=14 gap {gap14:.3e} not in (0, gap4)"


def test_criterion_10_precision_robustness():
    acc_lo = accumulator_for(CTX_128)
    acc_hi = accumulator_for(CTX_256)

    # criterion 1 digits: all fifteen checkpoint roundings are stable
    for n in RN_TABLE_5DP:
        assert rn_5dp(n, CTX_256) == rn_5dp(n, CTX_128), f"r_{n} digits moved"

    # criterion 2 digits: rendered table cells are stable
    for n in (30, 50, 100, 500, 1000, 5000):
        lo = approx_cell(real_closed(n, CTX_128, acc_lo).log2_value, CTX_128)
        hi = approx_cell(real_closed(n, CTX_256, acc_hi).log2_value, CTX_256)
        assert hi == lo, f"C_{n} cell changed: {lo} -> {hi}"

    # criterion 3: telescoping residuals stay within tolerance
    for n in EVEN_THIN:
        a = real_recursive(n, CTX_256).log2_value
        b = real_closed(n, CTX_256, acc_hi).log2_value
        with CTX_256.gmpy_context():
            assert float(abs(a - b) / abs(b)) <= 1e-12

    # criterion 4: exactness at 3, agreement, limit drift
    assert bn_log2(3, BnForm.GAMMA_FORM, CTX_256) == 0.5
    for n in BN_THIN:
        g = bn_log2(n, BnForm.GAMMA_FORM, CTX_256)
        r = bn_log2(n, BnForm.RECURSION_FORM, CTX_256)
        assert rel_gap_of_values(g, r, CTX_256) <= 1e-12
    with CTX_256.gmpy_context():
        drift = float(abs(gmpy2.exp2(bn_log2(10**6, BnForm.GAMMA_FORM, CTX_256))
                          - gmpy2.sqrt(2)))
    assert drift < 1e-4

    # criterion 5: coupling identity at the higher precision
    with CTX_256.gmpy_context():
        target = (1 - log2_pi(CTX_256)) / 2
    for n in EVEN_THIN:
        c = complex_closed(n, CTX_256, acc_hi).log2_value
        r = real_closed(n, CTX_256, acc_hi).log2_value
        with CTX_256.gmpy_context():
            assert float(abs((c - r) - target)) <= 1e-14

    # criterion 6 digits and residuals
    with CTX_128.gmpy_context():
        lo14 = gmpy2.exp2(complex_improved(14, CTX_128).log2_value)
    with CTX_256.gmpy_context():
        hi14 = gmpy2.exp2(complex_improved(14, CTX_256).log2_value)
    assert fmt_fixed(hi14, 5) == fmt_fixed(lo14, 5)
    assert (fmt_fixed(gamma_product(CTX_256), 12)
            == fmt_fixed(gamma_product(CTX_128), 12))
    for n in IMPROVED_THIN:
        a = complex_improved(n, CTX_256).log2_value
        b = complex_improved_closed(n, CTX_256).log2_value
        assert rel_gap_of_values(a, b, CTX_256) <= 1e-10

    # criterion 7: exact identity survives, drift agrees across precisions
    for row in ratio_diagnostics(10**4, ScalarField.REAL, CTX_256):
        if row.n in EVEN_THIN:
            assert row.ratio_log2 == row.identity_log2
    drift_lo = rel_gap_of_values(rn_log2(10**6, acc_lo, CTX_128),
                                 rn_log2(10**6 - 2, acc_lo, CTX_128), CTX_128)
    drift_hi = rel_gap_of_values(rn_log2(10**6, acc_hi, CTX_256),
                                 rn_log2(10**6 - 2, acc_hi, CTX_256), CTX_256)
    assert abs(drift_hi - drift_lo) <= 1e-20 * max(1.0, abs(drift_lo))
