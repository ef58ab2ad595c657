"""Best Khintchine constants A_p and the regime crossover.

Two closed forms are implemented side by side:

* gamma_formula:   A_p = sqrt(2) * (Gamma((p+1)/2) / sqrt(pi))^(1/p)
* small_p_power:   A_p = 2^(1/2 - 1/p)

The Gamma form is the best constant for p above the crossover exponent p0
(the root of Gamma((p+1)/2) = sqrt(pi)/2 below 2); the power form is best for
p below it.  The two curves cross at p0 ~ 1.8474 and meet again at p = 2
where both equal 1.  The constant recursions consume A_p at p = (2n-4)/(n-1),
which crosses p0 between n = 14 and n = 15; that is exactly why the
power-of-two formulas for arity up to 14 and the Gamma-based closed forms
disagree, and the library always computes both rather than picking one.

Ordering, for the record: gamma_formula >= small_p_power on [1, p0] and
gamma_formula <= small_p_power on [p0, 2], with equality only at p0 and p = 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpq

from bhconstants.numerics import (
    DEFAULT_CONTEXT,
    LogScaledReal,
    PrecisionContext,
    ln2,
    ln_gamma,
    log2_pi,
)

__all__ = [
    "Regime",
    "KhintchineConstant",
    "khintchine_gamma",
    "khintchine_small_p",
    "khintchine_gamma_log2",
    "khintchine_small_p_log2",
    "crossover_p0",
]


class Regime(str, Enum):
    GAMMA_FORMULA = "gamma_formula"
    SMALL_P_POWER = "small_p_power"


@dataclass(frozen=True)
class KhintchineConstant:
    """A_p evaluated in one regime; value kept in log-scale (always > 0)."""

    p: Fraction
    regime: Regime
    value: LogScaledReal


def _validate_p(p) -> Fraction:
    p = Fraction(p)
    if p <= 0:
        raise ValueError(f"Khintchine constant requires p > 0, got {p}")
    return p


def khintchine_gamma_log2(p, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
    """log2 A_p in the Gamma regime: 1/2 + (log2 Gamma((p+1)/2) - log2(pi)/2) / p."""
    p = _validate_p(p)
    lgam = ln_gamma((p + 1) / 2, ctx)
    with ctx.gmpy_context():
        return mpq(1, 2) + (lgam / ln2(ctx) - log2_pi(ctx) / 2) / mpq(p.numerator, p.denominator)


def khintchine_small_p_log2(p, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
    """log2 A_p in the small-p regime: exactly 1/2 - 1/p (one rounding)."""
    p = _validate_p(p)
    e = Fraction(1, 2) - 1 / p
    with ctx.gmpy_context():
        return mpfr(mpq(e.numerator, e.denominator))


def khintchine_gamma(p, ctx: PrecisionContext = DEFAULT_CONTEXT) -> KhintchineConstant:
    """A_p by the Gamma formula sqrt(2) * (Gamma((p+1)/2)/sqrt(pi))^(1/p)."""
    p = _validate_p(p)
    return KhintchineConstant(
        p=p,
        regime=Regime.GAMMA_FORMULA,
        value=LogScaledReal(1, khintchine_gamma_log2(p, ctx)),
    )


def khintchine_small_p(p, ctx: PrecisionContext = DEFAULT_CONTEXT) -> KhintchineConstant:
    """A_p by the power formula 2^(1/2 - 1/p), exact in log2-space."""
    p = _validate_p(p)
    return KhintchineConstant(
        p=p,
        regime=Regime.SMALL_P_POWER,
        value=LogScaledReal(1, khintchine_small_p_log2(p, ctx)),
    )


def khintchine_log2(p, regime: Regime, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
    if regime is Regime.GAMMA_FORMULA:
        return khintchine_gamma_log2(p, ctx)
    if regime is Regime.SMALL_P_POWER:
        return khintchine_small_p_log2(p, ctx)
    raise ValueError(f"unknown regime {regime!r}")


def crossover_p0(ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
    """The regime crossover p0 in (1.5, 2): bisection on the difference.

    The difference log2 A_gamma - log2 A_small is positive at 3/2 and
    negative at 15/8 (it changes sign once below 2, then returns to zero at
    p = 2); bisect on exact dyadic midpoints until the bracket is below one
    ulp of the working precision.
    """
    lo, hi = Fraction(3, 2), Fraction(15, 8)

    def diff_sign(p: Fraction) -> int:
        d = khintchine_gamma_log2(p, ctx) - khintchine_small_p_log2(p, ctx)
        return -1 if d < 0 else (1 if d > 0 else 0)

    if diff_sign(lo) <= 0 or diff_sign(hi) >= 0:  # pragma: no cover - sanity
        raise RuntimeError("crossover bracket lost its sign change")
    # bracket width 3/8 * 2^-iters; a few bits beyond working precision
    iterations = ctx.working_bits + 4
    for _ in range(iterations):
        mid = (lo + hi) / 2
        s = diff_sign(mid)
        if s == 0:
            lo = hi = mid
            break
        if s > 0:
            lo = mid
        else:
            hi = mid
    mid = (lo + hi) / 2
    with ctx.gmpy_context():
        return mpfr(mpq(mid.numerator, mid.denominator))
