"""Bohnenblust-Hille constant estimates and their diagnostics.

Real case, arity n:

* recursion          C_2 = 2^(1/2), C_3 = 2^(5/6),
                     C_n = 2^(1/2) * (C_{n-2} / A_p^2)^((n-2)/n),
                     with p = (2n-4)/(n-1) and A_p from a selectable regime;
* closed form        C_n = 2^((n+2)/8) * r_n for even n, where
                     log r_n = ((n^2-4)/(8n)) ln pi - ((n-2)/4) ln 2
                               - (1/n) * sum_{k=1}^{(n-2)/2} (2k+1) ln Gamma((6k+1)/(4k+2));
* power of two       C_n = 2^((n^2+6n-8)/(8n)) (even), 2^((n^2+6n-7)/(8n)) (odd),
                     valid for 2 <= n <= 14 and equal to the recursion run in
                     the small-p Khintchine regime.

Complex case: the same recursion with an extra 2^((n+2)/(2n)) / pi^(1/n)
step factor, base (2/sqrt(pi))^(m-1) at m = 2, 3; closed form
2^((n+2)/8) * (sqrt2/sqrt pi) * r_n; growth factors B_n -> sqrt 2; and the
improved chain that keeps the base (2/sqrt pi)^(n-1) up to n = 7 before
switching to the recursion.

Everything is computed in base-2 log-space.  Exponent bookkeeping uses exact
rationals so that identities like C_n / C_{n-2} = 2^(1/4) * r_n / r_{n-2}
hold bit-for-bit, not merely to rounding error.  All values are upper-bound
estimates of the true best constants; reports label them as such.

The r_n product is served by a single shared accumulator per working
precision (one sweep, dense prefix history), since the millionth index needs
~5*10^5 log-Gamma factors and every table row is a prefix of the same sum.
Module-level caches make calls cheap but confine use to one thread.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

import gmpy2
from gmpy2 import mpfr, mpq

from bhconstants.khintchine import (
    Regime,
    khintchine_gamma_log2,
    khintchine_log2,
)
from bhconstants.numerics import (
    DEFAULT_CONTEXT,
    CompensatedSum,
    LogScaledReal,
    PrecisionContext,
    ln2,
    ln_gamma,
    log2_pi,
)

__all__ = [
    "ScalarField",
    "Method",
    "BnForm",
    "ConstantEstimate",
    "RnAccumulator",
    "accumulator_for",
    "rn",
    "rn_log2",
    "sn",
    "real_recursive",
    "real_closed",
    "real_power_of_two",
    "complex_recursive",
    "complex_closed",
    "bn",
    "bn_log2",
    "complex_improved",
    "complex_improved_closed",
    "gamma_product",
    "historical",
    "RatioRow",
    "ratio_diagnostics",
    "ConsistencyRow",
    "ConsistencyReport",
    "consistency_report",
    "RN_TABLE_CHECKPOINTS",
    "C_TABLE_CHECKPOINTS",
]


class ScalarField(str, Enum):
    REAL = "real"
    COMPLEX = "complex"


class Method(str, Enum):
    RECURSIVE = "recursive"
    CLOSED_FORM_RN = "closed_form_rn"
    POWER_OF_TWO = "power_of_two"
    COMPLEX_IMPROVED_RECURSIVE = "complex_improved_recursive"
    COMPLEX_IMPROVED_CLOSED = "complex_improved_closed"
    HISTORICAL_BH = "historical_bh"
    HISTORICAL_DAVIE_KAIJSER = "historical_davie_kaijser"
    HISTORICAL_QUEFFELEC = "historical_queffelec"


HISTORICAL_METHODS = (
    Method.HISTORICAL_BH,
    Method.HISTORICAL_DAVIE_KAIJSER,
    Method.HISTORICAL_QUEFFELEC,
)


class BnForm(str, Enum):
    RECURSION_FORM = "recursion_form"
    GAMMA_FORM = "gamma_form"


# the published table samples r_n at these arities
RN_TABLE_CHECKPOINTS = (
    10, 30, 50, 100, 250, 500, 1000, 5000, 10_000, 15_000,
    25_000, 40_000, 100_000, 300_000, 1_000_000,
)

# and the real closed-form constant at these
C_TABLE_CHECKPOINTS = (30, 50, 100, 500, 1000, 5000)


@dataclass(frozen=True)
class ConstantEstimate:
    """One computed constant: arity, scalar field, method, log-scaled value.

    ``rn_component`` carries the r_n factor when the method involves it;
    ``regime`` records which Khintchine regime fed a recursion.  Every value
    is an upper-bound estimate.
    """

    n: int
    field: ScalarField
    method: Method
    value: LogScaledReal
    rn_component: Optional[mpfr] = None
    regime: Optional[Regime] = None

    def __post_init__(self) -> None:
        if self.value.sign <= 0:
            raise ValueError("constant estimates are positive")

    @property
    def log2_value(self) -> mpfr:
        return self.value.log2_magnitude


class RnAccumulator:
    """Running weighted log-Gamma sum S_k = sum_{j<=k} (2j+1) ln Gamma((6j+1)/(4j+2)).

    Grows incrementally (one sweep serves every n) and keeps the dense prefix
    history so any earlier index is a lookup, not a recomputation.  Extending
    from k to k+1 adds exactly the (2k+3) * ln Gamma((6k+7)/(4k+6)) term.
    Not thread-safe; confine one instance to one thread.
    """

    def __init__(self, ctx: PrecisionContext = DEFAULT_CONTEXT) -> None:
        self.ctx = ctx
        with ctx.gmpy_context():
            self._sum = CompensatedSum.zero()
            self._prefix: list[mpfr] = [mpfr(0)]

    @property
    def k_max(self) -> int:
        return len(self._prefix) - 1

    @property
    def weighted_lngamma_sum(self) -> CompensatedSum:
        return self._sum

    def extend_to(self, k_target: int) -> "RnAccumulator":
        if k_target <= self.k_max:
            return self
        s = self._sum.running_sum
        c = self._sum.compensation
        prefix = self._prefix
        ctx = self.ctx
        with ctx.gmpy_context():
            for j in range(self.k_max + 1, k_target + 1):
                x = (2 * j + 1) * ln_gamma(mpq(6 * j + 1, 4 * j + 2), ctx)
                t = s + x
                # Neumaier update, inlined for the 5*10^5-iteration sweep
                if abs(s) >= abs(x):
                    c = c + ((s - t) + x)
                else:
                    c = c + ((x - t) + s)
                s = t
                prefix.append(s + c)
        self._sum = CompensatedSum(s, c)
        return self

    def prefix_sum(self, k: int) -> mpfr:
        """S_k (compensated total after k factors)."""
        if k > self.k_max:
            self.extend_to(k)
        return self._prefix[k]


_ACCUMULATORS: dict[int, RnAccumulator] = {}


def accumulator_for(ctx: PrecisionContext = DEFAULT_CONTEXT) -> RnAccumulator:
    """The shared per-precision accumulator (single sweep reused everywhere)."""
    acc = _ACCUMULATORS.get(ctx.working_bits)
    if acc is None:
        acc = RnAccumulator(ctx)
        _ACCUMULATORS[ctx.working_bits] = acc
    return acc


def _require_even(n: int, what: str) -> None:
    if n % 2:
        raise ValueError(f"{what} is defined for even n only, got n={n}")


def rn_log2(n: int, acc: Optional[RnAccumulator] = None,
            ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
    """log2 r_n for even n >= 2 (r_2 = 1 exactly: empty product)."""
    if n < 2:
        raise ValueError(f"r_n requires n >= 2, got {n}")
    _require_even(n, "r_n")
    if acc is None:
        acc = accumulator_for(ctx)
    s = acc.prefix_sum((n - 2) // 2)
    with ctx.gmpy_context():
        return (mpq(n * n - 4, 8 * n) * log2_pi(ctx)
                - mpfr(mpq(n - 2, 4))
                - s / (n * ln2(ctx)))


def rn(n: int, acc: Optional[RnAccumulator] = None,
       ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
    """r_n itself (linear scale; the sequence lives in [1, 1.45))."""
    e = rn_log2(n, acc, ctx)
    with ctx.gmpy_context():
        return gmpy2.exp2(e)


def sn(n: int, acc: Optional[RnAccumulator] = None,
       ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
    """s_n = 1 / r_n (the factor appearing in the telescoped recursion)."""
    e = rn_log2(n, acc, ctx)
    with ctx.gmpy_context():
        return gmpy2.exp2(-e)


# chains of recursion exponents, cached per (working_bits, regime, flavor)
_CHAIN_CACHE: dict[tuple, dict[int, mpfr]] = {}


def _sqrt2_over_sqrtpi_log2(ctx: PrecisionContext) -> mpfr:
    with ctx.gmpy_context():
        return mpfr(mpq(1, 2)) - log2_pi(ctx) / 2


def _two_over_sqrtpi_log2(ctx: PrecisionContext) -> mpfr:
    with ctx.gmpy_context():
        return 1 - log2_pi(ctx) / 2


def _real_recursive_log2(n: int, ctx: PrecisionContext, regime: Regime) -> mpfr:
    chain = _CHAIN_CACHE.setdefault((ctx.working_bits, regime, "real"), {})
    if n in chain:
        return chain[n]
    if n == 2:
        with ctx.gmpy_context():
            chain[2] = mpfr(mpq(1, 2))
        return chain[2]
    if n == 3:
        with ctx.gmpy_context():
            chain[3] = mpfr(mpq(5, 6))
        return chain[3]
    start = n
    while start not in chain and start > 3:
        start -= 2
    prev = _real_recursive_log2(start, ctx, regime) if start <= 3 else chain[start]
    for m in range(start + 2, n + 1, 2):
        a = khintchine_log2(Fraction(2 * m - 4, m - 1), regime, ctx)
        with ctx.gmpy_context():
            prev = mpfr(mpq(1, 2)) + mpq(m - 2, m) * (prev - 2 * a)
        chain[m] = prev
    return prev


def real_recursive(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT,
                   a_p_regime: Regime = Regime.GAMMA_FORMULA) -> ConstantEstimate:
    """The two-step real recursion from C_2 = 2^(1/2), C_3 = 2^(5/6).

    ``a_p_regime`` selects which Khintchine constant feeds the denominator;
    the Gamma regime is the default (it is the one the closed form
    telescopes), the small-p regime reproduces the power-of-two formulas.
    """
    if n < 2:
        raise ValueError(f"recursion requires n >= 2, got {n}")
    e = _real_recursive_log2(n, ctx, a_p_regime)
    return ConstantEstimate(n=n, field=ScalarField.REAL, method=Method.RECURSIVE,
                            value=LogScaledReal(1, e), regime=a_p_regime)


def real_closed(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT,
                acc: Optional[RnAccumulator] = None) -> ConstantEstimate:
    """Closed form C_n = 2^((n+2)/8) * r_n, even n only."""
    if n < 2:
        raise ValueError(f"closed form requires n >= 2, got {n}")
    _require_even(n, "the closed form")
    rl = rn_log2(n, acc, ctx)
    with ctx.gmpy_context():
        e = mpfr(mpq(n + 2, 8)) + rl
        r = gmpy2.exp2(rl)
    return ConstantEstimate(n=n, field=ScalarField.REAL, method=Method.CLOSED_FORM_RN,
                            value=LogScaledReal(1, e), rn_component=r)


def real_power_of_two(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ConstantEstimate:
    """2^((n^2+6n-8)/(8n)) for even n, 2^((n^2+6n-7)/(8n)) for odd, 2 <= n <= 14."""
    if not 2 <= n <= 14:
        raise ValueError(f"power-of-two formulas hold for 2 <= n <= 14, got {n}")
    num = n * n + 6 * n - 8 if n % 2 == 0 else n * n + 6 * n - 7
    with ctx.gmpy_context():
        e = mpfr(mpq(num, 8 * n))
    return ConstantEstimate(n=n, field=ScalarField.REAL, method=Method.POWER_OF_TWO,
                            value=LogScaledReal(1, e))


def _complex_recursive_log2(m: int, ctx: PrecisionContext) -> mpfr:
    chain = _CHAIN_CACHE.setdefault((ctx.working_bits, Regime.GAMMA_FORMULA, "complex"), {})
    if m in chain:
        return chain[m]
    if m in (2, 3):
        with ctx.gmpy_context():
            chain[m] = (m - 1) * _two_over_sqrtpi_log2(ctx)
        return chain[m]
    start = m
    while start not in chain and start > 3:
        start -= 2
    prev = _complex_recursive_log2(start, ctx) if start <= 3 else chain[start]
    for j in range(start + 2, m + 1, 2):
        a = khintchine_gamma_log2(Fraction(2 * j - 4, j - 1), ctx)
        with ctx.gmpy_context():
            prev = (mpfr(mpq(j + 2, 2 * j)) - log2_pi(ctx) / j
                    + mpq(j - 2, j) * (prev - 2 * a))
        chain[j] = prev
    return prev


def complex_recursive(m: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ConstantEstimate:
    """Complex recursion: base (2/sqrt pi)^(m-1) at m = 2, 3, Gamma regime above."""
    if m < 2:
        raise ValueError(f"recursion requires m >= 2, got {m}")
    e = _complex_recursive_log2(m, ctx)
    return ConstantEstimate(n=m, field=ScalarField.COMPLEX, method=Method.RECURSIVE,
                            value=LogScaledReal(1, e),
                            regime=Regime.GAMMA_FORMULA if m >= 4 else None)


def complex_closed(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT,
                   acc: Optional[RnAccumulator] = None) -> ConstantEstimate:
    """Closed form C_n = 2^((n+2)/8) * (sqrt2/sqrt pi) * r_n, even n only."""
    if n < 2:
        raise ValueError(f"closed form requires n >= 2, got {n}")
    _require_even(n, "the closed form")
    rl = rn_log2(n, acc, ctx)
    with ctx.gmpy_context():
        e = mpfr(mpq(n + 2, 8)) + _sqrt2_over_sqrtpi_log2(ctx) + rl
        r = gmpy2.exp2(rl)
    return ConstantEstimate(n=n, field=ScalarField.COMPLEX, method=Method.CLOSED_FORM_RN,
                            value=LogScaledReal(1, e), rn_component=r)


def bn_log2(n: int, form: BnForm = BnForm.GAMMA_FORM,
            ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
    """log2 B_n, the one-step growth factor of the complex recursion.

    recursion_form: 2^((n+2)/(2n)) / pi^(1/n) * (1/A_p^2)^((n-2)/n),
                    p = (2n-4)/(n-1), Gamma regime;
    gamma_form:     (pi/2)^((n-3)/(2n)) * 2^(3/(2n)) / Gamma((3n-5)/(2n-2))^((n-1)/n).

    At n = 3 the gamma form is exactly 2^(1/2) in log-space: the (pi/2)
    exponent vanishes identically and ln Gamma(1) = 0 exactly.
    """
    if n < 3:
        raise ValueError(f"B_n requires n >= 3, got {n}")
    form = BnForm(form)
    if form is BnForm.RECURSION_FORM:
        a = khintchine_gamma_log2(Fraction(2 * n - 4, n - 1), ctx)
        with ctx.gmpy_context():
            return mpfr(mpq(n + 2, 2 * n)) - log2_pi(ctx) / n - mpq(n - 2, n) * (2 * a)
    lgam = ln_gamma(Fraction(3 * n - 5, 2 * n - 2), ctx)
    with ctx.gmpy_context():
        return (mpq(n - 3, 2 * n) * (log2_pi(ctx) - 1)
                + mpfr(mpq(3, 2 * n))
                - mpq(n - 1, n) * (lgam / ln2(ctx)))


def bn(n: int, form: BnForm = BnForm.GAMMA_FORM,
       ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
    """B_n on the linear scale (tends to sqrt 2)."""
    e = bn_log2(n, form, ctx)
    with ctx.gmpy_context():
        return gmpy2.exp2(e)


# the improved complex chain switches Khintchine regime where p crosses the
# crossover exponent: p = (2n-4)/(n-1) is below p0 up to n = 14, above after
_IMPROVED_SWITCH_N = 14


def _complex_improved_log2(n: int, ctx: PrecisionContext) -> mpfr:
    chain = _CHAIN_CACHE.setdefault((ctx.working_bits, "improved", "complex"), {})
    if n in chain:
        return chain[n]
    if 2 <= n <= 7:
        with ctx.gmpy_context():
            chain[n] = (n - 1) * _two_over_sqrtpi_log2(ctx)
        return chain[n]
    start = n - 2
    while start > 7 and start not in chain:
        start -= 2
    prev = _complex_improved_log2(start, ctx)
    for j in range(start + 2, n + 1, 2):
        regime = Regime.SMALL_P_POWER if j <= _IMPROVED_SWITCH_N else Regime.GAMMA_FORMULA
        a = khintchine_log2(Fraction(2 * j - 4, j - 1), regime, ctx)
        with ctx.gmpy_context():
            prev = (mpfr(mpq(j + 2, 2 * j)) - log2_pi(ctx) / j
                    + mpq(j - 2, j) * (prev - 2 * a))
        chain[j] = prev
    return prev


def complex_improved(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ConstantEstimate:
    """Improved complex constants: (2/sqrt pi)^(n-1) through n = 7, then the
    recursion on top of that base.

    The recursion's Khintchine factor uses the small-p regime while
    p = (2n-4)/(n-1) stays below the crossover (n <= 14) and the Gamma
    regime after; this is the regime assignment under which the chain
    reproduces the stated value 2^(30/7) / pi^(19/14) at n = 14 and matches
    the even-n closed form from 16 on.
    """
    if n < 2:
        raise ValueError(f"improved constants require n >= 2, got {n}")
    e = _complex_improved_log2(n, ctx)
    regime = None
    if n >= 8:
        regime = Regime.SMALL_P_POWER if n <= _IMPROVED_SWITCH_N else Regime.GAMMA_FORMULA
    return ConstantEstimate(n=n, field=ScalarField.COMPLEX,
                            method=Method.COMPLEX_IMPROVED_RECURSIVE,
                            value=LogScaledReal(1, e), regime=regime)


def gamma_product(ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
    """prod_{k=1}^{6} Gamma((6k+1)/(4k+2))^(2k+1), about 0.003929571803.

    This six-factor product is the fixed part that the improved chain's
    telescoping leaves behind once the regime switch is past.
    """
    s6 = accumulator_for(ctx).prefix_sum(6)
    with ctx.gmpy_context():
        return gmpy2.exp(s6)


def complex_improved_closed(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT,
                            acc: Optional[RnAccumulator] = None) -> ConstantEstimate:
    """Closed form of the improved chain for even n >= 16:

    2^(n/8 + 67/n + 3/4) / pi^(36/n + 1/2)
        * (prod_{k=1}^{6} Gamma((6k+1)/(4k+2))^(2k+1))^(1/n) * r_n.
    """
    if n < 16:
        raise ValueError(f"improved closed form requires n >= 16, got {n}")
    _require_even(n, "the improved closed form")
    if acc is None:
        acc = accumulator_for(ctx)
    rl = rn_log2(n, acc, ctx)
    s6 = acc.prefix_sum(6)
    with ctx.gmpy_context():
        e = (mpfr(mpq(n, 8)) + mpq(67, n) + mpq(3, 4)
             - (mpq(36, n) + mpq(1, 2)) * log2_pi(ctx)
             + (s6 / ln2(ctx)) / n
             + rl)
        r = gmpy2.exp2(rl)
    return ConstantEstimate(n=n, field=ScalarField.COMPLEX,
                            method=Method.COMPLEX_IMPROVED_CLOSED,
                            value=LogScaledReal(1, e), rn_component=r)


def historical(n: int, which: Method, ctx: PrecisionContext = DEFAULT_CONTEXT) -> ConstantEstimate:
    """Historical constant series: n^((n+1)/(2n)) * 2^((n-1)/2) (the original),
    2^((n-1)/2) (the improvement), and (2/sqrt pi)^(n-1) (the complex one)."""
    if n < 2:
        raise ValueError(f"historical constants require n >= 2, got {n}")
    which = Method(which)
    if which not in HISTORICAL_METHODS:
        raise ValueError(f"{which.value} is not a historical method")
    with ctx.gmpy_context():
        if which is Method.HISTORICAL_BH:
            e = mpq(n + 1, 2 * n) * gmpy2.log2(mpfr(n)) + mpfr(mpq(n - 1, 2))
        elif which is Method.HISTORICAL_DAVIE_KAIJSER:
            e = mpfr(mpq(n - 1, 2))
        else:
            e = (n - 1) * _two_over_sqrtpi_log2(ctx)
    field = ScalarField.COMPLEX if which is Method.HISTORICAL_QUEFFELEC else ScalarField.REAL
    return ConstantEstimate(n=n, field=field, method=which, value=LogScaledReal(1, e))


@dataclass(frozen=True)
class RatioRow:
    """One row of the consecutive-ratio diagnostics.

    ``ratio`` is C_n / C_{n-2} and ``identity`` is 2^(1/4) * r_n / r_{n-2}.
    The closed form makes them one and the same expression: the dyadic
    exponent difference (n+2)/8 - n/8 = 1/4 is computed exactly, so the two
    log2 fields are bit-identical by construction.  ``deviation_from_limit``
    tracks |ratio - 2^(1/8)|; the limit itself is conjectural and only
    reported, never asserted.
    """

    n: int
    ratio_log2: mpfr
    identity_log2: mpfr
    ratio: mpfr
    identity: mpfr
    rn_ratio: mpfr
    deviation_from_limit: mpfr


def ratio_diagnostics(n_max: int, field: ScalarField = ScalarField.REAL,
                      ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[RatioRow]:
    """Consecutive-ratio rows for even n in [4, n_max] (same in both fields:
    the field coupling factor cancels in the quotient)."""
    if n_max < 6 or n_max % 2:
        raise ValueError(f"ratio diagnostics require even n_max >= 6, got {n_max}")
    ScalarField(field)
    acc = accumulator_for(ctx)
    acc.extend_to((n_max - 2) // 2)
    rows = []
    eighth_root = None
    prev_log2 = rn_log2(2, acc, ctx)
    for n in range(4, n_max + 1, 2):
        cur_log2 = rn_log2(n, acc, ctx)
        with ctx.gmpy_context():
            if eighth_root is None:
                eighth_root = gmpy2.exp2(mpfr(mpq(1, 8)))
            step = cur_log2 - prev_log2
            ratio_log2 = mpfr(mpq(1, 4)) + step
            identity_log2 = mpfr(mpq(1, 4)) + step
            ratio = gmpy2.exp2(ratio_log2)
            identity = gmpy2.exp2(identity_log2)
            rows.append(RatioRow(
                n=n,
                ratio_log2=ratio_log2,
                identity_log2=identity_log2,
                ratio=ratio,
                identity=identity,
                rn_ratio=gmpy2.exp2(step),
                deviation_from_limit=abs(ratio - eighth_root),
            ))
        prev_log2 = cur_log2
    return rows


@dataclass(frozen=True)
class ConsistencyRow:
    n: int
    power_of_two_log2: mpfr
    closed_log2: mpfr
    relative_gap: mpfr  # power_of_two / closed - 1
    flagged: bool


@dataclass(frozen=True)
class ConsistencyReport:
    """Power-of-two formulas vs the Gamma-regime closed form on 2 <= n <= 14.

    The two families are both stated as equalities for small arity yet
    disagree from n = 4 on (small-p vs Gamma Khintchine regime); rows with
    |relative gap| above the threshold are flagged.  The report takes no side
    on which family is the intended definition.
    """

    threshold: float
    rows: tuple[ConsistencyRow, ...]

    def row(self, n: int) -> ConsistencyRow:
        for r in self.rows:
            if r.n == n:
                return r
        raise KeyError(n)


def consistency_report(ctx: PrecisionContext = DEFAULT_CONTEXT,
                       threshold: float = 1e-3) -> ConsistencyReport:
    rows = []
    for n in range(2, 15, 2):
        p2 = real_power_of_two(n, ctx).log2_value
        cl = real_closed(n, ctx).log2_value
        with ctx.gmpy_context():
            gap = gmpy2.exp2(p2 - cl) - 1
        rows.append(ConsistencyRow(
            n=n,
            power_of_two_log2=p2,
            closed_log2=cl,
            relative_gap=gap,
            flagged=bool(abs(gap) > threshold),
        ))
    return ConsistencyReport(threshold=threshold, rows=tuple(rows))
