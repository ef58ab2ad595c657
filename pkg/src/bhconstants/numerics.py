"""Configurable-precision numeric kernels.

Everything downstream (Khintchine constants, the constant recursions, the
``r_n`` product) reduces to four primitives implemented here:

* ``ln_gamma`` -- log-Gamma for positive real arguments via the Stirling
  asymptotic series with an argument-shift recurrence.  The shift pushes the
  argument high enough that the first omitted series term (which bounds the
  remainder) is below the working-precision target.
* ``LogScaledReal`` -- sign plus base-2 logarithm of the magnitude, so values
  like 10^188 survive without overflow and rational powers are exact
  log-space operations.
* ``CompensatedSum`` -- Neumaier-compensated accumulation for the long
  weighted log-Gamma sums (up to ~5*10^5 terms).
* ``PrecisionContext`` -- the precision policy (mantissa bits + guard bits)
  threaded through every kernel.

The arithmetic backend is MPFR via gmpy2: correctly rounded, round-to-nearest
-even, and bit-for-bit reproducible across platforms.  Identical inputs and
context always produce identical outputs; there is no hidden global state
beyond exact rational caches (Bernoulli numbers, series coefficients).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import gmpy2
from gmpy2 import mpfr, mpq

__all__ = [
    "PrecisionContext",
    "DEFAULT_CONTEXT",
    "LogScaledReal",
    "CompensatedSum",
    "ln_gamma",
    "log_scaled_pow",
    "as_mpfr",
    "ln2",
    "log2_pi",
    "exp2",
]


@dataclass(frozen=True)
class PrecisionContext:
    """Precision policy shared by all numeric kernels.

    ``mantissa_bits`` is the advertised working precision; ``guard_bits`` are
    carried on top of it through every intermediate computation so that long
    sums and cancellations do not eat into the advertised digits.
    ``max_rel_error`` is the relative error bound the kernels promise for
    their outputs (checked empirically by the doubled-precision properties in
    the test suite).
    """

    mantissa_bits: int = 128
    guard_bits: int = 32
    max_rel_error: float = field(default=0.0)

    def __post_init__(self) -> None:
        if self.mantissa_bits < 53:
            raise ValueError("mantissa_bits must be at least 53")
        if self.guard_bits < 0:
            raise ValueError("guard_bits must be non-negative")
        if not self.max_rel_error:
            # a few ulps of slack below the advertised mantissa
            object.__setattr__(self, "max_rel_error", 2.0 ** (-(self.mantissa_bits - 6)))

    @property
    def working_bits(self) -> int:
        return self.mantissa_bits + self.guard_bits

    def gmpy_context(self, extra_bits: int = 0) -> "gmpy2.context":
        return gmpy2.context(precision=self.working_bits + extra_bits)

    def doubled(self) -> "PrecisionContext":
        return PrecisionContext(2 * self.mantissa_bits, self.guard_bits)


DEFAULT_CONTEXT = PrecisionContext()


def as_mpfr(value, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
    """Convert ``value`` to an mpfr at the context's working precision.

    Rationals (``Fraction`` or ``mpq``) convert with a single correct
    rounding; floats and ints are exact.
    """
    with ctx.gmpy_context():
        if isinstance(value, Fraction):
            return mpfr(mpq(value.numerator, value.denominator))
        return mpfr(value)


# cached per-precision transcendental constants (mpfr is immutable, safe to share)
_LN2_CACHE: dict[int, mpfr] = {}
_LOG2PI_CACHE: dict[int, mpfr] = {}


def ln2(ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
    """ln 2 at working precision."""
    bits = ctx.working_bits
    if bits not in _LN2_CACHE:
        with ctx.gmpy_context():
            _LN2_CACHE[bits] = gmpy2.log(mpfr(2))
    return _LN2_CACHE[bits]


def log2_pi(ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
    """log2 pi at working precision."""
    bits = ctx.working_bits
    if bits not in _LOG2PI_CACHE:
        with ctx.gmpy_context():
            _LOG2PI_CACHE[bits] = gmpy2.log2(gmpy2.const_pi())
    return _LOG2PI_CACHE[bits]


def exp2(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
    """2**x at working precision."""
    with ctx.gmpy_context():
        return gmpy2.exp2(as_mpfr(x, ctx))


# ---------------------------------------------------------------------------
# Bernoulli numbers and Stirling series coefficients (exact rationals)
# ---------------------------------------------------------------------------

_BERNOULLI: list[Fraction] = [Fraction(1)]


def _bernoulli(m: int) -> Fraction:
    """B_m by the defining recurrence, cached (B_1 = -1/2 convention)."""
    while len(_BERNOULLI) <= m:
        k = len(_BERNOULLI)
        acc = Fraction(0)
        for i, b in enumerate(_BERNOULLI):
            acc += math.comb(k + 1, i) * b
        _BERNOULLI.append(-acc / (k + 1))
    return _BERNOULLI[m]


_STIRLING_COEFF_Q: list[mpq] = []
# per-precision caches: coefficient mpfr images, ln(2*pi)/2, 2^-(prec+4)
_STIRLING_COEFF_F: dict[int, list[mpfr]] = {}
_HALF_LN_2PI: dict[int, mpfr] = {}
_TOL_SCALE: dict[int, mpfr] = {}


def _stirling_coeff_q(j: int) -> mpq:
    """Exact coefficient B_{2j} / ((2j)(2j-1)) of y^{1-2j} in the series."""
    while len(_STIRLING_COEFF_Q) < j:
        i = len(_STIRLING_COEFF_Q) + 1
        c = _bernoulli(2 * i) / (2 * i * (2 * i - 1))
        _STIRLING_COEFF_Q.append(mpq(c.numerator, c.denominator))
    return _STIRLING_COEFF_Q[j - 1]


def _stirling_coeff(j: int, prec: int, cache: list[mpfr]) -> mpfr:
    # rounding the exact coefficient once per precision is harmless: the
    # series sum is a small correction on top of the main Stirling terms
    while len(cache) < j:
        cache.append(mpfr(_stirling_coeff_q(len(cache) + 1)))
    return cache[j - 1]


def _stirling_cutoff(prec: int) -> int:
    # series target 2^-prec is reachable once y >~ 0.17 * prec; the +5 keeps
    # the term count moderate at low precision
    return max(8, int(0.17 * prec) + 5)


def _stirling_ln_gamma(y: mpfr, prec: int) -> mpfr:
    """ln Gamma(y) for y above the cutoff, current gmpy2 context active."""
    half_ln_2pi = _HALF_LN_2PI.get(prec)
    if half_ln_2pi is None:
        half_ln_2pi = gmpy2.log(2 * gmpy2.const_pi()) / 2
        _HALF_LN_2PI[prec] = half_ln_2pi
        _TOL_SCALE[prec] = gmpy2.exp2(mpfr(-(prec + 4)))
        _STIRLING_COEFF_F[prec] = []
    coeff_cache = _STIRLING_COEFF_F[prec]
    ln_y = gmpy2.log(y)
    main = (y - 0.5) * ln_y - y + half_ln_2pi
    tol = _TOL_SCALE[prec] * max(mpfr(1), abs(main))
    inv_y2 = 1 / (y * y)
    power = 1 / y  # y^{1-2j} for j = 1
    total = mpfr(0)
    prev = gmpy2.inf()
    for j in range(1, 10_000):
        term = _stirling_coeff(j, prec, coeff_cache) * power
        total += term
        mag = abs(term)
        if mag < tol:
            break
        if mag >= prev:  # series started diverging: cutoff too low
            raise RuntimeError("Stirling series failed to converge; cutoff bug")
        prev = mag
        power *= inv_y2
    else:  # pragma: no cover - loop bound is defensive
        raise RuntimeError("Stirling series exceeded iteration bound")
    return main + total


def _extra_bits_near_zero(x_approx: float, xq: mpq | None) -> int:
    """Extra working bits to keep ln_gamma relatively accurate near its zeros.

    ln Gamma vanishes at x = 1 and x = 2, so a fixed absolute accuracy there
    means poor relative accuracy; compensate with ~|log2(distance)| bits,
    capped at 512 (arguments closer to a zero than 2^-500 get absolute
    accuracy only).
    """
    if not 0.5 < x_approx < 2.5:
        return 0
    if xq is not None:
        d = float(mpfr(min(abs(xq - 1), abs(xq - 2)), precision=64))
    else:
        d = min(abs(x_approx - 1.0), abs(x_approx - 2.0))
    if d >= 0.5:
        return 0
    if d == 0.0:
        return 512  # closer to the zero than float can resolve; max out
    return min(512, int(math.ceil(-math.log2(d))) + 16)


def ln_gamma(x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
    """ln Gamma(x) for real x > 0 with relative error <= ctx.max_rel_error.

    Strategy: shift the argument upward by an integer k until the Stirling
    series remainder (bounded by the first omitted term) is below target,
    evaluate the series there, then subtract ln of the product
    (x)(x+1)...(x+k-1).  For rational x the product is formed exactly, so the
    subtraction costs a single correctly rounded logarithm.

    Exact special cases: ln_gamma(1) = ln_gamma(2) = 0 exactly.
    """
    if isinstance(x, (Fraction, Rational)):
        xq = mpq(x.numerator, x.denominator)
    elif isinstance(x, mpq):
        xq = x
    elif isinstance(x, int):
        xq = mpq(x)
    else:
        xq = None

    if xq is not None:
        if xq <= 0:
            raise ValueError(f"ln_gamma requires x > 0, got {x}")
        if xq == 1 or xq == 2:
            with ctx.gmpy_context():
                return mpfr(0)
        x_approx = float(mpfr(xq, precision=64))
    else:
        xf = mpfr(x, precision=max(64, getattr(x, "precision", 64)))
        if not gmpy2.is_finite(xf) or xf <= 0:
            raise ValueError(f"ln_gamma requires finite x > 0, got {x}")
        if xf == 1 or xf == 2:
            with ctx.gmpy_context():
                return mpfr(0)
        x_approx = float(xf)

    extra = _extra_bits_near_zero(x_approx, xq)
    prec = ctx.working_bits + extra
    with gmpy2.context(precision=prec + 10):
        cutoff = _stirling_cutoff(prec)
        if xq is not None:
            if xq >= cutoff:
                result = _stirling_ln_gamma(mpfr(xq), prec)
            else:
                k = int(math.ceil(cutoff - x_approx))
                # exact rational product (x)(x+1)...(x+k-1) = prod(a+ib) / b^k
                a, b = xq.numerator, xq.denominator
                p_num = 1
                for i in range(k):
                    p_num *= a + i * b
                shift_product = mpq(p_num, b**k)
                result = _stirling_ln_gamma(mpfr(xq + k), prec) - gmpy2.log(
                    mpfr(shift_product)
                )
        else:
            y = mpfr(xf)
            if y >= cutoff:
                result = _stirling_ln_gamma(y, prec)
            else:
                k = int(math.ceil(cutoff - x_approx))
                shift_product = mpfr(1)
                for i in range(k):
                    shift_product *= y + i
                result = _stirling_ln_gamma(y + k, prec) - gmpy2.log(shift_product)
    with ctx.gmpy_context():
        return mpfr(result)


# ---------------------------------------------------------------------------
# Log-scaled reals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LogScaledReal:
    """A real number stored as sign and base-2 logarithm of the magnitude.

    ``sign = 0`` represents exact zero and ``log2_magnitude`` is then
    ignored.  Multiplication adds logs; rational powers scale them.  This is
    the only representation in which values like C at n = 5000 (about
    10^188) stay finite and composable.
    """

    sign: int
    log2_magnitude: mpfr

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0, or +1, got {self.sign}")

    @classmethod
    def zero(cls) -> "LogScaledReal":
        return cls(0, mpfr(0))

    @classmethod
    def from_log2(cls, log2_magnitude, sign: int = 1,
                  ctx: PrecisionContext = DEFAULT_CONTEXT) -> "LogScaledReal":
        return cls(sign, as_mpfr(log2_magnitude, ctx))

    @classmethod
    def from_number(cls, value, ctx: PrecisionContext = DEFAULT_CONTEXT) -> "LogScaledReal":
        with ctx.gmpy_context():
            v = as_mpfr(value, ctx)
            if v == 0:
                return cls.zero()
            return cls(1 if v > 0 else -1, gmpy2.log2(abs(v)))

    def mul(self, other: "LogScaledReal", ctx: PrecisionContext = DEFAULT_CONTEXT) -> "LogScaledReal":
        if self.sign == 0 or other.sign == 0:
            return LogScaledReal.zero()
        with ctx.gmpy_context():
            return LogScaledReal(self.sign * other.sign,
                                 self.log2_magnitude + other.log2_magnitude)

    def to_mpfr(self, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
        with ctx.gmpy_context():
            if self.sign == 0:
                return mpfr(0)
            return self.sign * gmpy2.exp2(self.log2_magnitude)

    def to_float(self) -> float:
        # exponentiate at full precision first; rounding log2 to a double
        # before 2**x would cost ~40 bits
        if self.sign == 0:
            return 0.0
        return float(self.to_mpfr())

    def log10(self, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
        if self.sign <= 0:
            raise ValueError("log10 requires a positive value")
        with ctx.gmpy_context():
            return self.log2_magnitude / gmpy2.log2(mpfr(10))

    def __float__(self) -> float:
        return self.to_float()


def log_scaled_pow(base: LogScaledReal, exponent,
                   ctx: PrecisionContext = DEFAULT_CONTEXT) -> LogScaledReal:
    """base ** exponent in log-space; exponent is an exact rational.

    Zero base stays zero (positive exponent required); a negative base is
    only allowed for integer exponents.
    """
    e = Fraction(exponent)
    if base.sign == 0:
        if e <= 0:
            raise ValueError("zero base requires a positive exponent")
        return LogScaledReal.zero()
    if base.sign < 0 and e.denominator != 1:
        raise ValueError("negative base with fractional exponent")
    sign = -1 if (base.sign < 0 and e.numerator % 2) else 1
    with ctx.gmpy_context():
        return LogScaledReal(sign, mpq(e.numerator, e.denominator) * base.log2_magnitude)


# ---------------------------------------------------------------------------
# Compensated summation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompensatedSum:
    """Neumaier-compensated running sum, updated functionally.

    After k added terms of magnitude <= M the absolute error of ``total`` is
    <= 2 * eps * k * M with eps = 2^-working_bits (validated against
    doubled-precision re-summation in the tests).
    """

    running_sum: mpfr
    compensation: mpfr

    @classmethod
    def zero(cls) -> "CompensatedSum":
        return cls(mpfr(0), mpfr(0))

    def add(self, term, ctx: PrecisionContext = DEFAULT_CONTEXT) -> "CompensatedSum":
        with ctx.gmpy_context():
            x = as_mpfr(term, ctx)
            s = self.running_sum
            t = s + x
            if abs(s) >= abs(x):
                c = self.compensation + ((s - t) + x)
            else:
                c = self.compensation + ((x - t) + s)
            return CompensatedSum(t, c)

    def total(self, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpfr:
        with ctx.gmpy_context():
            return self.running_sum + self.compensation
