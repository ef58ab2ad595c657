"""High-precision estimates of Bohnenblust-Hille inequality constants.

The package has four layers:

* :mod:`bhconstants.numerics` -- configurable-precision kernels (log-Gamma via
  a Stirling series with explicit remainder control, compensated summation,
  and a sign + log2 representation for astronomically large values).
* :mod:`bhconstants.khintchine` -- best Khintchine constants ``A_p`` in both
  the Gamma-function regime and the small-exponent power-of-two regime,
  together with the crossover exponent where the regimes meet.
* :mod:`bhconstants.constants` -- every constant estimate family: two-step
  recursions over the arity, closed forms through the normalized sequence
  ``r_n``, power-of-two formulas for small arity, the growth factors ``B_n``,
  improved complex constants, historical reference series, and the
  ratio/consistency diagnostics that compare them.
* :mod:`bhconstants.verifier` -- exact mixed norms and sup norms of small
  multilinear forms on the ell-infinity cube, plus extremal search producing
  empirical lower bounds for the best constants.

Everything is deterministic: identical inputs and precision context give
bit-identical outputs.  All constants are upper-bound estimates; reports label
them as such.
"""

from bhconstants.numerics import (
    PrecisionContext,
    LogScaledReal,
    CompensatedSum,
    DEFAULT_CONTEXT,
    ln_gamma,
    log_scaled_pow,
)
from bhconstants.khintchine import (
    Regime,
    KhintchineConstant,
    khintchine_gamma,
    khintchine_small_p,
    crossover_p0,
)
from bhconstants.constants import (
    ScalarField,
    Method,
    ConstantEstimate,
    RnAccumulator,
    accumulator_for,
    rn,
    rn_log2,
    sn,
    real_recursive,
    real_closed,
    real_power_of_two,
    complex_recursive,
    complex_closed,
    bn,
    bn_log2,
    complex_improved,
    complex_improved_closed,
    gamma_product,
    historical,
    ratio_diagnostics,
    consistency_report,
)
from bhconstants.verifier import (
    Certified,
    MultilinearForm,
    RatioReport,
    SearchStrategy,
    SupNormResult,
    mixed_norm,
    sup_norm_real,
    sup_norm_complex,
    bh_ratio,
    search_lower_bound,
    littlewood_form,
    diagonal_form,
    form_to_json,
    form_from_json,
    load_form,
    report_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "PrecisionContext",
    "LogScaledReal",
    "CompensatedSum",
    "DEFAULT_CONTEXT",
    "ln_gamma",
    "log_scaled_pow",
    "Regime",
    "KhintchineConstant",
    "khintchine_gamma",
    "khintchine_small_p",
    "crossover_p0",
    "ScalarField",
    "Method",
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
    "ratio_diagnostics",
    "consistency_report",
    "Certified",
    "MultilinearForm",
    "RatioReport",
    "SearchStrategy",
    "SupNormResult",
    "mixed_norm",
    "sup_norm_real",
    "sup_norm_complex",
    "bh_ratio",
    "search_lower_bound",
    "littlewood_form",
    "diagonal_form",
    "form_to_json",
    "form_from_json",
    "load_form",
    "report_to_json",
]
