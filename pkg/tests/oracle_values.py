"""Reference values frozen from an independent multiple-precision run.

Everything here was computed with mpmath at 60 significant digits before the
library code existed, so these literals share no code path with the
implementation under test.  Large-index values (the 10^6-range checkpoints)
are frozen rather than recomputed because the independent sum takes minutes
at oracle precision.

``RN_TABLE_5DP`` holds the five-decimal reference strings the checkpoint
table is expected to reproduce.  ``RN_COMPUTED_5DP`` holds what the defining
product formula actually gives, verified independently; the two disagree at
n = 100 and n = 300000 (see the corresponding acceptance test).
"""

# five-decimal checkpoint table targets
RN_TABLE_5DP = {
    10: "1.28682",
    30: "1.37516",
    50: "1.39747",
    100: "1.41640",
    250: "1.42943",
    500: "1.43437",
    1000: "1.43707",
    5000: "1.43951",
    10000: "1.43986",
    15000: "1.43998",
    25000: "1.44008",
    40000: "1.44014",
    100000: "1.44021",
    300000: "1.44023",
    1000000: "1.44025",
}

# what the product formula evaluates to, independently verified at 60 digits
RN_COMPUTED_5DP = dict(RN_TABLE_5DP)
RN_COMPUTED_5DP[100] = "1.41639"     # exact value 1.4163945...
RN_COMPUTED_5DP[300000] = "1.44024"  # exact value 1.4402350...

# Khintchine crossover: unique p in (1, 2) where the Gamma formula meets
# 2^(1/2 - 1/p)
P0_CROSSOVER = "1.847416336076342129397693689734591211915"

# A_{4/3} in the Gamma regime
A_4_3 = "0.870254446784069814115262436019364810366"

# real closed-form constants
C_REAL_30 = "22.002496828"
C_REAL_50 = "126.484373111"
C_REAL_100 = "9756.99913561"
LOG10_C_REAL = {
    500: "19.046292771",
    1000: "37.8614861951",
    5000: "188.377218918",
}

# auxiliary sequence B_n
B_4 = "1.45157265229759607906472722564"
B_10 = "1.44629719609131330916146998996"
B_100 = "1.41808416488808731287398730512"
B_1E6_MINUS_SQRT2 = 3.932277668696512e-07

# improved complex constants
GAMMA_PRODUCT = "0.0039295718027326598871"
GAMMA_PRODUCT_10SIG = 0.003929571803
IMPROVED_14 = "4.12501141019156778306025503835"
IMPROVED_16 = "4.962453034498754119038"
C_COMPLEX_4 = "1.54193585438096397122392706182"
C_COMPLEX_10_CLOSED = "2.90404857056551402872436980344"
TWO_OVER_SQRTPI = "1.12837916709551257389615890312"
LOG2_SQRT2_OVER_SQRTPI = "-0.325748064736159399021639647554"

# power-of-two vs closed-form relative gaps (power2/closed - 1)
CONSISTENCY_GAP_4 = 0.0349127799784
CONSISTENCY_GAP_14 = 0.0186228965555
