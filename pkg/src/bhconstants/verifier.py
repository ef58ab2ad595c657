"""Desk-scale verification of the inequality on small multilinear forms.

A form U on the N-dimensional sup-norm cube is stored as its dense
coefficient tensor, entry (i_1, ..., i_n) = U(e_{i_1}, ..., e_{i_n}).  Two
norms are computed:

* mixed norm: the ell_{2n/(n+1)} norm of the coefficients (the left side of
  the inequality);
* sup norm: max |U| over the product of unit balls.  In the real case the
  maximum is attained at extreme points, i.e. sign vectors, because U is
  affine in each coordinate separately; enumeration over signs is therefore
  exact.  The evaluation is factorized: enumerate sign tuples for the first
  n-1 slots and collapse the last slot by the ell_1 trick (optimal last-slot
  signs are the signs of the partial contraction), which cuts cost by 2^N.
  The complex maximum has no finite certificate here; we return certified
  lower bounds only (grid of roots of unity, then cyclic coordinate ascent
  with the closed-form optimal unimodular phases per slot).

Ratios mixed/sup are then true lower bounds on the best constant for that
arity (exact real case), to be compared against the upper-bound estimates
from the constants module.

Norms use double precision with compensated summation; magnitudes at desk
scale are tame and an independent naive evaluator guards correctness in the
test suite.  Every search and enumeration is deterministic: fixed traversal
order, first-maximum tie-breaking (lexicographically smallest witness), and
seeded generators.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from bhconstants.constants import (
    ScalarField,
    complex_recursive,
    real_recursive,
)

__all__ = [
    "ENUMERATION_CAP",
    "GRID_BUDGET",
    "MultilinearForm",
    "Certified",
    "SupNormResult",
    "RatioReport",
    "SearchStrategy",
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

# exact real enumeration is O(2^((n-1)N)); n*N above this cap is refused
ENUMERATION_CAP = 24

# grid search is O(grid_order^(n*N)) evaluations; refuse beyond this
GRID_BUDGET = 2**24


class Certified(str, Enum):
    EXACT = "exact"
    LOWER_BOUND = "lower_bound"


@dataclass(frozen=True)
class MultilinearForm:
    """Dense n-linear form on the N-dimensional sup-norm cube."""

    n: int
    N: int
    field: ScalarField
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"arity must be >= 2, got {self.n}")
        if self.N < 1:
            raise ValueError(f"dimension must be >= 1, got {self.N}")
        field = ScalarField(self.field)
        object.__setattr__(self, "field", field)
        dtype = np.complex128 if field is ScalarField.COMPLEX else np.float64
        coeffs = np.asarray(self.coefficients, dtype=dtype)
        if coeffs.shape != (self.N,) * self.n:
            raise ValueError(
                f"expected coefficient tensor of shape {(self.N,) * self.n}, got {coeffs.shape}")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)

    def evaluate(self, vectors: Sequence[Sequence[complex]]) -> complex | float:
        """U(x^(1), ..., x^(n)) by successive contraction."""
        if len(vectors) != self.n:
            raise ValueError(f"expected {self.n} argument vectors")
        out = self.coefficients
        for v in vectors:
            arr = np.asarray(v)
            if arr.shape != (self.N,):
                raise ValueError(f"argument vectors must have length {self.N}")
            out = np.tensordot(arr, out, axes=(0, 0))
        return out.item()


def littlewood_form() -> MultilinearForm:
    """The classical 2x2 extremizer (+1,+1; +1,-1) saturating sqrt 2."""
    return MultilinearForm(2, 2, ScalarField.REAL,
                           np.array([[1.0, 1.0], [1.0, -1.0]]))


def diagonal_form(n: int = 2, N: int = 2,
                  field: ScalarField = ScalarField.REAL) -> MultilinearForm:
    """Single corner coefficient 1: U = e_1 (x) ... (x) e_1; both norms are 1."""
    coeffs = np.zeros((N,) * n)
    coeffs[(0,) * n] = 1.0
    return MultilinearForm(n, N, field, coeffs)


@dataclass(frozen=True)
class SupNormResult:
    """Sup-norm value with the argument tuple that attains (or certifies) it."""

    value: float
    witness: tuple
    certified: Certified


@dataclass(frozen=True)
class RatioReport:
    """Both norms, their quotient, and the sup-norm witness.

    ``certified`` records whether the sup norm is the exact maximum (real
    sign enumeration) or only a certified lower bound (complex search); in
    the latter case the true ratio can only be smaller.
    """

    mixed_norm: float
    sup_norm: float
    ratio: float
    witness: tuple
    certified: Certified


def mixed_norm(form: MultilinearForm) -> float:
    """ell_{2n/(n+1)} norm of the coefficient tensor."""
    n = form.n
    p = 2 * n / (n + 1)
    moduli = np.abs(form.coefficients).ravel()
    s = math.fsum(float(m) ** p for m in moduli)
    return s ** (1.0 / p)


def _sign_matrix(N: int) -> np.ndarray:
    """All sign vectors of length N, lexicographic with +1 before -1.

    Row index b maps coordinate j to +1 when bit (N-1-j) of b is 0, so
    ascending row order is ascending lexicographic order of witnesses.
    """
    rows = np.arange(2**N)[:, None]
    bits = (rows >> np.arange(N - 1, -1, -1)[None, :]) & 1
    return 1.0 - 2.0 * bits


def _canonical_last_signs(w: np.ndarray) -> np.ndarray:
    """Lexicographically smallest sign vector attaining sum |w_i|.

    Entries with w_i = 0 are free; set them to +1.  The overall sign flip is
    also free (it negates U but not |U|); orient so the first nonzero entry
    gets +1.
    """
    signs = np.ones_like(w)
    nonzero = w != 0
    if nonzero.any():
        first = int(np.argmax(nonzero))
        orient = 1.0 if w.flat[first] > 0 else -1.0
        signs[nonzero] = orient * np.sign(w[nonzero])
    return signs


def sup_norm_real(form: MultilinearForm, cap: int = ENUMERATION_CAP) -> SupNormResult:
    """Exact sup norm by extreme-point enumeration (real forms only).

    Multilinearity makes |U| attain its maximum over the sup-norm ball at
    sign vectors, so enumerating them is exact, not heuristic.  Ties resolve
    to the lexicographically smallest witness (+1 sorts before -1).
    """
    if form.field is not ScalarField.REAL:
        raise ValueError("sup_norm_real requires a real form")
    if form.n * form.N > cap:
        raise ValueError(
            f"form too large for exact enumeration: n*N = {form.n * form.N} "
            f"exceeds the cap {cap}")
    N, n = form.N, form.n
    S = _sign_matrix(N)
    P = form.coefficients[None]  # batch axis + n slot axes
    for _ in range(n - 1):
        # contract the leading slot axis against every sign vector; the new
        # batch index keeps earlier slots more significant
        P = np.einsum("mi,bi...->bm...", S, P)
        P = P.reshape((-1,) + P.shape[2:])
    row_l1 = np.abs(P).sum(axis=1)
    best = int(np.argmax(row_l1))  # first maximum = lexicographically smallest
    value = math.fsum(abs(float(x)) for x in P[best])  # re-sum compensated
    outer = []
    idx = best
    for j in range(n - 1):
        digit = (idx >> ((n - 2 - j) * N)) & (2**N - 1)
        outer.append(tuple(float(s) for s in S[digit]))
    last = _canonical_last_signs(P[best])
    witness = tuple(outer) + (tuple(float(s) for s in last),)
    return SupNormResult(value=value, witness=witness, certified=Certified.EXACT)


def _roots_of_unity(order: int) -> np.ndarray:
    # orders dividing 4 get exact values so the +-1 grid reproduces the real
    # enumeration bit for bit
    if order == 1:
        return np.array([1.0 + 0.0j])
    if order == 2:
        return np.array([1.0 + 0.0j, -1.0 + 0.0j])
    if order == 4:
        return np.array([1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j])
    return np.exp(2j * np.pi * np.arange(order) / order)


def _grid_matrix(N: int, order: int) -> np.ndarray:
    """All length-N tuples of order-th roots of unity, lexicographic."""
    roots = _roots_of_unity(order)
    grids = np.meshgrid(*([roots] * N), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)


def sup_norm_complex(form: MultilinearForm, grid_order: int = 4,
                     ascent_iters: int = 50) -> SupNormResult:
    """Certified lower bound on the complex sup norm.

    Stage 1 takes the maximum of |U| over all tuples of grid_order-th roots
    of unity per coordinate.  Stage 2 improves it by cyclic coordinate
    ascent: fixing all slots but one, U is linear in the free slot and the
    optimal unimodular choice is the conjugate phase of each partial
    coefficient, giving sum |w_i|; this never decreases the value.  The
    result is a valid lower bound on the true sup norm, never an upper bound.

    Real forms are accepted too (their complex sup norm is what is bounded).
    """
    if grid_order < 2:
        raise ValueError(f"grid_order must be >= 2, got {grid_order}")
    if ascent_iters < 0:
        raise ValueError(f"ascent_iters must be >= 0, got {ascent_iters}")
    n, N = form.n, form.N
    if grid_order ** (n * N) > GRID_BUDGET:
        raise ValueError(
            f"grid too large: {grid_order}^{n * N} evaluations exceed the "
            f"budget {GRID_BUDGET}")
    T = form.coefficients.astype(np.complex128)
    C = _grid_matrix(N, grid_order)  # (g^N, N)
    M = C.shape[0]
    P = T[None]
    for _ in range(n - 1):
        P = np.einsum("mi,bi...->bm...", C, P)
        P = P.reshape((-1,) + P.shape[2:])
    # last slot: enumerate its grid vectors too (chunked to bound memory)
    best_val = -1.0
    best_row = -1
    best_col = -1
    chunk = max(1, (2**21) // M)
    for start in range(0, P.shape[0], chunk):
        block = np.abs(P[start:start + chunk] @ C.T)
        pos = np.unravel_index(int(np.argmax(block)), block.shape)
        val = float(block[pos])
        if val > best_val:
            best_val = val
            best_row = start + int(pos[0])
            best_col = int(pos[1])
    vectors = []
    idx = best_row
    for j in range(n - 1):
        digit = (idx // (M ** (n - 2 - j))) % M
        vectors.append(np.array(C[digit]))
    vectors.append(np.array(C[best_col]))
    value = best_val

    # cyclic coordinate ascent; per-slot optimum is closed form
    for _ in range(ascent_iters):
        improved = False
        for j in range(n):
            # contracting slots in increasing order keeps the current slot at
            # axis 0 once all earlier ones are gone, axis 1 before that
            w = T
            for k in range(n):
                if k == j:
                    continue
                w = np.tensordot(vectors[k], w, axes=(0, 0 if k < j else 1))
            new_val = float(np.abs(w).sum())
            phases = np.ones(N, dtype=np.complex128)
            nz = w != 0
            phases[nz] = np.conj(w[nz]) / np.abs(w[nz])
            vectors[j] = phases
            if new_val > value:
                value = new_val
                improved = True
        if not improved:
            break
    witness = tuple(tuple(complex(z) for z in v) for v in vectors)
    return SupNormResult(value=value, witness=witness,
                         certified=Certified.LOWER_BOUND)


def bh_ratio(form: MultilinearForm, grid_order: int = 4,
             ascent_iters: int = 50) -> RatioReport:
    """mixed_norm / sup_norm with the sup norm picked by scalar field.

    For real forms the sup norm is exact, so the ratio is a true lower bound
    on the best constant at this arity and dimension.
    """
    mixed = mixed_norm(form)
    if form.field is ScalarField.REAL:
        result = sup_norm_real(form)
    else:
        result = sup_norm_complex(form, grid_order=grid_order,
                                  ascent_iters=ascent_iters)
    if result.value == 0.0:
        raise ValueError("ratio undefined for the zero form")
    return RatioReport(mixed_norm=mixed, sup_norm=result.value,
                       ratio=mixed / result.value,
                       witness=result.witness, certified=result.certified)


class SearchStrategy(str, Enum):
    EXHAUSTIVE_PM1 = "exhaustive_pm1"
    RANDOM_PM1 = "random_pm1"
    LOCAL_FLIP = "local_flip"


# sign tensors are scale- and sign-symmetric; fixing the first coefficient
# to +1 halves the exhaustive enumeration
_EXHAUSTIVE_LIMIT = 20


def _tensor_from_bits(bits: int, size: int, shape: tuple) -> np.ndarray:
    flat = np.empty(size)
    flat[0] = 1.0
    for i in range(1, size):
        flat[i] = -1.0 if (bits >> (i - 1)) & 1 else 1.0
    return flat.reshape(shape)


def search_lower_bound(n: int, N: int,
                       strategy: SearchStrategy = SearchStrategy.EXHAUSTIVE_PM1,
                       budget: int = 1000, seed: int = 0,
                       field: ScalarField = ScalarField.REAL
                       ) -> tuple[RatioReport, MultilinearForm]:
    """Best mixed/sup ratio over generated forms; empirical lower bound.

    Deterministic given (strategy, budget, seed): fixed enumeration order,
    seeded generator, and first-found tie-breaking.  The best ratio is
    post-checked against the recursion's upper bound for (field, n); a
    violation would mean a soundness bug and raises immediately.
    """
    strategy = SearchStrategy(strategy)
    field = ScalarField(field)
    if n < 2 or N < 1:
        raise ValueError(f"search requires n >= 2 and N >= 1, got ({n}, {N})")
    shape = (N,) * n
    size = N**n
    best: tuple[RatioReport, MultilinearForm] | None = None

    def consider(coeffs: np.ndarray) -> None:
        nonlocal best
        form = MultilinearForm(n, N, field, coeffs)
        report = bh_ratio(form)
        if best is None or report.ratio > best[0].ratio:
            best = (report, form)

    if strategy is SearchStrategy.EXHAUSTIVE_PM1:
        if size > _EXHAUSTIVE_LIMIT:
            raise ValueError(
                f"exhaustive search needs N^n <= {_EXHAUSTIVE_LIMIT}, got {size}")
        for bits in range(2 ** (size - 1)):
            consider(_tensor_from_bits(bits, size, shape))
    elif strategy is SearchStrategy.RANDOM_PM1:
        rng = np.random.default_rng(seed)
        for _ in range(max(1, budget)):
            consider(rng.integers(0, 2, size=shape) * 2.0 - 1.0)
    else:  # LOCAL_FLIP
        rng = np.random.default_rng(seed)
        current = rng.integers(0, 2, size=shape) * 2.0 - 1.0
        consider(current)
        assert best is not None
        evals = 1
        improved = True
        while improved and evals < budget:
            improved = False
            for flat_index in range(size):
                if evals >= budget:
                    break
                trial = current.copy()
                trial.flat[flat_index] *= -1.0
                prev_ratio = best[0].ratio
                consider(trial)
                evals += 1
                if best[0].ratio > prev_ratio:
                    current = trial
                    improved = True
    assert best is not None
    report, form = best
    if field is ScalarField.REAL:
        bound = real_recursive(n).value.to_float()
    else:
        bound = complex_recursive(n).value.to_float()
    if report.ratio > bound * (1 + 1e-9):
        raise AssertionError(
            f"search found ratio {report.ratio} above the upper bound {bound} "
            f"for n={n}; soundness bug")
    return report, form


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------


def form_to_json(form: MultilinearForm) -> dict:
    """{n, N, field, coefficients}: flat row-major; [re, im] pairs if complex."""
    flat = form.coefficients.ravel()
    if form.field is ScalarField.COMPLEX:
        coeffs = [[float(z.real), float(z.imag)] for z in flat]
    else:
        coeffs = [float(x) for x in flat]
    return {"n": form.n, "N": form.N, "field": form.field.value,
            "coefficients": coeffs}


def form_from_json(doc: dict) -> MultilinearForm:
    try:
        n = int(doc["n"])
        N = int(doc["N"])
        field = ScalarField(doc["field"])
        raw = doc["coefficients"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed form document: {exc}") from exc
    if len(raw) != N**n:
        raise ValueError(
            f"expected {N**n} coefficients for n={n}, N={N}, got {len(raw)}")
    if field is ScalarField.COMPLEX:
        values = [complex(pair[0], pair[1]) for pair in raw]
        coeffs = np.array(values, dtype=np.complex128).reshape((N,) * n)
    else:
        coeffs = np.array([float(x) for x in raw]).reshape((N,) * n)
    return MultilinearForm(n, N, field, coeffs)


def load_form(path: str) -> MultilinearForm:
    with open(path, "r", encoding="utf-8") as fh:
        return form_from_json(json.load(fh))


def report_to_json(report: RatioReport) -> dict:
    # real witnesses serialize as floats, complex ones as [re, im] pairs,
    # matching the coefficient convention
    witness = []
    for vec in report.witness:
        if any(isinstance(z, complex) for z in vec):
            witness.append([[complex(z).real, complex(z).imag] for z in vec])
        else:
            witness.append([float(z) for z in vec])
    return {
        "mixed_norm": report.mixed_norm,
        "sup_norm": report.sup_norm,
        "ratio": report.ratio,
        "witness": witness,
        "certified": report.certified.value,
    }
