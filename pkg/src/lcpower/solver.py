"""Power iteration for the dominant eigenpair over the Levi-Civita field.

Pipeline: factor out the smallest valuation q0 so every entry becomes at
most finite, estimate the dominant eigenvalue mu1 of the constant-part
matrix, divide the matrix by mu1 so the target eigenvalue has constant
part 1, then iterate multiply-and-normalize until successive iterates and
Rayleigh quotients agree coefficient-wise within tolerance on the check
window (the weakly-Cauchy stopping rule).  The eigenvalue of the original
matrix is recovered as rho * mu1 * t^(q0).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np

from . import core
from .core import LCNumber, as_exponent
from .errors import (DegenerateInputError, DominanceUncertainError,
                     LostDominanceError)
from .linalg import (LCMatrix, LCVector, Polynomial, companion_matrix, matvec,
                     min_valuation, norm_l2, norm_max_info, pi_matrix, poly_eval,
                     rayleigh_quotient_from_action, scale_by_monomial)

__all__ = [
    "SolverConfig",
    "TraceStep",
    "IterationTrace",
    "EigenResult",
    "estimate_dominant_complex",
    "precondition",
    "power_step",
    "weakly_converged",
    "solve",
    "poly_dominant_root",
]

#: Reject preprocessing when the estimated |mu2| / |mu1| exceeds this; the
#: theory needs strict dominance and the numerics need a margin.
DOMINANCE_RATIO_MAX = 0.999


@dataclass
class SolverConfig:
    """Inputs of a solver run.

    ``truncation`` fixes the exponent window every iterate is held to;
    ``check_window`` (default: the truncation) and ``tol`` define the
    stopping rule; ``start`` is "ones", "random:<seed>" or an LCVector.
    """

    truncation: Fraction
    max_iters: int = 200
    tol: float = 1e-12
    check_window: Optional[Fraction] = None
    norm_kind: str = "l2"
    start: Union[str, LCVector] = "ones"
    complex_pi_iters: int = 500
    complex_pi_tol: float = 1e-12

    def __post_init__(self):
        self.truncation = as_exponent(self.truncation)
        if self.check_window is not None:
            self.check_window = as_exponent(self.check_window)
            if self.check_window > self.truncation:
                raise ValueError("check_window must not exceed the truncation")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.norm_kind not in ("l2", "max"):
            raise ValueError(f"unknown norm kind {self.norm_kind!r}")
        if isinstance(self.start, str) and self.start != "ones" \
                and not self.start.startswith("random:"):
            raise ValueError(f"unknown start vector choice {self.start!r}")

    @property
    def window(self) -> Fraction:
        return self.check_window if self.check_window is not None else self.truncation

    @property
    def seed(self) -> int:
        if isinstance(self.start, str) and self.start.startswith("random:"):
            return int(self.start.split(":", 1)[1])
        return 0


@dataclass(frozen=True)
class TraceStep:
    step: int
    vector: LCVector
    rho: LCNumber       #: Rayleigh quotient of the normalized matrix
    estimate: LCNumber  #: recovered units: rho * mu1 * t^(q0)


@dataclass
class IterationTrace:
    """Per-step history of a run, with derived error tables."""

    steps: List[TraceStep] = field(default_factory=list)

    def error_table(self, reference: Optional[LCNumber] = None,
                    max_columns: Optional[int] = None):
        """Per-exponent absolute coefficient errors of each step's estimate.

        Columns are the exponents in the final estimate's support (capped
        at ``max_columns``); errors are taken against ``reference`` when
        given, else against the final estimate.
        """
        target = reference if reference is not None else self.steps[-1].estimate
        cols = [q for q, _ in self.steps[-1].estimate.terms]
        if max_columns is not None:
            cols = cols[:max_columns]
        rows = [(s.step, [abs(s.estimate[q] - target[q]) for q in cols])
                for s in self.steps]
        return cols, rows


@dataclass(frozen=True)
class EigenResult:
    eigenvalue: LCNumber
    eigenvector: LCVector
    q0: Fraction
    mu1: complex
    iterations_used: int
    converged: bool
    pivot_tie_warning: bool
    residual: float            #: semi-norm of A v - nu v on residual_window
    residual_window: Fraction
    poly_residual: Optional[float] = None


# -- constant-part power iteration ---------------------------------------------


def _power_complex(B: np.ndarray, iters: int, tol: float, seed: int):
    """Classical power iteration.

    Returns (rayleigh, vector, converged, residual_history); the residuals
    ||B x_k - mu_k x_k|| are kept because their decay rate is the
    |mu2 / mu1| dominance diagnostic.
    """
    n = B.shape[0]
    rng = np.random.default_rng(seed)
    x = rng.uniform(-1.0, 1.0, n) + 1j * rng.uniform(-1.0, 1.0, n)
    x = x / np.linalg.norm(x)
    mu = 0j
    residuals = []
    for _ in range(iters):
        y = B @ x
        mu = np.vdot(x, y)
        ny = np.linalg.norm(y)
        if ny <= 1e-300:
            return 0j, x, False, residuals
        res = np.linalg.norm(y - mu * x)
        residuals.append(float(res))
        x = y / ny
        if res <= tol * max(abs(mu), 1e-30):
            return mu, x, True, residuals
    return mu, x, False, residuals


def _decay_ratio(residuals, scale: float) -> float:
    """Geometric-mean decay rate of the residuals above the noise floor.

    The residual is the component of the iterate off the dominant
    eigenvector, so its per-step decay estimates |mu2| / |mu1| without any
    explicit deflation (which is hopeless for the badly conditioned
    eigenbases of companion matrices)."""
    floor = 1e-13 * scale
    usable = [r for r in residuals if r > floor]
    if len(usable) < 2:
        return 0.0  # other components already below noise from a random start
    window = usable[-min(len(usable), 12):]
    steps = len(window) - 1
    if window[0] <= 0.0:
        return 0.0
    return (window[-1] / window[0]) ** (1.0 / steps)


def estimate_dominant_complex(B, iters: int, tol: float, seed: int = 0
                              ) -> Tuple[complex, float]:
    """Dominant eigenvalue of a complex matrix with a dominance diagnostic.

    Runs classical power iteration from a seeded random start and returns
    (mu1, estimated |mu2| / |mu1|).  Raises when the iteration does not
    converge, when the matrix is numerically a multiple of the identity
    (every eigenvalue tied), or when the estimated ratio exceeds the
    dominance margin.
    """
    B = np.asarray(B, dtype=complex)
    if not B.any():
        raise DegenerateInputError("zero constant-part matrix")
    mu, _v, ok, residuals = _power_complex(B, iters, tol, seed)
    if not ok or abs(mu) <= 1e-300:
        raise DominanceUncertainError(
            "power iteration on the constant-part matrix did not converge; "
            "no strictly dominant eigenvalue certified", estimate=complex(mu))
    n = B.shape[0]
    if n > 1:
        off = np.linalg.norm(B - mu * np.eye(n)) / abs(mu)
        if off <= 1e-8:
            raise DominanceUncertainError(
                "matrix is numerically a multiple of the identity; "
                "all eigenvalues tied", estimate=complex(mu), ratio=1.0)
    ratio = _decay_ratio(residuals, abs(mu))
    if ratio > DOMINANCE_RATIO_MAX:
        raise DominanceUncertainError(
            f"second eigenvalue too close in modulus (ratio {ratio:.6f})",
            estimate=complex(mu), ratio=ratio)
    return complex(mu), float(ratio)


# -- preprocessing ----------------------------------------------------------------


def precondition(A: LCMatrix, cfg: SolverConfig):
    """Scale to an at most finite matrix whose dominant eigenvalue has
    constant part 1.  Returns (A_norm, q0, mu1)."""
    if A.is_zero():
        raise DegenerateInputError("zero matrix")
    q0 = min_valuation(A)
    shifted = scale_by_monomial(A, -q0)
    mu1, _ratio = estimate_dominant_complex(
        pi_matrix(shifted), cfg.complex_pi_iters, cfg.complex_pi_tol, cfg.seed)
    if abs(mu1) == 0.0:
        raise DegenerateInputError("dominant constant-part eigenvalue is zero")
    inv_mu = core.constant(1.0 / mu1)
    a_norm = shifted.map(lambda e: e * inv_mu)
    return a_norm, q0, mu1


# -- the iteration -----------------------------------------------------------------


def _normalize_vector(y: LCVector, norm_kind: str, truncation) -> Tuple[LCVector, bool]:
    y = y.truncated(truncation)  # keeps the norm's validity window finite
    tie = False
    if norm_kind == "max":
        nrm, _idx, tie = norm_max_info(y)
    else:
        nrm = norm_l2(y)
    if nrm.is_zero or nrm.terms[0][0] > 0:
        raise LostDominanceError(
            "normalization lost its constant part; the start vector has "
            "numerically no component along the dominant eigenvector")
    scaled = y * core.invert(nrm)
    return scaled.retruncated(truncation), tie


def power_step(A_norm: LCMatrix, x: LCVector, norm_kind: str, truncation
               ) -> Tuple[LCVector, bool]:
    """One multiply-and-normalize step, re-truncated to the fixed window."""
    return _normalize_vector(matvec(A_norm, x), norm_kind, truncation)


def _phase_aligned(x: LCVector) -> Tuple[LCVector, bool]:
    """Divide by the unit-modulus phase of the pivot entry's constant
    coefficient, making it real positive.  The weak limit is only defined
    up to a phase absorbed by the real-valued norm.

    The pivot is the entry with the largest constant-coefficient modulus
    (machine floats suffice here; the full series order is irrelevant to
    a phase choice)."""
    mags = [abs(e[0]) for e in x.entries]
    best = max(mags)
    pivot = mags.index(best)
    tie = best > 0.0 and mags.count(best) > 1
    c0 = x[pivot][0]
    if c0 == 0j:
        return x, tie
    phase = c0 / abs(c0)
    if phase == 1.0 + 0j:
        return x, tie
    return x * core.constant(phase.conjugate()), tie


def weakly_converged(x_prev: LCVector, x_curr: LCVector,
                     rho_prev: LCNumber, rho_curr: LCNumber,
                     r, tol: float) -> bool:
    """Weakly-Cauchy test: after phase alignment, every entry difference
    and the Rayleigh-quotient difference stay below tol on exponents <= r."""
    r = as_exponent(r)
    a, _ = _phase_aligned(x_prev)
    b, _ = _phase_aligned(x_curr)
    for ea, eb in zip(a.entries, b.entries):
        if core.semi_norm(ea - eb, r) >= tol:
            return False
    return core.semi_norm(rho_curr - rho_prev, r) < tol


def _start_vector(cfg: SolverConfig, n: int) -> LCVector:
    start = cfg.start
    if isinstance(start, LCVector):
        if len(start) != n:
            raise DegenerateInputError(
                f"start vector has length {len(start)}, matrix is {n}x{n}")
        return start.retruncated(cfg.truncation)
    if start == "ones":
        entries = [core.constant(1.0)] * n
    else:
        rng = np.random.default_rng(cfg.seed)
        entries = []
        for _ in range(n):
            while True:  # uniform on the complex unit disk
                re, im = rng.uniform(-1.0, 1.0, 2)
                if re * re + im * im <= 1.0:
                    break
            entries.append(core.constant(complex(re, im)))
    return LCVector(entries).retruncated(cfg.truncation)


def _recover(rho: LCNumber, mu1: complex, q0: Fraction) -> LCNumber:
    # nu1 = rho * mu1 * t^(q0), composed exactly in this order.
    # A = t^(q0) * A_shifted, so the eigenvalue scales by t^(+q0).
    return core.shift_exponents(rho * core.constant(mu1), q0)


def _residual(A: LCMatrix, v: LCVector, nu: LCNumber, window):
    av = matvec(A, v)
    nv = v * nu
    diffs = [a_i - b_i for a_i, b_i in zip(av.entries, nv.entries)]
    rwin = window
    for d in diffs:
        rwin = core._bmin(rwin, d.valid_to)
    worst = max((core.semi_norm(d, rwin) for d in diffs), default=0.0)
    return worst, rwin


def solve(A: LCMatrix, cfg: SolverConfig) -> Tuple[EigenResult, IterationTrace]:
    """Dominant eigenpair of a diagonalizable matrix over the field.

    Diagonalizability and a start vector with a dominant component are the
    caller's responsibility (a random start makes the latter hold almost
    surely).  On non-convergence the full trace is still returned with
    ``converged=False``.

    The vector-convergence guarantee holds for real-series eigenvalues.
    When the dominant eigenvalue has a genuinely complex infinitesimal
    part, each step rotates the iterate by a unit-modulus series phase
    that the constant-coefficient alignment cannot remove: the Rayleigh
    quotient and the residual still settle, but the iterate comparison
    (and hence ``converged``) may stay false; judge such runs by
    ``residual``.
    """
    a_norm, q0, mu1 = precondition(A, cfg)
    rho_window = cfg.window
    tie_any = False

    x = _start_vector(cfg, A.n)
    # a pivot tie in the user-chosen start (e.g. all-ones) is not the
    # degeneracy the warning flag tracks, so it is not collected here
    x, _start_tie = _normalize_vector(x, cfg.norm_kind, cfg.truncation)
    # one matrix action per step, shared between the Rayleigh quotient of
    # the current iterate and the next normalization
    ax = matvec(a_norm, x)
    rho = core.retruncate(rayleigh_quotient_from_action(x, ax), cfg.truncation)
    trace = IterationTrace([TraceStep(0, x, rho, _recover(rho, mu1, q0))])

    converged = False
    k = 0
    for k in range(1, cfg.max_iters + 1):
        x_new, tie = _normalize_vector(ax, cfg.norm_kind, cfg.truncation)
        tie_any |= tie
        ax = matvec(a_norm, x_new)
        rho_new = core.retruncate(rayleigh_quotient_from_action(x_new, ax),
                                  cfg.truncation)
        trace.steps.append(TraceStep(k, x_new, rho_new, _recover(rho_new, mu1, q0)))
        done = weakly_converged(x, x_new, rho, rho_new, rho_window, cfg.tol)
        x, rho = x_new, rho_new
        if done:
            converged = True
            break

    x, tie = _phase_aligned(x)
    tie_any |= tie
    nu1 = _recover(rho, mu1, q0)
    residual, rwin = _residual(A, x, nu1, rho_window)
    result = EigenResult(
        eigenvalue=nu1, eigenvector=x, q0=q0, mu1=mu1,
        iterations_used=k, converged=converged, pivot_tie_warning=tie_any,
        residual=residual, residual_window=rwin)
    return result, trace


def _poly_eval_scale(P: Polynomial, x: LCNumber) -> float:
    # Horner on coefficient magnitudes: the size of the terms that cancel
    # when P(x) evaluates to ~0, hence the natural residual scale.
    xmag = max((abs(c) for _, c in x.terms), default=0.0)
    acc = 1.0
    for a in reversed(P.coeffs):
        amag = max((abs(c) for _, c in a.terms), default=0.0)
        acc = acc * xmag + amag
    return max(acc, 1.0)


def poly_dominant_root(P: Polynomial, cfg: SolverConfig
                       ) -> Tuple[EigenResult, IterationTrace]:
    """Dominant root of a monic polynomial with pairwise distinct roots,
    via power iteration on its companion matrix.

    The result additionally records the polynomial residual: the semi-norm
    of P(nu1) on the check window, divided by the magnitude of the terms
    the evaluation cancels (an absolute residual is meaningless when the
    coefficients span dozens of orders of magnitude)."""
    result, trace = solve(companion_matrix(P), cfg)
    value = poly_eval(P, result.eigenvalue)
    rwin = core._bmin(cfg.window, value.valid_to)
    pres = core.semi_norm(value, rwin) / _poly_eval_scale(P, result.eigenvalue)
    return dataclasses.replace(result, poly_residual=pres), trace
