"""Fixed-point iteration for the fidelity-optimal trace-preserving channel.

Maximizing Tr[chi R] over process matrices with Tr_K[chi] = 1_H leads to the
stationarity condition

    chi = Lambda^{-1} R chi R Lambda^{-1},
    Lambda = lambda (x) 1_K,   lambda = (Tr_K[R chi R])^{1/2},

with lambda fixed as the positive Hermitian root.  Iterating this update
preserves positivity and the trace constraint at every step; the multiplier
inverse is a pseudo-inverse so the update stays defined when lambda is
singular.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .channels import ChoiOperator, fidelity, maxmix_choi, require_valid_choi
from .errors import AllZeroError, DimensionMismatchError, InvalidSpecError, SingularLambdaError
from .targets import TargetOperator, fidelity_bound


@dataclass(frozen=True)
class SolverOptions:
    """Iteration controls.

    The loop stops when the fidelity change drops below fid_tol or the
    Frobenius change of chi drops below chi_tol, whichever fires first;
    fidelity may plateau while chi still drifts along a degenerate optimal
    manifold, so both deltas are monitored.  init is "maxmix", "random:SEED",
    or an explicit ChoiOperator.
    """

    max_iters: int = 10000
    fid_tol: float = 1e-12
    chi_tol: float = 1e-10
    pinv_cutoff: float = 1e-12
    init: str | ChoiOperator = "maxmix"

    def __post_init__(self):
        if self.max_iters < 1:
            raise InvalidSpecError("max_iters must be >= 1")
        for name in ("fid_tol", "chi_tol", "pinv_cutoff"):
            if getattr(self, name) <= 0:
                raise InvalidSpecError(f"{name} must be > 0")


@dataclass(frozen=True)
class SolverResult:
    chi: ChoiOperator
    fidelity: float
    bound: float
    iterations: int
    converged: bool
    fidelity_trace: tuple = field(repr=False)
    # Smallest gap between adjacent eigenvalues of the final multiplier; a
    # near-zero gap signals a degenerate optimum (the solution manifold may
    # then depend on the initialization even though the fidelity does not).
    lambda_gap: float = float("nan")


def random_choi(dim_in: int, dim_out: int, seed: int) -> ChoiOperator:
    """Random admissible process matrix: a Wishart sample rescaled to satisfy
    the trace constraint exactly."""
    rng = np.random.default_rng(seed)
    n = dim_in * dim_out
    w = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    raw = w @ w.conj().T
    lam = linalg.psd_sqrt(linalg.partial_trace(raw, dim_in, dim_out, keep="first"))
    scale = linalg.kron(linalg.reg_inverse(lam), np.eye(dim_out))
    return ChoiOperator(dim_in, dim_out, linalg.hermitian_part(scale @ raw @ scale))


def initial_choi(r: TargetOperator, init: str | ChoiOperator) -> ChoiOperator:
    if isinstance(init, ChoiOperator):
        if (init.dim_in, init.dim_out) != (r.dim_in, r.dim_out):
            raise DimensionMismatchError(
                f"init dims ({init.dim_in},{init.dim_out}) != target dims ({r.dim_in},{r.dim_out})"
            )
        return init
    if init == "maxmix":
        return maxmix_choi(r.dim_in, r.dim_out)
    if isinstance(init, str) and init.startswith("random:"):
        return random_choi(r.dim_in, r.dim_out, int(init.split(":", 1)[1]))
    raise InvalidSpecError(f"unknown init {init!r}")


def iterate_once(chi: ChoiOperator, r: TargetOperator, pinv_cutoff: float = 1e-12) -> ChoiOperator:
    """One update chi -> Lambda^{-1} (R chi R) Lambda^{-1}, re-Hermitized."""
    if (chi.dim_in, chi.dim_out) != (r.dim_in, r.dim_out):
        raise DimensionMismatchError(
            f"process dims ({chi.dim_in},{chi.dim_out}) != target dims ({r.dim_in},{r.dim_out})"
        )
    m = r.matrix @ chi.matrix @ r.matrix
    lam = linalg.psd_sqrt(linalg.partial_trace(m, r.dim_in, r.dim_out, keep="first"))
    try:
        lam_inv = linalg.reg_inverse(lam, pinv_cutoff)
    except AllZeroError as exc:
        raise SingularLambdaError("Tr_K[R chi R] vanished; cannot continue iterating") from exc
    sandwich = linalg.kron(lam_inv, np.eye(r.dim_out))
    return ChoiOperator(r.dim_in, r.dim_out, linalg.hermitian_part(sandwich @ m @ sandwich))


def _multiplier_gap(chi: ChoiOperator, r: TargetOperator) -> float:
    m = r.matrix @ chi.matrix @ r.matrix
    lam = linalg.psd_sqrt(linalg.partial_trace(m, r.dim_in, r.dim_out, keep="first"))
    w = np.linalg.eigvalsh(lam)
    if len(w) < 2:
        return float("inf")
    return float(np.diff(w).min())


def solve(r: TargetOperator, opts: SolverOptions | None = None) -> SolverResult:
    """Iterate the extremal update from the chosen start until a stopping
    criterion fires or max_iters is reached.

    Non-convergence is not an error: the result carries converged=False and
    the full fidelity trace.
    """
    opts = opts or SolverOptions()
    chi = initial_choi(r, opts.init)
    bound = fidelity_bound(r)
    f_prev = fidelity(chi, r)
    trace: list[float] = []
    converged = False
    iterations = 0
    for iterations in range(1, opts.max_iters + 1):
        new = iterate_once(chi, r, opts.pinv_cutoff)
        f = fidelity(new, r)
        trace.append(f)
        d_chi = float(np.linalg.norm(new.matrix - chi.matrix))
        d_f = abs(f - f_prev)
        chi, f_prev = new, f
        if d_f < opts.fid_tol or d_chi < opts.chi_tol:
            converged = True
            break
    require_valid_choi(chi)
    return SolverResult(
        chi=chi,
        fidelity=f_prev,
        bound=bound,
        iterations=iterations,
        converged=converged,
        fidelity_trace=tuple(trace),
        lambda_gap=_multiplier_gap(chi, r),
    )
