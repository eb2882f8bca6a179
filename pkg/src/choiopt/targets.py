"""Target operators for prescribed pure-state transformations.

The figure of merit for a channel is its mean fidelity over a family of
input/output state pairs indexed by Bloch angles (theta, phi) with the
uniform sphere measure sin(theta) dtheta dphi / 4pi.  That average is the
trace against a fixed positive operator

    R = integral  (psi_in psi_in†)^T  (x)  psi_out psi_out†,

so building R once reduces every fidelity evaluation to Tr[chi R].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import linalg
from .errors import DimensionMismatchError, InvalidChoiError, NormViolationError

NORM_TOL = 1e-12
# Floors chosen so the theta rule is converged to rounding for every built-in
# family (trigonometric integrands are resolved long before 32 nodes, and the
# entangler-A integrand, rational in cos(theta), decays geometrically).
MIN_THETA_NODES = 32
MIN_PHI_NODES = 8


@dataclass(frozen=True)
class StateFamily:
    """Parametrized pure-state transformation over the Bloch sphere.

    evaluator maps angles (theta in [0, pi], phi in [0, 2pi)) to a pair of
    unit-norm vectors (input of length dim_in, output of length dim_out).  It
    may broadcast over equal-shaped angle arrays; scalar-only evaluators are
    handled with a fallback loop.  trig_degree declares the maximum total
    trigonometric degree of the integrand entries and sizes the quadrature.
    """

    dim_in: int
    dim_out: int
    evaluator: Callable
    trig_degree: int


@dataclass(frozen=True)
class TargetOperator:
    """Positive unit-trace operator on input (x) output whose overlap with a
    process matrix is the mean fidelity."""

    dim_in: int
    dim_out: int
    matrix: np.ndarray
    lambda_max: float | None = None

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        n = self.dim_in * self.dim_out
        if m.shape != (n, n):
            raise DimensionMismatchError(
                f"target shape {m.shape} does not match dims ({self.dim_in},{self.dim_out})"
            )
        if np.abs(m - m.conj().T).max() > 1e-10:
            raise InvalidChoiError("target operator is not Hermitian within 1e-10")
        w = np.linalg.eigvalsh(linalg.hermitian_part(m))
        if w.min() < -1e-10:
            raise InvalidChoiError(f"target minimum eigenvalue {w.min():.3e} below -1e-10")
        if abs(np.trace(m).real - 1.0) > 1e-9:
            raise InvalidChoiError(f"target trace {np.trace(m).real:.12g} is not 1 within 1e-9")
        frozen = np.array(m)
        frozen.setflags(write=False)
        object.__setattr__(self, "matrix", frozen)
        if self.lambda_max is None:
            object.__setattr__(self, "lambda_max", float(w.max()))


def fidelity_bound(r: TargetOperator) -> float:
    """Upper bound dim_in * lambda_max(R) on the mean fidelity of any
    trace-preserving channel."""
    return r.dim_in * r.lambda_max


def evaluate_family(family: StateFamily, thetas, phis) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate the family at 1-D angle arrays, checking norms.

    Tries one vectorized call first; falls back to a per-sample loop for
    evaluators that only accept scalars.
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    n = len(thetas)
    want_in = (n, family.dim_in)
    want_out = (n, family.dim_out)
    pin = pout = None
    try:
        a, b = family.evaluator(thetas, phis)
        a = np.asarray(a, dtype=np.complex128)
        b = np.asarray(b, dtype=np.complex128)
        if a.shape == want_in and b.shape == want_out:
            pin, pout = a, b
    except Exception:
        pin = None
    if pin is None:
        pin = np.empty(want_in, dtype=np.complex128)
        pout = np.empty(want_out, dtype=np.complex128)
        for s in range(n):
            a, b = family.evaluator(float(thetas[s]), float(phis[s]))
            pin[s] = np.asarray(a, dtype=np.complex128).ravel()
            pout[s] = np.asarray(b, dtype=np.complex128).ravel()
    for name, arr in (("input", pin), ("output", pout)):
        dev = np.abs(np.linalg.norm(arr, axis=1) - 1.0).max()
        if dev > NORM_TOL:
            raise NormViolationError(f"{name} state norm deviates by {dev:.3e}")
    return pin, pout


def _integrand_rows(family: StateFamily, thetas, phis) -> np.ndarray:
    # Row s is v_s = conj(psi_in) (x) psi_out, so the integrand is v_s v_s†.
    pin, pout = evaluate_family(family, thetas, phis)
    v = np.einsum("si,sk->sik", pin.conj(), pout)
    return v.reshape(len(pin), family.dim_in * family.dim_out)


def default_theta_nodes(trig_degree: int) -> int:
    return max(trig_degree + 1, MIN_THETA_NODES)


def default_phi_nodes(trig_degree: int) -> int:
    return max(trig_degree + 2, MIN_PHI_NODES)


def build_r_quadrature(
    family: StateFamily,
    nodes_theta: int | None = None,
    nodes_phi: int | None = None,
) -> TargetOperator:
    """Target operator by product quadrature over the sphere.

    Gauss-Legendre nodes in theta carry the sin(theta) measure weight; the
    periodic phi average uses a uniform trapezoid, which is exact for
    harmonics below the point count.  Default node counts sit far above the
    declared degree so the result is converged to rounding; raising them
    further should not change the matrix (a useful plateau check).
    """
    nt = nodes_theta if nodes_theta is not None else default_theta_nodes(family.trig_degree)
    np_ = nodes_phi if nodes_phi is not None else default_phi_nodes(family.trig_degree)
    x, w = np.polynomial.legendre.leggauss(nt)
    thetas = (x + 1.0) * (np.pi / 2.0)
    # 1/(4pi) * [(pi/2) w] * sin(theta) * (2pi/np_)  ->  w sin(theta) pi/(4 np_)
    weights = w * np.sin(thetas) * (np.pi / (4.0 * np_))
    phis = 2.0 * np.pi * np.arange(np_) / np_
    tg, pg = np.meshgrid(thetas, phis, indexing="ij")
    wg = np.repeat(weights, np_)
    v = _integrand_rows(family, tg.ravel(), pg.ravel())
    m = np.einsum("s,sa,sb->ab", wg, v, v.conj())
    return TargetOperator(family.dim_in, family.dim_out, linalg.hermitian_part(m))


def build_r_montecarlo(family: StateFamily, samples: int, seed: int) -> TargetOperator:
    """Target operator as a seeded Monte-Carlo mean over uniform sphere samples.

    Sampling draws cos(theta) uniform on [-1, 1] and then phi uniform on
    [0, 2pi) from numpy's PCG64 stream, in that fixed order, so the estimate
    is reproducible per (seed, sample index).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    u = rng.uniform(-1.0, 1.0, samples)
    phis = rng.uniform(0.0, 2.0 * np.pi, samples)
    v = _integrand_rows(family, np.arccos(u), phis)
    m = np.einsum("sa,sb->ab", v, v.conj()) / samples
    return TargetOperator(family.dim_in, family.dim_out, linalg.hermitian_part(m))
