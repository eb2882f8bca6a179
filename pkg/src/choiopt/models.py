"""Built-in transformation models with closed-form targets and known optima.

Five qubit tasks are provided, each as a state family (for quadrature or
Monte-Carlo construction), a closed-form target operator, and the best known
fidelity with its channel where one is available:

  unot(N)       N symmetric copies of a qubit -> the orthogonal qubit
  cloner(N)     one qubit -> N symmetric approximate copies
  entangler_a   |psi> -> normalized (|psi>|0> + |0>|psi>)
  entangler_b   |psi> -> (|psi>|psi_perp> + |psi_perp>|psi>)/sqrt(2)
  shifter(a)    |psi(theta, phi)> -> |psi(theta + a, phi)>
  identity      |psi> -> |psi>  (the shifter at a = 0)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import linalg
from .channels import ChoiOperator
from .errors import InvalidSpecError, OutOfRangeError
from .targets import StateFamily, TargetOperator

MODEL_KINDS = ("unot", "cloner", "entangler_a", "entangler_b", "shifter", "identity")

# Threshold shift angle above which damping beats the identity channel.
ALPHA_THRESHOLD = math.atan(8.0 / (3.0 * math.pi))

PSI_PLUS = np.array([0.0, 1.0, 1.0, 0.0], dtype=np.complex128) / np.sqrt(2.0)
KET_00 = np.array([1.0, 0.0, 0.0, 0.0], dtype=np.complex128)

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)


@dataclass(frozen=True)
class ModelSpec:
    """One of the built-in models, with its parameters."""

    kind: str
    copies: int = 1
    alpha: float = 0.0

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise InvalidSpecError(f"unknown model kind {self.kind!r}")
        if self.kind in ("unot", "cloner") and self.copies < 1:
            raise InvalidSpecError("copies must be >= 1")
        if self.kind == "shifter" and not 0.0 <= self.alpha <= math.pi:
            raise OutOfRangeError(f"alpha {self.alpha} outside [0, pi]")

    @property
    def dims(self) -> tuple[int, int]:
        if self.kind == "unot":
            return (self.copies + 1, 2)
        if self.kind == "cloner":
            return (2, self.copies + 1)
        if self.kind in ("entangler_a", "entangler_b"):
            return (2, 4)
        return (2, 2)


def parse_model(name: str, copies: int = 1, alpha: float = 0.0) -> ModelSpec:
    """Build a ModelSpec from a CLI-style name ('entangler-a' etc.)."""
    return ModelSpec(name.replace("-", "_"), copies=copies, alpha=alpha)


def bloch_state(theta, phi) -> np.ndarray:
    """Qubit cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>; broadcasts over angles."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return np.stack(
        [np.cos(theta / 2) * np.ones_like(phi), np.exp(1j * phi) * np.sin(theta / 2)],
        axis=-1,
    )


def orthogonal_state(theta, phi) -> np.ndarray:
    """The qubit orthogonal to bloch_state: sin(theta/2)|0> - e^{i phi} cos(theta/2)|1>."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    return np.stack(
        [np.sin(theta / 2) * np.ones_like(phi), -np.exp(1j * phi) * np.cos(theta / 2)],
        axis=-1,
    )


def symmetric_state(n_qubits: int, theta, phi) -> np.ndarray:
    """N identical qubits in the totally symmetric basis.

    Basis index j holds the symmetric state with N-j qubits in |0>; the
    amplitude there is sqrt(C(N, j)) e^{i j phi} cos^{N-j}(theta/2)
    sin^j(theta/2).  Unit norm for every (theta, phi) by the binomial theorem.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    cos_half, sin_half = np.cos(theta / 2), np.sin(theta / 2)
    cols = [
        np.sqrt(math.comb(n_qubits, j))
        * np.exp(1j * j * phi)
        * cos_half ** (n_qubits - j)
        * sin_half**j
        for j in range(n_qubits + 1)
    ]
    return np.stack(cols, axis=-1)


def _entangler_a_output(theta, phi) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    num = np.sqrt(2.0) * c[..., None] * KET_00 + (np.exp(1j * phi) * s)[..., None] * PSI_PLUS
    return num / np.sqrt(1.0 + c**2)[..., None]


def _entangler_b_output(theta, phi) -> np.ndarray:
    a = bloch_state(theta, phi)
    b = orthogonal_state(theta, phi)
    pair = np.einsum("...i,...j->...ij", a, b) + np.einsum("...i,...j->...ij", b, a)
    return pair.reshape(pair.shape[:-2] + (4,)) / np.sqrt(2.0)


def model_family(spec: ModelSpec) -> StateFamily:
    """State family (input/output evaluator plus quadrature degree) for a model."""
    dim_in, dim_out = spec.dims
    n = spec.copies
    if spec.kind == "unot":
        ev = lambda t, p: (symmetric_state(n, t, p), orthogonal_state(t, p))
        degree = 2 * (n + 1)
    elif spec.kind == "cloner":
        ev = lambda t, p: (bloch_state(t, p), symmetric_state(n, t, p))
        degree = 2 * (n + 1)
    elif spec.kind == "entangler_a":
        # The output is rational in cos(theta): no finite trig degree exists,
        # but its harmonics decay geometrically, so the default node floor of
        # the quadrature already integrates it to rounding.
        ev = lambda t, p: (bloch_state(t, p), _entangler_a_output(t, p))
        degree = 4
    elif spec.kind == "entangler_b":
        ev = lambda t, p: (bloch_state(t, p), _entangler_b_output(t, p))
        degree = 6
    elif spec.kind == "shifter":
        alpha = spec.alpha
        # Evaluated literally at theta + alpha even past the pole; that is the
        # convention under which the closed-form target below is derived.
        ev = lambda t, p: (bloch_state(t, p), bloch_state(np.asarray(t, dtype=float) + alpha, p))
        degree = 4
    else:  # identity
        ev = lambda t, p: (bloch_state(t, p), bloch_state(t, p))
        degree = 4
    return StateFamily(dim_in, dim_out, ev, degree)


def _r_unot(n: int) -> np.ndarray:
    dim = (n + 1) * 2
    r = np.zeros((dim, dim), dtype=np.complex128)
    den = (n + 1) * (n + 2)

    def idx(k, q):  # symmetric index n-k, output-qubit index q
        return (n - k) * 2 + q

    for k in range(n + 1):
        r[idx(k, 0), idx(k, 0)] = (n - k + 1) / den
        r[idx(k, 1), idx(k, 1)] = (k + 1) / den
    for k in range(1, n + 1):
        c = math.sqrt(k * (n - k + 1)) / den
        r[idx(k, 0), idx(k - 1, 1)] = -c
        r[idx(k - 1, 1), idx(k, 0)] = -c
    return r


def _r_cloner(n: int) -> np.ndarray:
    dk = n + 1
    r = np.zeros((2 * dk, 2 * dk), dtype=np.complex128)
    den = (n + 1) * (n + 2)

    def idx(q, k):  # input-qubit index q, symmetric index n-k
        return q * dk + (n - k)

    for k in range(n + 1):
        r[idx(0, k), idx(0, k)] = (k + 1) / den
        r[idx(1, k), idx(1, k)] = (n - k + 1) / den
    for k in range(1, n + 1):
        c = math.sqrt(k * (n - k + 1)) / den
        r[idx(0, k), idx(1, k - 1)] = c
        r[idx(1, k - 1), idx(0, k)] = c
    return r


def _r_entangler_a() -> np.ndarray:
    ln2 = math.log(2.0)
    p0 = np.diag([1.0, 0.0]).astype(np.complex128)
    p1 = np.diag([0.0, 1.0]).astype(np.complex128)
    raise01 = np.array([[0, 1], [0, 0]], dtype=np.complex128)
    proj00 = np.outer(KET_00, KET_00.conj())
    proj_plus = np.outer(PSI_PLUS, PSI_PLUS.conj())
    cross = np.outer(KET_00, PSI_PLUS.conj())
    r = (
        (2 * ln2 - 1) * np.kron(p0, proj00)
        + (3 - 4 * ln2) * np.kron(p1, proj00)
        + (1.5 - 2 * ln2) * np.kron(p0, proj_plus)
        + (4 * ln2 - 2.5) * np.kron(p1, proj_plus)
        + math.sqrt(2) * (1.5 - 2 * ln2) * (np.kron(raise01, cross) + np.kron(raise01.T, cross.conj().T))
    )
    return r


def _r_entangler_b() -> np.ndarray:
    g = np.eye(4, dtype=np.complex128)
    for sigma in PAULI:
        g += np.kron(sigma, sigma) / 3.0
    return np.kron(np.eye(2), g) / 8.0


def _r_shifter(alpha: float) -> np.ndarray:
    ca, sa = math.cos(alpha), math.sin(alpha)
    r = np.diag(
        [
            0.25 + ca / 12 - math.pi * sa / 16,
            0.25 - ca / 12 + math.pi * sa / 16,
            0.25 - ca / 12 - math.pi * sa / 16,
            0.25 + ca / 12 + math.pi * sa / 16,
        ]
    ).astype(np.complex128)
    r[0, 3] = r[3, 0] = ca / 6.0
    return r


def analytic_r(spec: ModelSpec) -> TargetOperator:
    """Closed-form target operator; matches build_r_quadrature(model_family(...))."""
    dim_in, dim_out = spec.dims
    if spec.kind == "unot":
        m = _r_unot(spec.copies)
    elif spec.kind == "cloner":
        m = _r_cloner(spec.copies)
    elif spec.kind == "entangler_a":
        m = _r_entangler_a()
    elif spec.kind == "entangler_b":
        m = _r_entangler_b()
    elif spec.kind == "shifter":
        m = _r_shifter(spec.alpha)
    else:
        m = _r_shifter(0.0)
    return TargetOperator(dim_in, dim_out, m)


def damping_channel(beta: float) -> ChoiOperator:
    """Qubit damping channel: |0><0| -> cos^2(b)|0><0| + sin^2(b)|1><1|,
    coherences scaled by cos(b), |1><1| fixed.

    beta in [0, pi]; values above pi/2 give a negative coherence factor, which
    is still completely positive and is what the optimal shifter channel uses
    for shifts past pi/2.
    """
    if not 0.0 <= beta <= math.pi:
        raise OutOfRangeError(f"beta {beta} outside [0, pi]")
    c, s = math.cos(beta), math.sin(beta)
    m = np.zeros((4, 4), dtype=np.complex128)
    m[0, 0] = c * c
    m[1, 1] = s * s
    m[0, 3] = m[3, 0] = c
    m[3, 3] = 1.0
    return ChoiOperator(2, 2, m)


def damping_fidelity(alpha: float, beta: float) -> float:
    """Mean fidelity of damping_channel(beta) against the shift-by-alpha target:
    1/2 + cos(a)/6 (cos^2 b + 2 cos b) + pi/8 sin(a) sin^2 b."""
    return float(
        0.5
        + math.cos(alpha) / 6.0 * (math.cos(beta) ** 2 + 2.0 * math.cos(beta))
        + math.pi / 8.0 * math.sin(alpha) * math.sin(beta) ** 2
    )


@dataclass(frozen=True)
class ShifterOptimum:
    """Closed-form optimum of the damping ansatz for one shift angle."""

    alpha: float
    alpha0: float
    beta_opt: float
    fidelity: float
    fidelity_of_beta: Callable[[float], float]


def shifter_closed_forms(alpha: float) -> ShifterOptimum:
    """Optimal damping angle and fidelity for a shift by alpha.

    Below the threshold alpha0 = arctan(8/(3 pi)) the stationary damping angle
    is 0 (identity channel) and F = (1 + cos a)/2; above it the better root is
    cos(beta) = (3 pi/4 tan(a) - 1)^{-1}.  The formula is evaluated as
    written all the way to alpha = pi, where beta reaches pi and F = 2/3.
    """
    if not 0.0 <= alpha <= math.pi:
        raise OutOfRangeError(f"alpha {alpha} outside [0, pi]")
    if alpha <= ALPHA_THRESHOLD:
        beta = 0.0
        f = 0.5 * (1.0 + math.cos(alpha))
    else:
        cos_beta = 1.0 / (0.75 * math.pi * math.tan(alpha) - 1.0)
        beta = math.acos(min(1.0, max(-1.0, cos_beta)))
        f = damping_fidelity(alpha, beta)
    return ShifterOptimum(
        alpha=alpha,
        alpha0=ALPHA_THRESHOLD,
        beta_opt=beta,
        fidelity=f,
        fidelity_of_beta=lambda b: damping_fidelity(alpha, b),
    )


def entangler_a_state_fidelity(theta) -> np.ndarray:
    """Pointwise fidelity of the optimal entangling isometry:
    [sqrt(2) cos^2(t/2) + sin^2(t/2)]^2 / (1 + cos^2(t/2))."""
    theta = np.asarray(theta, dtype=float)
    c2 = np.cos(theta / 2) ** 2
    return (math.sqrt(2) * c2 + (1.0 - c2)) ** 2 / (1.0 + c2)


ENTANGLER_A_FIDELITY = 3.0 * math.sqrt(2.0) - 3.5 + (6.0 - 4.0 * math.sqrt(2.0)) * math.log(2.0)
ENTANGLER_A_MIN_FIDELITY = 4.0 * math.sqrt(2.0) * (math.sqrt(2.0) - 1.0) ** 2


def entangler_a_isometry() -> np.ndarray:
    """The optimal entangling isometry |0> -> |00>, |1> -> (|01>+|10>)/sqrt(2)."""
    v = np.zeros((4, 2), dtype=np.complex128)
    v[:, 0] = KET_00
    v[:, 1] = PSI_PLUS
    return v


def entangler_b_output_state() -> np.ndarray:
    """The constant optimal output (|00><00| + |Psi+><Psi+| + |11><11|)/3."""
    e11 = np.zeros(4, dtype=np.complex128)
    e11[3] = 1.0
    return (
        np.outer(KET_00, KET_00.conj())
        + np.outer(PSI_PLUS, PSI_PLUS.conj())
        + np.outer(e11, e11.conj())
    ) / 3.0


@dataclass(frozen=True)
class KnownOptimum:
    """Best known fidelity for a model, with the optimal channel when one is
    specified in closed form."""

    fidelity: float
    chi: ChoiOperator | None


def known_optimum(spec: ModelSpec) -> KnownOptimum:
    n = spec.copies
    if spec.kind == "unot":
        if n == 1:
            # chi = 2R here: twice the projector onto span{|01>,|10>,|Phi->}/3.
            chi = ChoiOperator(2, 2, 2.0 * analytic_r(spec).matrix)
        else:
            chi = None
        return KnownOptimum((n + 1) / (n + 2), chi)
    if spec.kind == "cloner":
        return KnownOptimum(2.0 / (n + 1), None)
    if spec.kind == "entangler_a":
        w = np.zeros(8, dtype=np.complex128)
        w[0:4] = KET_00  # |0> (x) |00>
        w[4:8] = PSI_PLUS  # |1> (x) |Psi+>
        return KnownOptimum(ENTANGLER_A_FIDELITY, ChoiOperator(2, 4, np.outer(w, w.conj())))
    if spec.kind == "entangler_b":
        chi = ChoiOperator(2, 4, linalg.kron(np.eye(2), entangler_b_output_state()))
        return KnownOptimum(1.0 / 3.0, chi)
    if spec.kind == "shifter":
        opt = shifter_closed_forms(spec.alpha)
        return KnownOptimum(opt.fidelity, damping_channel(opt.beta_opt))
    return KnownOptimum(1.0, damping_channel(0.0))  # identity
