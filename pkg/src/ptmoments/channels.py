"""Quantum channels and entanglement measures for the noisy-evolution analysis:
amplitude damping, the composite damping channel of the experimental mixture
family, Wootters concurrence, and the entanglement-breaking threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import NumericsError, ValidationError
from .minors import is_x_pattern
from .states import DensityMatrix

COMPLETENESS_ATOL = 1e-11

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SPIN_FLIP = np.kron(_SIGMA_Y, _SIGMA_Y)


@dataclass(frozen=True)
class KrausChannel:
    """A completely positive trace-preserving map given by Kraus operators.

    Trace preservation (sum of K_i^dag K_i equal to the identity) is enforced
    at construction within 1e-11.
    """

    operators: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(linalg.as_square_matrix(op).copy() for op in self.operators)
        if not ops:
            raise ValidationError("a channel needs at least one Kraus operator")
        dim = ops[0].shape[0]
        if any(op.shape[0] != dim for op in ops):
            raise ValidationError("all Kraus operators must share one dimension")
        total = sum(op.conj().T @ op for op in ops)
        defect = float(np.max(np.abs(total - np.eye(dim))))
        if defect > COMPLETENESS_ATOL:
            raise ValidationError(
                f"Kraus operators are not trace preserving: "
                f"|sum K^dag K - I| = {defect:.3e}"
            )
        for op in ops:
            op.setflags(write=False)
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]


def _check_range(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValidationError(f"{name} must lie in [0, 1], got {value}")
    return value


def amplitude_damping(gamma: float) -> KrausChannel:
    """Single-qubit amplitude damping: |1> decays to |0> with probability gamma.

    Kraus operators:

        K0 = [[1, 0], [0, sqrt(1-gamma)]]
        K1 = [[0, sqrt(gamma)], [0, 0]]
    """
    gamma = _check_range("gamma", gamma)
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - gamma)]], dtype=complex)
    k1 = np.array([[0.0, np.sqrt(gamma)], [0.0, 0.0]], dtype=complex)
    return KrausChannel((k0, k1))


def composite_damping_kraus(omega: float, eta: float, gamma: float) -> KrausChannel:
    """Four-operator channel combining the mixture-preparation map of the
    damped-pure-state family with a subsequent amplitude damping of strength
    gamma; omega and eta are the preparation parameters.

    The operators are

        K1 = diag( sqrt((omega + gamma*eta*(1-omega)) / (omega + eta*(1-omega))),
                   sqrt(omega*(1-gamma) / (omega + gamma*eta*(1-omega))) )
        K2 = sqrt(eta*(1-gamma)*(1-omega) / (omega + eta*(1-omega)))   at (2,1)
        K3 = sqrt(gamma)                                               at (1,2)
        K4 = sqrt(eta*gamma*(1-gamma)*(1-omega) / (omega + gamma*eta*(1-omega)))
                                                                       at (2,2)

    Completeness holds algebraically for all admissible parameters and is
    re-verified at construction.  Operators that vanish identically (K3 and
    K4 at gamma = 0) are dropped.
    """
    omega = _check_range("omega", omega)
    eta = _check_range("eta", eta)
    gamma = _check_range("gamma", gamma)
    denom_prep = omega + eta * (1.0 - omega)
    denom_damped = omega + gamma * eta * (1.0 - omega)
    if denom_prep == 0.0 or denom_damped == 0.0:
        raise ValidationError(
            "degenerate denominator: omega + eta*(1-omega) and "
            "omega + gamma*eta*(1-omega) must both be nonzero "
            f"(omega={omega}, eta={eta}, gamma={gamma})"
        )
    k1 = np.diag(
        [
            np.sqrt(denom_damped / denom_prep),
            np.sqrt(omega * (1.0 - gamma) / denom_damped),
        ]
    ).astype(complex)
    k2 = np.zeros((2, 2), dtype=complex)
    k2[1, 0] = np.sqrt(eta * (1.0 - gamma) * (1.0 - omega) / denom_prep)
    k3 = np.zeros((2, 2), dtype=complex)
    k3[0, 1] = np.sqrt(gamma)
    k4 = np.zeros((2, 2), dtype=complex)
    k4[1, 1] = np.sqrt(eta * gamma * (1.0 - gamma) * (1.0 - omega) / denom_damped)
    operators = tuple(op for op in (k1, k2, k3, k4) if np.count_nonzero(op))
    return KrausChannel(operators)


def apply_channel(state: DensityMatrix, channel: KrausChannel, subsystem: int) -> DensityMatrix:
    """Apply a channel to one tensor factor: sum_i (I x K_i x I) rho (...)^dag."""
    if not 0 <= subsystem < state.num_factors:
        raise ValidationError(
            f"subsystem index {subsystem} out of range for {state.num_factors} factors"
        )
    if channel.dim != state.dims[subsystem]:
        raise ValidationError(
            f"channel dimension {channel.dim} does not match factor dimension "
            f"{state.dims[subsystem]}"
        )
    before = int(np.prod(state.dims[:subsystem], initial=1))
    after = int(np.prod(state.dims[subsystem + 1 :], initial=1))
    out = np.zeros_like(state.matrix)
    for op in channel.operators:
        full = np.kron(np.kron(np.eye(before), op), np.eye(after))
        out = out + full @ state.matrix @ full.conj().T
    return DensityMatrix(out, state.dims)


def _x_closed_form_concurrence(m: np.ndarray) -> float:
    first = abs(m[0, 3]) - np.sqrt(max(m[1, 1].real * m[2, 2].real, 0.0))
    second = abs(m[1, 2]) - np.sqrt(max(m[0, 0].real * m[3, 3].real, 0.0))
    return 2.0 * max(0.0, first, second)


def concurrence(state: DensityMatrix) -> float:
    """Wootters concurrence of a two-qubit state, in [0, 1].

    Computed from the spin-flipped spectrum: with rho~ = (Y x Y) rho* (Y x Y),
    the concurrence is max(0, l1 - l2 - l3 - l4) where l_i are the square roots
    of the eigenvalues of rho rho~ in decreasing order.  Those roots equal the
    singular values of sqrt(rho) (Y x Y) conj(sqrt(rho)), which is how they are
    evaluated; the SVD keeps the near-zero roots accurate where a non-symmetric
    eigensolver on rho rho~ loses half the digits.  For X-patterned input the
    closed form 2*max(0, |rho14| - sqrt(rho22*rho33), |rho23| -
    sqrt(rho11*rho44)) is evaluated as well and must agree within 1e-10.
    """
    if state.dims != (2, 2):
        raise ValidationError(f"concurrence needs a two-qubit state, got dims {state.dims}")
    m = state.matrix
    eigs, vecs = np.linalg.eigh(m)
    if eigs.min() < -1e-12:
        raise NumericsError(
            f"state spectrum has a significantly negative value {eigs.min():.3e}"
        )
    sqrt_rho = (vecs * np.sqrt(np.clip(eigs, 0.0, None))) @ vecs.conj().T
    roots = np.linalg.svd(sqrt_rho @ _SPIN_FLIP @ np.conj(sqrt_rho), compute_uv=False)
    value = float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))
    if is_x_pattern(m):
        closed = _x_closed_form_concurrence(m)
        if abs(value - closed) > 1e-10:
            raise NumericsError(
                f"concurrence cross-check failed: spin-flip {value:.15g} vs "
                f"X closed form {closed:.15g}"
            )
    return value


def ebc_gamma_threshold(omega: float, eta: float) -> float:
    """Damping strength above which the evolved mixture family becomes
    separable (entanglement breaking), clamped to [0, 1].

    threshold = omega*(eta + omega*(1-eta)) /
                (eta^2*(1-omega)^2 + omega*(1-omega)*eta)
    """
    omega = float(omega)
    eta = float(eta)
    for name, value in (("omega", omega), ("eta", eta)):
        if not 0.0 < value < 1.0:
            raise ValidationError(f"{name} must lie in (0, 1), got {value}")
    denominator = eta ** 2 * (1.0 - omega) ** 2 + omega * (1.0 - omega) * eta
    if denominator == 0.0:
        raise ValidationError(
            f"threshold denominator vanishes at omega={omega}, eta={eta}"
        )
    value = omega * (eta + omega * (1.0 - eta)) / denominator
    return min(1.0, max(0.0, value))
