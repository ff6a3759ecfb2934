"""Principal minors: enumeration, Sylvester positivity, and the X-state reductions.

Index sets use one-based row/column labels externally (1..4 for two qubits,
1..8 for three); internally they are zero-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import linalg
from .errors import NumericsError, ValidationError
from .ptranspose import partial_transpose
from .states import DensityMatrix, XStateParams, x_state

# Full enumeration of 2^dim - 1 minors is capped here; beyond it the cost is
# exponential and nothing in scope needs it.
MAX_ENUMERATION_DIM = 8

X_PATTERN_ATOL = 1e-12


@dataclass(frozen=True)
class MinorReport:
    """All principal minors of a Hermitian matrix, keyed by one-based labels."""

    minors: dict[tuple[int, ...], float]
    min_value: float
    min_index_set: tuple[int, ...]


def _normalize_index_set(labels, dim: int) -> tuple[int, ...]:
    try:
        idx = tuple(sorted(int(i) for i in labels))
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"index set {labels!r} is not a collection of integers") from exc
    if not idx:
        raise ValidationError("index set must be nonempty")
    if len(set(idx)) != len(idx):
        raise ValidationError(f"index set {idx} contains duplicates")
    if idx[0] < 1 or idx[-1] > dim:
        raise ValidationError(f"index set {idx} out of range 1..{dim}")
    return idx


def _real_minor(matrix: np.ndarray, zero_based: tuple[int, ...]) -> float:
    sub = matrix[np.ix_(zero_based, zero_based)]
    det = complex(np.linalg.det(sub))
    # Principal sub-matrices of Hermitian matrices are Hermitian, so any
    # imaginary residue is float noise.
    if abs(det.imag) > 1e-10:
        raise NumericsError(
            f"principal minor has non-negligible imaginary part {det.imag:.3e}"
        )
    return det.real


def principal_minor(matrix, labels) -> float:
    """Determinant of the sub-matrix keeping the given one-based rows/columns."""
    m = linalg.assert_hermitian(matrix)
    idx = _normalize_index_set(labels, m.shape[0])
    return _real_minor(m, tuple(i - 1 for i in idx))


def all_principal_minors(matrix) -> MinorReport:
    """All 2^dim - 1 principal minors, plus the minimum and where it occurs."""
    m = linalg.assert_hermitian(matrix)
    dim = m.shape[0]
    if dim > MAX_ENUMERATION_DIM:
        raise ValidationError(
            f"full minor enumeration is limited to dim <= {MAX_ENUMERATION_DIM}, got {dim}"
        )
    minors: dict[tuple[int, ...], float] = {}
    min_value = np.inf
    min_index_set: tuple[int, ...] = ()
    for size in range(1, dim + 1):
        for idx in combinations(range(dim), size):
            value = _real_minor(m, idx)
            labels = tuple(i + 1 for i in idx)
            minors[labels] = value
            if value < min_value:
                min_value = value
                min_index_set = labels
    return MinorReport(minors=minors, min_value=float(min_value), min_index_set=min_index_set)


def psd_via_minors(matrix, tol: float = linalg.DEFAULT_PSD_TOL) -> bool:
    """Sylvester test: true iff every principal minor is >= -tol."""
    if tol < 0:
        raise ValidationError(f"tolerance must be non-negative, got {tol}")
    return all_principal_minors(matrix).min_value >= -tol


def is_x_pattern(matrix, atol: float = X_PATTERN_ATOL) -> bool:
    """True iff nonzero entries sit only on the diagonal and anti-diagonal."""
    m = linalg.as_square_matrix(matrix)
    dim = m.shape[0]
    mask = np.ones((dim, dim), dtype=bool)
    np.fill_diagonal(mask, False)
    np.fill_diagonal(np.fliplr(mask), False)
    return bool(np.max(np.abs(m[mask]), initial=0.0) <= atol)


def x_state_key_minors(params: XStateParams) -> tuple[float, float]:
    """The two minors of the partially transposed X-state that decide entanglement.

    minor_14 = rho11*rho44 - |rho23|^2 and minor_23 = rho22*rho33 - |rho14|^2;
    the X-state is entangled iff either is negative.
    """
    minor_14 = params.rho11 * params.rho44 - abs(params.rho23) ** 2
    minor_23 = params.rho22 * params.rho33 - abs(params.rho14) ** 2
    return (minor_14, minor_23)


def x_state_minor_relations_check(params: XStateParams, atol: float = 1e-11) -> bool:
    """Verify the five reduction identities for an X-state's partial transpose:
    every order-3 and order-4 minor factors through the two key minors."""
    minor_14, minor_23 = x_state_key_minors(params)
    report = all_principal_minors(partial_transpose(x_state(params), 0))
    expected = {
        (1, 2, 3): params.rho11 * minor_23,
        (1, 2, 4): params.rho22 * minor_14,
        (1, 3, 4): params.rho33 * minor_14,
        (2, 3, 4): params.rho44 * minor_23,
        (1, 2, 3, 4): minor_14 * minor_23,
    }
    return all(abs(report.minors[k] - v) <= atol for k, v in expected.items())


def _require_three_qubit_x(state: DensityMatrix) -> None:
    if state.dims != (2, 2, 2):
        raise ValidationError(f"expected a three-qubit state, got dims {state.dims}")
    m = state.matrix
    for i in range(8):
        for j in range(8):
            if i != j and i + j != 7 and abs(m[i, j]) > X_PATTERN_ATOL:
                raise ValidationError(
                    f"state is not in three-qubit X form: entry ({i + 1},{j + 1}) "
                    f"= {m[i, j]:.3e} is off the diagonal/anti-diagonal"
                )


def three_qubit_x_minors(state: DensityMatrix) -> tuple[float, float, float, float]:
    """The four 2x2 minors of the partial transpose of a three-qubit X-state
    that can go negative: index pairs {1,8}, {2,7}, {3,6}, {4,5}."""
    _require_three_qubit_x(state)
    pt = partial_transpose(state, 0)
    return tuple(principal_minor(pt, (i, 9 - i)) for i in (1, 2, 3, 4))


def three_qubit_full_minor_identity_check(state: DensityMatrix, rtol: float = 1e-10) -> bool:
    """Check that the full 8x8 minor of the partial transpose equals the
    product of the four 2x2 minors."""
    minors = three_qubit_x_minors(state)
    pt = partial_transpose(state, 0)
    full = principal_minor(pt, range(1, 9))
    product = float(np.prod(minors))
    bound = max(rtol * max(abs(full), abs(product)), 1e-14)
    return bool(abs(full - product) <= bound)
