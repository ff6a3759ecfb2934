"""Partial transpose over a single tensor factor, and negativity."""

from __future__ import annotations

import numpy as np

from . import linalg
from .errors import ValidationError
from .states import DensityMatrix


def transpose_subsystem(matrix, dims, subsystem: int) -> np.ndarray:
    """Transpose the bra/ket indices of one factor by pure index permutation.

    No arithmetic is performed, so the operation is exact and involutive.
    """
    dims = tuple(int(d) for d in dims)
    n = len(dims)
    if not 0 <= subsystem < n:
        raise ValidationError(
            f"subsystem index {subsystem} out of range for {n} factors"
        )
    m = linalg.as_square_matrix(matrix)
    d = int(np.prod(dims))
    if m.shape[0] != d:
        raise ValidationError(
            f"matrix dimension {m.shape[0]} does not match product of dims {dims}"
        )
    tensor = m.reshape(dims + dims)
    axes = list(range(2 * n))
    axes[subsystem], axes[n + subsystem] = axes[n + subsystem], axes[subsystem]
    return np.ascontiguousarray(tensor.transpose(axes).reshape(d, d))


def partial_transpose(state: DensityMatrix, subsystem: int) -> np.ndarray:
    """Partial transpose of a state; returned as a plain matrix since it may
    fail positive semidefiniteness."""
    return transpose_subsystem(state.matrix, state.dims, subsystem)


def negativity(state: DensityMatrix, subsystem: int, tol: float = linalg.DEFAULT_PSD_TOL) -> float:
    """Sum of |negative eigenvalues| of the partial transpose; zero iff PPT
    within tolerance."""
    eigs = linalg.hermitian_eigenvalues(partial_transpose(state, subsystem))
    scale = max(1.0, float(np.max(np.abs(eigs))))
    negative = eigs[eigs < -tol * scale]
    if negative.size == 0:
        return 0.0
    return float(-negative.sum())
