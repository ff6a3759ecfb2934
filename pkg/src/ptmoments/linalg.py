"""Dense complex linear algebra for small Hermitian matrices (dim <= 8 in practice).

Everything here is the ground-truth engine the closed-form identities are
checked against, so each operation carries its own internal consistency
assertions.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericsError, ValidationError

# Hermiticity of inputs is exact up to float noise; positivity decisions use a
# relative tolerance scaled by the spectral radius.
HERMITIAN_ATOL = 1e-12
DEFAULT_PSD_TOL = 1e-10


def as_square_matrix(matrix) -> np.ndarray:
    """Coerce to a square complex ndarray."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    return m


def hermiticity_defect(matrix) -> tuple[float, tuple[int, int]]:
    """Largest |m[i,j] - conj(m[j,i])| and the (i, j) achieving it."""
    m = as_square_matrix(matrix)
    dev = np.abs(m - m.conj().T)
    i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
    return float(dev[i, j]), (int(i), int(j))


def is_hermitian(matrix, atol: float = HERMITIAN_ATOL) -> bool:
    defect, _ = hermiticity_defect(matrix)
    return defect <= atol


def assert_hermitian(matrix, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Return the matrix, or raise naming the worst-violating entry pair."""
    m = as_square_matrix(matrix)
    defect, (i, j) = hermiticity_defect(m)
    if defect > atol:
        raise ValidationError(
            f"matrix is not Hermitian: |m[{i},{j}] - conj(m[{j},{i}])| = "
            f"{defect:.3e} exceeds {atol:.1e}"
        )
    return m


def hermitian_eigenvalues(matrix) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, ascending."""
    m = assert_hermitian(matrix)
    eigs = np.linalg.eigvalsh(m)
    trace = float(np.trace(m).real)
    if abs(float(eigs.sum()) - trace) > 1e-10 * max(1.0, abs(trace)):
        raise NumericsError(
            f"eigenvalue sum {eigs.sum():.15g} disagrees with trace {trace:.15g}"
        )
    return eigs


def determinant(matrix) -> complex:
    """Determinant via LU; for Hermitian input the imaginary part is float noise."""
    m = as_square_matrix(matrix)
    return complex(np.linalg.det(m))


def matrix_power_trace(matrix, k: int) -> float:
    """Tr[m^k] for Hermitian m, computed from the spectrum and cross-checked
    against repeated multiplication."""
    m = assert_hermitian(matrix)
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValidationError(f"power k must be a positive integer, got {k!r}")
    eigs = np.linalg.eigvalsh(m)
    via_spectrum = float(np.sum(eigs ** k))
    via_product = float(np.trace(np.linalg.matrix_power(m, int(k))).real)
    scale = max(1.0, float(np.max(np.abs(eigs)) ** k) * m.shape[0])
    if abs(via_spectrum - via_product) > 1e-11 * scale:
        raise NumericsError(
            f"power-trace cross-check failed for k={k}: "
            f"spectrum {via_spectrum:.15g} vs product {via_product:.15g}"
        )
    return via_spectrum


def is_psd(matrix, tol: float = DEFAULT_PSD_TOL) -> bool:
    """True iff the smallest eigenvalue is >= -tol * max(1, spectral radius)."""
    if tol < 0:
        raise ValidationError(f"tolerance must be non-negative, got {tol}")
    eigs = hermitian_eigenvalues(matrix)
    scale = max(1.0, float(np.max(np.abs(eigs))))
    return bool(eigs[0] >= -tol * scale)
