"""Shared test-corpus generators."""

from __future__ import annotations

import numpy as np

from ptmoments import DensityMatrix


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2


def random_psd(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return g @ g.conj().T / dim


def random_product_ket(rng: np.random.Generator, dims) -> np.ndarray:
    ket = np.ones(1, dtype=complex)
    for d in dims:
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        v /= np.linalg.norm(v)
        ket = np.kron(ket, v)
    return ket


def random_separable_state(rng: np.random.Generator, dims=(2, 2), max_terms: int = 8) -> DensityMatrix:
    """Convex mixture of at most `max_terms` random product pure states."""
    n = int(rng.integers(1, max_terms + 1))
    weights = rng.dirichlet(np.ones(n))
    dim = int(np.prod(dims))
    m = np.zeros((dim, dim), dtype=complex)
    for w in weights:
        ket = random_product_ket(rng, dims)
        m += w * np.outer(ket, ket.conj())
    return DensityMatrix(m, tuple(dims))


def batched_ginibre(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Stack of `count` random density matrices, shape (count, dim, dim)."""
    g = rng.standard_normal((count, dim, dim)) + 1j * rng.standard_normal((count, dim, dim))
    rho = g @ np.conj(np.swapaxes(g, -2, -1))
    tr = np.trace(rho, axis1=-2, axis2=-1).real
    return rho / tr[:, None, None]


def batched_partial_transpose_first(rho: np.ndarray, dims) -> np.ndarray:
    """Partial transpose over the first factor for a (count, d, d) stack."""
    dims = tuple(dims)
    n = len(dims)
    count, d = rho.shape[0], rho.shape[1]
    tensor = rho.reshape((count,) + dims + dims)
    axes = [0] + list(range(1, 2 * n + 1))
    axes[1], axes[1 + n] = axes[1 + n], axes[1]
    return tensor.transpose(axes).reshape(count, d, d)
