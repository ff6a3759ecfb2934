"""Constructors and validators for the density-matrix families under study.

Basis convention: product basis |i_1 ... i_n> is flattened row-major, so for
two qubits |i_A i_B> sits at index 2*i_A + i_B and for three qubits at
4*i_A + 2*i_B + i_C.  One-based labels 1..4 (1..8) used elsewhere for
principal minors are these indices plus one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ValidationError

TRACE_ATOL = 1e-12


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density matrix with its tensor-factor dimensions.

    Invariants enforced at construction: unit trace (1e-12), Hermiticity
    (1e-12), positive semidefiniteness (relative 1e-10), and the product of
    `dims` matching the matrix dimension.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        m = linalg.as_square_matrix(self.matrix).copy()
        dims = tuple(int(d) for d in self.dims)
        if any(d < 1 for d in dims):
            raise ValidationError(f"subsystem dimensions must be positive, got {dims}")
        if int(np.prod(dims)) != m.shape[0]:
            raise ValidationError(
                f"product of dims {dims} does not match matrix dimension {m.shape[0]}"
            )
        trace = complex(np.trace(m))
        if abs(trace - 1.0) > TRACE_ATOL:
            raise ValidationError(f"trace must be 1, got {trace:.15g}")
        linalg.assert_hermitian(m)
        if not linalg.is_psd(m):
            eigs = np.linalg.eigvalsh(m)
            raise ValidationError(
                f"matrix is not positive semidefinite: min eigenvalue {eigs[0]:.3e}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def num_factors(self) -> int:
        return len(self.dims)


@dataclass(frozen=True)
class XStateParams:
    """Parameters of a two-qubit X-state: four diagonals and two coherences.

    Nonzero entries sit on the diagonal and the anti-diagonal only; validity
    requires unit trace and the two positivity conditions
    rho22*rho33 >= |rho23|^2 and rho11*rho44 >= |rho14|^2.
    """

    rho11: float
    rho22: float
    rho33: float
    rho44: float
    rho14: complex = 0.0
    rho23: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "rho14", complex(self.rho14))
        object.__setattr__(self, "rho23", complex(self.rho23))
        diag = {
            "rho11": float(self.rho11),
            "rho22": float(self.rho22),
            "rho33": float(self.rho33),
            "rho44": float(self.rho44),
        }
        for name, value in diag.items():
            object.__setattr__(self, name, value)
            if value < -TRACE_ATOL:
                raise ValidationError(f"diagonal {name} must be non-negative, got {value}")
        total = sum(diag.values())
        if abs(total - 1.0) > TRACE_ATOL:
            raise ValidationError(
                f"unit trace violated: rho11+rho22+rho33+rho44 = {total:.15g}"
            )
        if self.rho22 * self.rho33 + TRACE_ATOL < abs(self.rho23) ** 2:
            raise ValidationError(
                "positivity violated: rho22*rho33 >= |rho23|^2 fails "
                f"({self.rho22 * self.rho33:.6g} < {abs(self.rho23) ** 2:.6g})"
            )
        if self.rho11 * self.rho44 + TRACE_ATOL < abs(self.rho14) ** 2:
            raise ValidationError(
                "positivity violated: rho11*rho44 >= |rho14|^2 fails "
                f"({self.rho11 * self.rho44:.6g} < {abs(self.rho14) ** 2:.6g})"
            )

    @property
    def diagonals(self) -> tuple[float, float, float, float]:
        return (self.rho11, self.rho22, self.rho33, self.rho44)


def _check_unit_interval(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValidationError(f"{name} must lie in [0, 1], got {value}")
    return value


def bell_phi_plus() -> DensityMatrix:
    """Projector onto (|00> + |11>)/sqrt(2)."""
    ket = np.zeros(4, dtype=complex)
    ket[0] = ket[3] = 1.0 / np.sqrt(2.0)
    return DensityMatrix(np.outer(ket, ket.conj()), (2, 2))


def x_state(params: XStateParams) -> DensityMatrix:
    """Build the 4x4 density matrix with the X sparsity pattern."""
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0], m[1, 1], m[2, 2], m[3, 3] = params.diagonals
    m[0, 3] = params.rho14
    m[3, 0] = np.conj(params.rho14)
    m[1, 2] = params.rho23
    m[2, 1] = np.conj(params.rho23)
    return DensityMatrix(m, (2, 2))


def ghz_white_noise(alpha: float) -> DensityMatrix:
    """Mixture alpha*I/8 + (1-alpha) |GHZ><GHZ| with |GHZ> = (|000>+|111>)/sqrt(2)."""
    alpha = _check_unit_interval("alpha", alpha)
    ket = np.zeros(8, dtype=complex)
    ket[0] = ket[7] = 1.0 / np.sqrt(2.0)
    m = alpha * np.eye(8, dtype=complex) / 8.0 + (1.0 - alpha) * np.outer(ket, ket.conj())
    return DensityMatrix(m, (2, 2, 2))


def w_white_noise(beta: float) -> DensityMatrix:
    """Mixture beta*I/8 + (1-beta) |W><W| with |W> = (|001>+|010>+|100>)/sqrt(3)."""
    beta = _check_unit_interval("beta", beta)
    ket = np.zeros(8, dtype=complex)
    ket[1] = ket[2] = ket[4] = 1.0 / np.sqrt(3.0)
    m = beta * np.eye(8, dtype=complex) / 8.0 + (1.0 - beta) * np.outer(ket, ket.conj())
    return DensityMatrix(m, (2, 2, 2))


def knoll_state(omega: float, eta: float) -> DensityMatrix:
    """Two-qubit X-state from amplitude-damping the first qubit of
    sqrt(omega)|00> + sqrt(1-omega)|11> with damping parameter eta.

    Equivalently the mixture (1-a)|b><b| + a|01><01| with a = eta*(1-omega)
    and |b> = sqrt(omega/(1-a))|00> + sqrt(1 - omega/(1-a))|11>.
    """
    omega = _check_unit_interval("omega", omega)
    eta = _check_unit_interval("eta", eta)
    params = XStateParams(
        rho11=omega,
        rho22=eta * (1.0 - omega),
        rho33=0.0,
        rho44=(1.0 - omega) * (1.0 - eta),
        rho14=np.sqrt(omega * (1.0 - omega) * (1.0 - eta)),
        rho23=0.0,
    )
    return x_state(params)


def random_density_matrix(dim: int, seed, dims: tuple[int, ...] | None = None) -> DensityMatrix:
    """Full-rank random state G G^dag / Tr[G G^dag] with complex Gaussian G.

    `dims` defaults to the all-qubit factorization when dim is a power of two,
    else a single factor.  Fixed seeds give bit-identical output.
    """
    dim = int(dim)
    if not 1 <= dim <= 8:
        raise ValidationError(f"dim must lie in 1..8, got {dim}")
    if dims is None:
        dims = {2: (2,), 4: (2, 2), 8: (2, 2, 2)}.get(dim, (dim,))
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    m /= np.trace(m).real
    return DensityMatrix(m, dims)


def random_x_state(seed) -> XStateParams:
    """Random X-state parameters: diagonals uniform on the simplex, coherences
    uniform on the discs allowed by the positivity conditions."""
    rng = np.random.default_rng(seed)
    d = rng.dirichlet(np.ones(4))
    rho14 = _random_in_disc(rng, np.sqrt(d[0] * d[3]))
    rho23 = _random_in_disc(rng, np.sqrt(d[1] * d[2]))
    return XStateParams(d[0], d[1], d[2], d[3], rho14, rho23)


def random_three_qubit_x_state(seed) -> DensityMatrix:
    """Random 8x8 X-state: nonzero entries on the diagonal and anti-diagonal only."""
    rng = np.random.default_rng(seed)
    d = rng.dirichlet(np.ones(8))
    m = np.diag(d.astype(complex))
    for i in range(4):
        j = 7 - i
        c = _random_in_disc(rng, np.sqrt(d[i] * d[j]))
        m[i, j] = c
        m[j, i] = np.conj(c)
    return DensityMatrix(m, (2, 2, 2))


def _random_in_disc(rng: np.random.Generator, radius: float) -> complex:
    r = radius * np.sqrt(rng.uniform())
    phase = np.exp(2j * np.pi * rng.uniform())
    return complex(r * phase)
