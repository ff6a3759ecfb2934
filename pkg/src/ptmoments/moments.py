"""Partial-transpose moments, Hankel matrices, and the moment-based
entanglement criteria.

The k-th PT-moment of a state is Tr[(rho^T_s)^k] for the partial transpose
over subsystem s.  Moment-based detection works through the Hankel matrices
B_k with entries [B_k]_{ij} = p_{i+j+1}: every B_k is positive semidefinite
for separable states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ValidationError
from .minors import x_state_key_minors
from .ptranspose import partial_transpose
from .states import DensityMatrix, XStateParams

# Snap 1/p2 to an integer when within this distance, so the exact boundary
# cases p2 in {1, 1/2, 1/3, 1/4} do not flip under the floor function.
FLOOR_SNAP = 1e-12


@dataclass(frozen=True)
class MomentVector:
    """Moments p_1..p_kmax, with the subsystem they were transposed over
    (None for aggregated vectors) and the total Hilbert-space dimension."""

    values: tuple[float, ...]
    subsystem: int | None = None
    dim: int | None = None

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ValidationError("moment vector must contain at least p_1")
        if abs(values[0] - 1.0) > 1e-12:
            raise ValidationError(f"p_1 must equal 1 (trace), got {values[0]:.15g}")
        if self.dim is not None and len(values) >= 2:
            p2 = values[1]
            if not (1.0 / self.dim - 1e-10 <= p2 <= 1.0 + 1e-10):
                raise ValidationError(
                    f"p_2 = {p2:.15g} outside [1/{self.dim}, 1]"
                )
        object.__setattr__(self, "values", values)

    @property
    def kmax(self) -> int:
        return len(self.values)

    def p(self, k: int) -> float:
        """The moment p_k (one-based)."""
        if not 1 <= k <= self.kmax:
            raise ValidationError(f"moment p_{k} not available (kmax={self.kmax})")
        return self.values[k - 1]


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of one detection criterion.

    Sign convention: negative margin means the separability condition is
    violated, i.e. evidence of entanglement (NPT).
    """

    criterion: str
    violated: bool
    margin: float
    tolerance: float

    def __post_init__(self):
        if self.violated != (self.margin < -self.tolerance):
            raise ValidationError(
                "inconsistent verdict: violated must hold exactly when "
                "margin < -tolerance"
            )


def _default_kmax(state: DensityMatrix) -> int:
    return 6 if state.num_factors == 2 else 5


def pt_moments(state: DensityMatrix, subsystem: int, kmax: int | None = None) -> MomentVector:
    """Moments Tr[(rho^T_s)^k] for k = 1..kmax from the transpose's spectrum."""
    if kmax is None:
        kmax = _default_kmax(state)
    if kmax < 1:
        raise ValidationError(f"kmax must be >= 1, got {kmax}")
    eigs = linalg.hermitian_eigenvalues(partial_transpose(state, subsystem))
    values = tuple(float(np.sum(eigs ** k)) for k in range(1, kmax + 1))
    return MomentVector(values=values, subsystem=subsystem, dim=state.dim)


def hankel(moments: MomentVector, k: int) -> np.ndarray:
    """The (k+1) x (k+1) Hankel matrix with entries p_{i+j+1}, i, j = 0..k."""
    if k < 1:
        raise ValidationError(f"Hankel order must be >= 1, got {k}")
    needed = 2 * k + 1
    if moments.kmax < needed:
        raise ValidationError(
            f"Hankel order {k} needs {needed} moments, have {moments.kmax}"
        )
    vals = moments.values
    return np.array([[vals[i + j] for j in range(k + 1)] for i in range(k + 1)])


def pn_ppt_test(moments: MomentVector, n: int, tol: float = linalg.DEFAULT_PSD_TOL) -> CriterionVerdict:
    """Order-n moment criterion (n odd >= 3): separability requires the Hankel
    matrix B_{(n-1)/2} to be positive semidefinite.  Margin is its smallest
    eigenvalue."""
    if n < 3 or n % 2 == 0:
        raise ValidationError(f"criterion order must be odd and >= 3, got {n}")
    matrix = hankel(moments, (n - 1) // 2)
    eigs = np.linalg.eigvalsh(matrix)
    margin = float(eigs[0])
    tolerance = tol * max(1.0, float(np.max(np.abs(eigs))))
    return CriterionVerdict(
        criterion=f"p{n}-ppt",
        violated=margin < -tolerance,
        margin=margin,
        tolerance=tolerance,
    )


def p3_ppt_test(moments: MomentVector, tol: float = linalg.DEFAULT_PSD_TOL) -> CriterionVerdict:
    """Order-3 criterion in determinant form: separability requires p3 >= p2^2."""
    margin = moments.p(3) - moments.p(2) ** 2
    return CriterionVerdict(
        criterion="p3-ppt",
        violated=margin < -tol,
        margin=margin,
        tolerance=tol,
    )


def oppt_threshold(p2: float) -> float:
    """The optimal lower bound on p3 over separable states with the given p2.

    With a = floor(1/p2) and x = (a + sqrt(a*(p2*(a+1) - 1))) / (a*(a+1)),
    the bound is a*x^3 + (1 - a*x)^3.  It dominates p2^2, with equality
    exactly when 1/p2 is an integer.
    """
    p2 = float(p2)
    if 1.0 < p2 <= 1.0 + FLOOR_SNAP:
        p2 = 1.0
    if not 0.0 < p2 <= 1.0:
        raise ValidationError(f"p_2 must lie in (0, 1], got {p2:.15g}")
    inverse = 1.0 / p2
    nearest = round(inverse)
    a = int(nearest) if abs(inverse - nearest) <= FLOOR_SNAP else int(np.floor(inverse))
    x = (a + np.sqrt(a * (p2 * (a + 1) - 1.0))) / (a * (a + 1))
    return float(a * x ** 3 + (1.0 - a * x) ** 3)


def p3_oppt_test(moments: MomentVector, tol: float = linalg.DEFAULT_PSD_TOL) -> CriterionVerdict:
    """Optimal order-3 criterion: necessary and sufficient given (p1, p2, p3)."""
    margin = moments.p(3) - oppt_threshold(moments.p(2))
    return CriterionVerdict(
        criterion="p3-oppt",
        violated=margin < -tol,
        margin=margin,
        tolerance=tol,
    )


def tripartite_moments(state: DensityMatrix, kmax: int | None = None) -> MomentVector:
    """Geometric mean of the three single-subsystem PT-moments of a three-qubit
    state, using the signed real cube root so odd moments stay real.

    For permutation-symmetric states all three factors coincide, so the
    aggregate equals each single-subsystem moment vector exactly.
    """
    if state.num_factors != 3:
        raise ValidationError(
            f"tripartite moments need a 3-factor state, got {state.num_factors} factors"
        )
    if kmax is None:
        kmax = 5
    per_subsystem = [pt_moments(state, s, kmax) for s in range(3)]
    values = tuple(
        float(np.cbrt(np.prod([mv.values[i] for mv in per_subsystem])))
        for i in range(kmax)
    )
    return MomentVector(values=values, subsystem=None, dim=state.dim)


def x_state_moments_closed_form(params: XStateParams) -> MomentVector:
    """Moments p_1..p_6 of a two-qubit X-state as closed functions of the two
    key principal minors.

    The partially transposed X-state is block diagonal with 2x2 blocks of
    traces g = rho11+rho44 and h = rho22+rho33 and determinants equal to
    minor_14 and minor_23, so each p_k is a sum of two explicit power sums.
    The cubic minor terms in p_6 come from the k = 6 power-sum expansion
    t_6 = s^6 - 6 s^4 q + 9 s^2 q^2 - 2 q^3 of a 2x2 block with trace s and
    determinant q.
    """
    m14, m23 = x_state_key_minors(params)
    g = params.rho11 + params.rho44
    h = params.rho22 + params.rho33
    gh = g * h
    p2 = 1.0 - 2.0 * (m14 + m23) - 2.0 * gh
    p3 = 1.0 - 3.0 * (g * m14 + h * m23) - 3.0 * gh
    p4 = (
        1.0
        - 4.0 * (g ** 2 * m14 + h ** 2 * m23)
        - 4.0 * gh
        + 2.0 * (m14 ** 2 + m23 ** 2)
        + 2.0 * gh ** 2
    )
    p5 = (
        1.0
        - 5.0 * (g ** 3 * m14 + h ** 3 * m23)
        - 5.0 * gh
        + 5.0 * (g * m14 ** 2 + h * m23 ** 2)
        + 5.0 * gh ** 2
    )
    p6 = (
        1.0
        - 6.0 * (g ** 4 * m14 + h ** 4 * m23)
        - 6.0 * gh
        + 9.0 * (g ** 2 * m14 ** 2 + h ** 2 * m23 ** 2)
        + 9.0 * gh ** 2
        - 2.0 * (m14 ** 3 + m23 ** 3)
        - 2.0 * gh ** 3
    )
    return MomentVector(values=(1.0, p2, p3, p4, p5, p6), subsystem=0, dim=4)
