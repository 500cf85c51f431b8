"""Two-qubit state representations, depolarizing decay, twirling and entanglement tests.

Bell basis order is (phi+, psi+, psi-, phi-) everywhere; ``BELL_VECTORS`` is the
only place that order is written down.
"""
import logging
import math
from typing import Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from entbuffer.core.errors import DomainError

logger = logging.getLogger(__name__)

ALGEBRA_TOL = 1e-12
EIGEN_TOL = 1e-10

_SQRT_HALF = 1 / math.sqrt(2)

# Rows are Bell vectors in the computational basis {|00>, |01>, |10>, |11>}.
BELL_VECTORS = np.array(
    [
        [_SQRT_HALF, 0, 0, _SQRT_HALF],    # phi+
        [0, _SQRT_HALF, _SQRT_HALF, 0],    # psi+
        [0, _SQRT_HALF, -_SQRT_HALF, 0],   # psi-
        [_SQRT_HALF, 0, 0, -_SQRT_HALF],   # phi-
    ],
    dtype=complex,
)


class BellDiagonalState(BaseModel):
    """Mixture of the four Bell projectors.

    ``f`` is the weight on phi+ (the fidelity); ``l1``, ``l2``, ``l3`` are the
    weights on psi+, psi- and phi-.
    """
    model_config = ConfigDict(frozen=True)

    f: float = Field(..., ge=0.0, le=1.0)
    l1: float = Field(..., ge=0.0, le=1.0)
    l2: float = Field(..., ge=0.0, le=1.0)
    l3: float = Field(..., ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _check_normalized(self):
        total = self.f + self.l1 + self.l2 + self.l3
        if abs(total - 1.0) > ALGEBRA_TOL:
            raise ValueError(f"Bell-diagonal weights must sum to 1, got {total!r}")
        return self

    @classmethod
    def from_weights(cls, weights: Sequence[float]) -> "BellDiagonalState":
        """Build a state from a (f, l1, l2, l3) sequence."""
        f, l1, l2, l3 = (float(w) for w in weights)
        return cls(f=f, l1=l1, l2=l2, l3=l3)

    @property
    def weights(self) -> np.ndarray:
        return np.array([self.f, self.l1, self.l2, self.l3])

    @property
    def lambdas(self) -> Tuple[float, float, float]:
        return (self.l1, self.l2, self.l3)

    @property
    def lambda_min(self) -> float:
        return min(self.lambdas)

    @property
    def lambda_max(self) -> float:
        return max(self.lambdas)

    def permuted(self, order: Sequence[int]) -> "BellDiagonalState":
        """Reorder (l1, l2, l3); ``order`` holds zero-based indices into the lambdas."""
        lambdas = self.lambdas
        l1, l2, l3 = (lambdas[i] for i in order)
        return BellDiagonalState(f=self.f, l1=l1, l2=l2, l3=l3)


class WernerState(BaseModel):
    """Bell-diagonal state with equal non-target weights (1 - f)/3."""
    model_config = ConfigDict(frozen=True)

    f: float = Field(..., ge=0.25, le=1.0)

    def to_bell_diagonal(self) -> BellDiagonalState:
        rest = (1.0 - self.f) / 3.0
        # rest is computed once so the four weights sum to one to rounding
        return BellDiagonalState(f=self.f, l1=rest, l2=rest, l3=1.0 - self.f - 2 * rest)


def werner_state(f: float) -> BellDiagonalState:
    """Werner state of fidelity ``f`` in Bell-diagonal form."""
    return WernerState(f=f).to_bell_diagonal()


def check_density_matrix(matrix) -> np.ndarray:
    """Return ``matrix`` as a 4x4 complex array, or raise DomainError if it is not a state."""
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (4, 4):
        raise DomainError(f"Expected a 4x4 density matrix, got shape {m.shape}")
    if not np.allclose(m, m.conj().T, rtol=0.0, atol=ALGEBRA_TOL):
        raise DomainError("Density matrix is not Hermitian")
    trace = np.trace(m).real
    if abs(trace - 1.0) > ALGEBRA_TOL:
        raise DomainError(f"Density matrix trace must be 1, got {trace!r}")
    smallest = np.linalg.eigvalsh(m).min()
    if smallest < -EIGEN_TOL:
        raise DomainError(f"Density matrix is not positive semidefinite (eigenvalue {smallest!r})")
    return m


class DensityMatrix4(BaseModel):
    """Two-qubit density matrix over {|00>, |01>, |10>, |11>}."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def _check_matrix(cls, value):
        m = check_density_matrix(value)
        m.setflags(write=False)
        return m


def depolarize(f: float, dt: float, gamma: float) -> float:
    """Fidelity after depolarizing for ``dt`` at rate ``gamma``: e^{-gamma dt}(f - 1/4) + 1/4."""
    if dt < 0:
        raise DomainError(f"Elapsed time must be non-negative, got {dt!r}")
    if gamma < 0:
        raise DomainError(f"Decoherence rate must be non-negative, got {gamma!r}")
    return math.exp(-gamma * dt) * (f - 0.25) + 0.25


def to_density_matrix(state: BellDiagonalState) -> DensityMatrix4:
    """Expand a Bell-diagonal state in the computational basis."""
    vectors = BELL_VECTORS
    matrix = np.einsum("k,ki,kj->ij", state.weights, vectors, vectors.conj())
    return DensityMatrix4(matrix=matrix)


def bell_weights(matrix) -> np.ndarray:
    """Diagonal of ``matrix`` in the Bell basis, in BELL_VECTORS order."""
    m = matrix.matrix if isinstance(matrix, DensityMatrix4) else np.asarray(matrix, dtype=complex)
    vectors = BELL_VECTORS
    return np.einsum("ki,ij,kj->k", vectors.conj(), m, vectors).real


def fidelity(matrix) -> float:
    """Overlap <phi+|m|phi+>."""
    return float(bell_weights(matrix)[0])


def twirl(matrix) -> BellDiagonalState:
    """Project a state onto Bell-diagonal form, keeping the four Bell-basis populations."""
    m = matrix.matrix if isinstance(matrix, DensityMatrix4) else check_density_matrix(matrix)
    weights = bell_weights(m)
    # populations of a PSD matrix are non-negative up to rounding
    weights = np.where((weights < 0) & (weights > -EIGEN_TOL), 0.0, weights)
    return BellDiagonalState.from_weights(weights)


def twirl_to_werner(matrix) -> WernerState:
    """Full isotropic twirl: the Werner state with the same fidelity."""
    f = fidelity(matrix if isinstance(matrix, DensityMatrix4) else check_density_matrix(matrix))
    if f < 0.25 - ALGEBRA_TOL:
        raise DomainError(f"Werner form needs fidelity >= 1/4, got {f!r}")
    return WernerState(f=min(max(f, 0.25), 1.0))


def partial_transpose(matrix) -> np.ndarray:
    """Partial transpose on the second qubit."""
    m = matrix.matrix if isinstance(matrix, DensityMatrix4) else np.asarray(matrix, dtype=complex)
    return m.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def ppt_min_eigenvalue(state: BellDiagonalState) -> float:
    """Smallest eigenvalue of the partial transpose; negative iff entangled."""
    return float(np.linalg.eigvalsh(partial_transpose(to_density_matrix(state))).min())


def is_entangled(state: BellDiagonalState) -> bool:
    """A Bell-diagonal state is entangled iff one weight exceeds 1/2."""
    return max(state.f, state.l1, state.l2, state.l3) > 0.5


def random_bell_diagonal(rng: np.random.Generator, entangled: bool = True) -> BellDiagonalState:
    """Draw a Bell-diagonal state; with ``entangled`` the fidelity lies in (1/2, 1)."""
    if entangled:
        f = rng.uniform(0.5, 1.0)
        while f <= 0.5:
            f = rng.uniform(0.5, 1.0)
        lambdas = (1.0 - f) * rng.dirichlet((1.0, 1.0, 1.0))
        l1, l2 = float(lambdas[0]), float(lambdas[1])
        return BellDiagonalState(f=float(f), l1=l1, l2=l2, l3=max(1.0 - f - l1 - l2, 0.0))
    weights = rng.dirichlet((1.0, 1.0, 1.0, 1.0))
    f, l1, l2 = (float(w) for w in weights[:3])
    return BellDiagonalState(f=f, l1=l1, l2=l2, l3=max(1.0 - f - l1 - l2, 0.0))
