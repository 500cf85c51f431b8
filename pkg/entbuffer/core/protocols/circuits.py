"""Density-matrix oracle for 2-to-1 bilocal Clifford protocols.

Qubit 0 on each side holds the stored (Werner) pair and is kept; qubit 1 holds the
fresh pair and is measured in the computational basis. One side applies C^T and
the other C^dagger; success is declared when both measured qubits agree.
"""
import itertools
import logging
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from entbuffer.core.errors import ProtocolDegenerateError
from entbuffer.core.protocols.catalogue import NONTRIVIAL_PROTOCOLS, catalogue_jump
from entbuffer.core.protocols.jumps import RationalJump
from entbuffer.core.states import BellDiagonalState, WernerState, bell_weights, to_density_matrix

logger = logging.getLogger(__name__)

UNITARY_TOL = 1e-10
FIT_TOL = 1e-10

ANCHOR_FIDELITIES = (0.25, 0.625, 1.0)
HELD_OUT_FIDELITIES = (0.3, 0.45, 0.55, 0.8, 0.95)

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)
_I2 = np.eye(2, dtype=complex)
# control = qubit 0 (most significant), target = qubit 1
_CNOT_01 = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
_CNOT_10 = np.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex)

# (A0, B0, A1, B1) <-> (A0, A1, B0, B1); the swap of the middle two qubits is its own inverse
_PAIR_TO_SIDE = (0, 2, 1, 3, 4, 6, 5, 7)

# measured pair (A1, B1) in |00> or |11>
_EQUAL_PARITY = np.kron(np.eye(4), np.diag([1.0, 0.0, 0.0, 1.0]))

# X on B1 in the (A0, A1, B0, B1) ordering
_FLIP_B1 = np.kron(np.eye(8), np.array([[0, 1], [1, 0]], dtype=complex))


class Gate(BaseModel):
    """One gate of the local circuit C."""
    model_config = ConfigDict(frozen=True)

    name: Literal["H", "S", "CNOT"]
    qubits: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_qubits(self):
        arity = 2 if self.name == "CNOT" else 1
        if len(self.qubits) != arity:
            raise ValueError(f"{self.name} acts on {arity} qubit(s), got {self.qubits}")
        if any(q not in (0, 1) for q in self.qubits):
            raise ValueError(f"Qubit indices must be 0 or 1, got {self.qubits}")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError("CNOT control and target must differ")
        return self

    def matrix(self) -> np.ndarray:
        if self.name == "CNOT":
            return _CNOT_01 if self.qubits == (0, 1) else _CNOT_10
        single = _H if self.name == "H" else _S
        return np.kron(single, _I2) if self.qubits[0] == 0 else np.kron(_I2, single)


class CliffordCircuit2Pair(BaseModel):
    """Local Clifford circuit C on two qubits, gates listed in application order."""
    model_config = ConfigDict(frozen=True)

    gates: Tuple[Gate, ...] = Field(default_factory=tuple)
    # X on the measured qubit of the C^dagger side only, after the circuit
    flip_measured: bool = False

    @classmethod
    def from_spec(cls, *gates: Tuple) -> "CliffordCircuit2Pair":
        """Build from tuples such as ("H", 0) or ("CNOT", 0, 1)."""
        return cls(gates=tuple(Gate(name=g[0], qubits=tuple(g[1:])) for g in gates))

    def local_unitary(self) -> np.ndarray:
        u = np.eye(4, dtype=complex)
        for gate in self.gates:
            u = gate.matrix() @ u
        return u

    def bilocal_unitary(self) -> np.ndarray:
        """C^T (x) C^dagger on the ordering (A0, A1, B0, B1)."""
        c = self.local_unitary()
        u = np.kron(c.T, c.conj().T)
        if self.flip_measured:
            u = _FLIP_B1 @ u
        if not np.allclose(u @ u.conj().T, np.eye(16), rtol=0.0, atol=UNITARY_TOL):
            raise ProtocolDegenerateError("Assembled bilocal circuit is not unitary")
        return u

    def with_flipped_parity(self) -> "CliffordCircuit2Pair":
        """Same circuit with odd-parity success mapped onto the equal-parity convention.

        A Pauli inside C reaches both sides and cannot change the parity, so the
        flip is an X on one measured qubit.
        """
        return self.model_copy(update={"flip_measured": not self.flip_measured})


def dejmps_circuit() -> CliffordCircuit2Pair:
    """DEJMPS as a bilocal Clifford circuit.

    C = (HSH (x) HSH) . CNOT(0 -> 1). The C^T side then applies HSH = e^{i pi/4} Rx(pi/2)
    on both of its qubits followed by the CNOT, and the C^dagger side applies
    Rx(-pi/2) followed by the CNOT: the rotation-then-bilateral-CNOT recipe.
    """
    return CliffordCircuit2Pair.from_spec(
        ("CNOT", 0, 1),
        ("H", 0), ("S", 0), ("H", 0),
        ("H", 1), ("S", 1), ("H", 1),
    )


class BilocalCliffordResult(BaseModel):
    """Exact rational jump extracted from the density-matrix simulation."""
    model_config = ConfigDict(frozen=True)

    jump: RationalJump
    success_parity: Literal["equal"] = "equal"
    max_residual: float


def _reorder(rho16: np.ndarray) -> np.ndarray:
    return rho16.reshape([2] * 8).transpose(_PAIR_TO_SIDE).reshape(16, 16)


def _postselect(circ_unitary: np.ndarray, werner_f: float, new_matrix: np.ndarray) -> Tuple[float, float]:
    """(unnormalised output fidelity, success probability) for a stored Werner fidelity."""
    good = to_density_matrix(WernerState(f=werner_f).to_bell_diagonal()).matrix
    joint = _reorder(np.kron(good, new_matrix))
    evolved = _reorder(circ_unitary @ joint @ circ_unitary.conj().T)
    kept = _EQUAL_PARITY @ evolved @ _EQUAL_PARITY
    p = float(np.trace(kept).real)
    reduced = np.einsum("ijkj->ik", kept.reshape(4, 4, 4, 4))
    return float(bell_weights(reduced)[0]), p


def _fit_line(xs, ys) -> Tuple[float, float]:
    """Exact line through the first two anchors; the third anchor must agree."""
    system = np.array([[xs[0], 1.0], [xs[1], 1.0]])
    slope, intercept = np.linalg.solve(system, np.array(ys[:2]))
    if abs(slope * xs[2] + intercept - ys[2]) > FIT_TOL:
        raise ProtocolDegenerateError("Oracle output is not affine in the stored fidelity")
    return float(slope), float(intercept)


def apply_bilocal_clifford(circ: CliffordCircuit2Pair, good: WernerState,
                           new: BellDiagonalState) -> BilocalCliffordResult:
    """Run the protocol on rho_W (x) rho_new and recover (at, bt, c, d) exactly.

    Output fidelity times success probability and the success probability itself
    are affine in the Werner fidelity, so three anchor fidelities determine them;
    five held-out fidelities confirm the fit. ``good`` is the state the caller
    holds and only fixes where the result is reported; the fit spans [1/4, 1].
    """
    u = circ.bilocal_unitary()
    new_matrix = to_density_matrix(new).matrix
    anchors = [_postselect(u, f, new_matrix) for f in ANCHOR_FIDELITIES]
    numerators = [n for n, _ in anchors]
    probabilities = [p for _, p in anchors]
    if max(abs(p) for p in probabilities) < FIT_TOL:
        raise ProtocolDegenerateError("Protocol never succeeds: success probability is identically zero")

    at, bt = _fit_line(ANCHOR_FIDELITIES, numerators)
    c, d = _fit_line(ANCHOR_FIDELITIES, probabilities)
    jump = RationalJump(at=at, bt=bt, c=c, d=d)

    residual = 0.0
    for f in HELD_OUT_FIDELITIES + (good.f,):
        n, p = _postselect(u, f, new_matrix)
        residual = max(residual, abs(jump(f) - n / p), abs(jump.success_probability(f) - p))
    if residual >= FIT_TOL:
        raise ProtocolDegenerateError(f"Held-out residual {residual!r} exceeds {FIT_TOL}")
    logger.debug(f"Oracle fit {jump} with held-out residual {residual:.2e}")
    return BilocalCliffordResult(jump=jump, max_residual=residual)


def match_catalogue_row(jump: RationalJump, rho: BellDiagonalState, tol: float = FIT_TOL,
                        fidelities: Optional[List[float]] = None) -> Optional[Tuple[int, Tuple[int, int, int]]]:
    """Find a nontrivial catalogue row (under some lambda permutation) equal to ``jump``.

    Returns (row index, permutation) for the first match within ``tol`` on the
    fidelity grid, or None.
    """
    grid = fidelities if fidelities is not None else list(np.linspace(0.25, 1.0, 20))
    for order in itertools.permutations(range(3)):
        permuted = rho.permuted(order)
        for index in NONTRIVIAL_PROTOCOLS:
            row = catalogue_jump(index, permuted)
            deviation = max(
                max(abs(row(f) - jump(f)), abs(row.success_probability(f) - jump.success_probability(f)))
                for f in grid
            )
            if deviation < tol:
                return index, order
    return None
