"""Jump functions, the bilocal Clifford catalogue, bounds and the circuit oracle."""
from entbuffer.core.protocols.jumps import JumpFunction, LinearJump, RationalJump
from entbuffer.core.protocols.catalogue import ProtocolId, best_protocol, catalogue_jump
from entbuffer.core.protocols.bounds import CliffordBounds, clifford_bounds, f_intersection, f_star

__all__ = [
    "JumpFunction",
    "LinearJump",
    "RationalJump",
    "ProtocolId",
    "best_protocol",
    "catalogue_jump",
    "CliffordBounds",
    "clifford_bounds",
    "f_intersection",
    "f_star",
]
