"""The seven distinct 2-to-1 bilocal Clifford protocols for a Werner/Bell-diagonal pair.

Rows 1-3 are stored with the positive denominator

    J_i(F) = ((3 F_BD - l_i) F + l_i) / ((4 F_BD + 4 l_i - 2) F + 2 - F_BD - l_i)

and the success probability equals that denominator divided by 3, so the rational
coefficients are the numerator and denominator scaled by 1/3.
"""
from typing import Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from entbuffer.core.protocols.jumps import RationalJump
from entbuffer.core.states import BellDiagonalState

NONTRIVIAL_PROTOCOLS = (1, 2, 3)


class ProtocolId(BaseModel):
    """Row of the protocol catalogue."""
    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=1, le=7)

    @property
    def is_trivial(self) -> bool:
        return self.index not in NONTRIVIAL_PROTOCOLS


def _index(protocol: Union[ProtocolId, int]) -> int:
    return protocol.index if isinstance(protocol, ProtocolId) else ProtocolId(index=protocol).index


def catalogue_jump(protocol: Union[ProtocolId, int], rho: BellDiagonalState) -> RationalJump:
    """Jump function and success probability of one catalogue row as a RationalJump."""
    index = _index(protocol)
    f_bd = rho.f
    if index in NONTRIVIAL_PROTOCOLS:
        lam = rho.lambdas[index - 1]
        return RationalJump(
            at=(3 * f_bd - lam) / 3,
            bt=lam / 3,
            c=(4 * f_bd + 4 * lam - 2) / 3,
            d=(2 - f_bd - lam) / 3,
        )
    if index in (4, 5, 6):
        p = f_bd + rho.lambdas[index - 4]
        return RationalJump(at=p, bt=0.0, c=0.0, d=p)
    # row 7: probabilistic replacement by the fresh link
    return RationalJump(at=2 * f_bd / 3, bt=f_bd / 3, c=2 / 3, d=1 / 3)


def evaluate_printed_row(protocol: Union[ProtocolId, int], rho: BellDiagonalState,
                         f: float) -> Tuple[float, float]:
    """(J, p) of a catalogue row, evaluated exactly as the table prints it."""
    index = _index(protocol)
    l1, l2, l3 = rho.lambdas
    f_bd = rho.f
    if index == 1:
        j = ((4 * l1 + 3 * l2 + 3 * l3 - 3) * f - l1) / ((4 * l2 + 4 * l3 - 2) * f - l2 - l3 - 1)
        p = 2 / 3 * (1 - 2 * l2 - 2 * l3) * f + (1 + l2 + l3) / 3
    elif index == 2:
        j = ((3 * l1 + 4 * l2 + 3 * l3 - 3) * f - l2) / ((4 * l1 + 4 * l3 - 2) * f - l1 - l3 - 1)
        p = 2 / 3 * (1 - 2 * l3 - 2 * l1) * f + (1 + l3 + l1) / 3
    elif index == 3:
        j = ((3 * l1 + 3 * l2 + 4 * l3 - 3) * f - l3) / ((4 * l1 + 4 * l2 - 2) * f - l1 - l2 - 1)
        p = 2 / 3 * (1 - 2 * l1 - 2 * l2) * f + (1 + l1 + l2) / 3
    elif index in (4, 5, 6):
        j, p = f, f_bd + rho.lambdas[index - 4]
    else:
        j, p = f_bd, 2 / 3 * f + 1 / 3
    return j, p


def best_protocol(rho: BellDiagonalState) -> ProtocolId:
    """Row 1-3 protocol with the smallest lambda; it reaches the highest fixed point."""
    lambdas = rho.lambdas
    return ProtocolId(index=1 + min(range(3), key=lambdas.__getitem__))
