"""Partial derivatives of the linear-jump average consumed fidelity."""
from entbuffer.core.errors import DegenerateSystemError
from entbuffer.core.protocols.jumps import LinearJump
from entbuffer.core.schemas.params import SystemParams


def _denominator(params: SystemParams, a: float) -> float:
    d = params.gamma + params.mu + params.lam * params.q * (1.0 - a * params.p)
    if d <= 0:
        raise DegenerateSystemError("Gamma + mu + lambda q (1 - a p) vanishes")
    return d


def dF_dq(params: SystemParams, jump: LinearJump, f_new: float) -> float:
    """dF/dq = lambda (Gamma y - 4 mu p x) / (4 D^2).

    y = 4F(1 - p) + (4b + a)p - 1 and x = F(1 - a) - b. D does depend on q but the
    numerator does not, so the sign is constant in q.
    """
    a, b, p = jump.a, jump.b, params.p
    d = _denominator(params, a)
    y = 4 * f_new * (1.0 - p) + (4 * b + a) * p - 1.0
    x = f_new * (1.0 - a) - b
    return params.lam * (params.gamma * y - 4 * params.mu * p * x) / (4 * d * d)


def dF_dp(params: SystemParams, jump: LinearJump, f_new: float) -> float:
    """dF/dp = lambda q (Gamma (a + 4b - 4F) - 4 (mu + lambda q) x) / (4 D^2)."""
    a, b = jump.a, jump.b
    d = _denominator(params, a)
    x = f_new * (1.0 - a) - b
    lam_q = params.lam * params.q
    return lam_q * (params.gamma * (a + 4 * b - 4 * f_new) - 4 * (params.mu + lam_q) * x) / (4 * d * d)
