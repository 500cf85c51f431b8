"""Jump functions: fidelity of the stored link after a successful pumping round."""
from typing import Union

from pydantic import BaseModel, ConfigDict, model_validator

from entbuffer.core.errors import AnalyticsUnavailableError

JUMP_TOL = 1e-12


class LinearJump(BaseModel):
    """J(F) = a F + b with constant success probability."""
    model_config = ConfigDict(frozen=True)

    a: float
    b: float

    @model_validator(mode="after")
    def _check_range(self):
        if not -JUMP_TOL <= self.a <= 1.0 + JUMP_TOL:
            raise ValueError(f"Jump slope must lie in [0, 1], got a={self.a!r}")
        lower, upper = (1.0 - self.a) / 4.0, 1.0 - self.a
        if not lower - JUMP_TOL <= self.b <= upper + JUMP_TOL:
            raise ValueError(
                f"Jump intercept must lie in [{lower!r}, {upper!r}] for a={self.a!r}, got b={self.b!r}"
            )
        return self

    def __call__(self, f: float) -> float:
        return self.a * f + self.b

    @property
    def is_trivial(self) -> bool:
        """J(F) = F leaves the stored link untouched."""
        return self.a == 1.0 and self.b == 0.0


class RationalJump(BaseModel):
    """J(F) = (at F + bt) / (c F + d), where c F + d is the success probability."""
    model_config = ConfigDict(frozen=True)

    at: float
    bt: float
    c: float
    d: float

    @model_validator(mode="after")
    def _check_range(self):
        # both maps are monotone on [1/4, 1] once the denominator stays positive,
        # so the endpoints decide
        for f in (0.25, 1.0):
            p = self.c * f + self.d
            if not 0.0 < p <= 1.0 + JUMP_TOL:
                raise ValueError(f"Success probability must lie in (0, 1] on [1/4, 1], got {p!r} at F={f}")
            j = (self.at * f + self.bt) / p
            if not -JUMP_TOL <= j <= 1.0 + JUMP_TOL:
                raise ValueError(f"Jump value must lie in [0, 1] on [1/4, 1], got {j!r} at F={f}")
        return self

    def __call__(self, f: float) -> float:
        return (self.at * f + self.bt) / (self.c * f + self.d)

    def success_probability(self, f: float) -> float:
        return self.c * f + self.d

    @property
    def has_constant_success(self) -> bool:
        return abs(self.c) <= JUMP_TOL

    def linearized(self) -> LinearJump:
        """Equivalent linear jump, defined only when the success probability is constant."""
        if not self.has_constant_success:
            raise AnalyticsUnavailableError(
                f"Success probability depends on the fidelity (c={self.c!r}); no linear equivalent"
            )
        return LinearJump(a=self.at / self.d, b=self.bt / self.d)


JumpFunction = Union[LinearJump, RationalJump]
