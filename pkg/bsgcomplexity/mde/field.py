"""Kac-Rice dual variable u = (u0, u1, u2)"""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from bsgcomplexity.error import ConfigurationError


@dataclass(frozen=True)
class FieldPoint:
    u0: float = 0.0
    u1: float = 0.0
    u2: float = 0.0

    def __post_init__(self):
        for name in ("u0", "u1", "u2"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ConfigurationError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_sequence(cls, values: Sequence[float]) -> "FieldPoint":
        """
        from_sequence

        :param values: one value (u0) or three values (u0, u1, u2)
        :return: FieldPoint
        """
        values = [float(v) for v in values]
        if len(values) == 1:
            return cls(values[0])
        if len(values) != 3:
            raise ConfigurationError(f"expected 1 or 3 field components, got {len(values)}")
        return cls(*values)

    @property
    def norm_squared(self) -> float:
        return self.u0 * self.u0 + self.u1 * self.u1 + self.u2 * self.u2

    @property
    def norm(self) -> float:
        return math.sqrt(self.norm_squared)

    def as_tuple(self) -> Tuple[float, float, float]:
        return self.u0, self.u1, self.u2

    def reduced(self, pure: bool) -> "FieldPoint":
        """Pure models only see u0."""
        if pure and (self.u1 != 0.0 or self.u2 != 0.0):
            return FieldPoint(self.u0)
        return self

    def __neg__(self) -> "FieldPoint":
        return FieldPoint(-self.u0, -self.u1, -self.u2)

    def to_dict(self) -> dict:
        return {"u0": self.u0, "u1": self.u1, "u2": self.u2}
