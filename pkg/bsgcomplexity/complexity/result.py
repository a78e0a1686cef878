"""Optimized complexity values"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

from bsgcomplexity.mde.field import FieldPoint


class ComplexityMode(str, Enum):
    TOTAL = "total"
    MINIMA = "minima"

    def __str__(self):
        return self.value

    def __repr__(self):
        return self.value


@dataclass(frozen=True)
class ComplexityResult:
    """value is always constant_part + functional_part."""

    value: float
    maximizer: FieldPoint
    mode: ComplexityMode
    threshold_t: Optional[float]
    constant_part: float
    functional_part: float
    diagnostics: Dict[str, Any] = field(default_factory=dict, compare=False)

    @classmethod
    def build(
        cls,
        constant_part: float,
        functional_part: float,
        maximizer: FieldPoint,
        mode: ComplexityMode,
        threshold_t: Optional[float] = None,
        diagnostics: Optional[Dict[str, Any]] = None,
    ) -> "ComplexityResult":
        return cls(
            value=constant_part + functional_part,
            maximizer=maximizer,
            mode=ComplexityMode(mode),
            threshold_t=None if threshold_t is None else float(threshold_t),
            constant_part=float(constant_part),
            functional_part=float(functional_part),
            diagnostics=dict(diagnostics or {}),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "maximizer": self.maximizer.to_dict(),
            "mode": self.mode.value,
            "threshold_t": self.threshold_t,
            "constant_part": self.constant_part,
            "functional_part": self.functional_part,
            "diagnostics": self.diagnostics,
        }
