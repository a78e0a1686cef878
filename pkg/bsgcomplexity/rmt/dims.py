"""
Finite-N block dimensions with (N1 - 1)/(N - 2) = gamma

Example Usage:
==============
>>> admissible_dims(0.4, 102).N1
41
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List

from bsgcomplexity.error import ConfigurationError, InadmissibleDimensionsError

MIN_N = 4


@dataclass(frozen=True)
class BlockDims:
    N: int
    N1: int
    N2: int
    gamma: float

    def __post_init__(self):
        if self.N < MIN_N:
            raise ConfigurationError(f"N must be >= {MIN_N}, got {self.N}")
        if self.N1 < 2 or self.N2 < 2 or self.N1 + self.N2 != self.N:
            raise ConfigurationError(
                f"need N1, N2 >= 2 with N1 + N2 = N, got {self.N1} + {self.N2} != {self.N}"
            )

    @property
    def size(self) -> int:
        """Matrix dimension (N1 - 1) + (N2 - 1)."""
        return self.N - 2

    @property
    def n1(self) -> int:
        return self.N1 - 1

    @property
    def n2(self) -> int:
        return self.N2 - 1

    def to_dict(self) -> dict:
        return {"N": self.N, "N1": self.N1, "N2": self.N2, "gamma": self.gamma}


def _gamma_fraction(gamma: float) -> Fraction:
    # decimal value as written, e.g. 0.4 -> 2/5
    return Fraction(repr(float(gamma)))


def _valid(fraction: Fraction, n: int) -> bool:
    if n < MIN_N:
        return False
    scaled = fraction * (n - 2)
    return scaled.denominator == 1 and 1 <= scaled <= n - 3


def nearest_admissible(gamma: float, n: int) -> List[int]:
    """
    nearest_admissible

    :param gamma: float
    :param n: int
    :return: the nearest admissible N below and above n
    """
    fraction = _gamma_fraction(gamma)
    period = fraction.denominator
    found = []
    below = n - 1
    while below >= MIN_N and not _valid(fraction, below):
        below -= 1
    if below >= MIN_N:
        found.append(below)
    above = n + 1
    limit = n + 2 * period + MIN_N
    while above <= limit and not _valid(fraction, above):
        above += 1
    if above <= limit:
        found.append(above)
    return found


def admissible_dims(gamma: float, N: int) -> BlockDims:
    """
    admissible_dims

    :param gamma: float in (0, 1)
    :param N: int >= 4
    :return: BlockDims with N1 = gamma*(N - 2) + 1
    """
    if not 0.0 < gamma < 1.0:
        raise ConfigurationError(f"gamma must lie in (0, 1), got {gamma!r}")
    if N < MIN_N:
        raise ConfigurationError(f"N must be >= {MIN_N}, got {N}")
    fraction = _gamma_fraction(gamma)
    if not _valid(fraction, N):
        raise InadmissibleDimensionsError(gamma, N, nearest_admissible(gamma, N))
    n1 = int(fraction * (N - 2)) + 1
    return BlockDims(N=N, N1=n1, N2=N - n1, gamma=float(gamma))
