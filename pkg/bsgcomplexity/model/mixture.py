"""
Mixture covariance xi(x, y) = sum beta_pq^2 x^p y^q

Example Usage:
==============
>>> spec = MixtureSpec.from_pairs([(2, 2, 1.0)])
>>> spec.xi(1.0, 1.0)
1.0
"""

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple


@dataclass(frozen=True)
class Term:
    """One coefficient beta_pq of the mixture."""

    p: int
    q: int
    beta: float

    @property
    def weight(self) -> float:
        return self.beta * self.beta

    @property
    def key(self) -> Tuple[int, int]:
        return self.p, self.q


@dataclass(frozen=True)
class MixtureSpec:
    """Finite coefficient table, kept sorted by (p, q)."""

    terms: Tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(sorted(self.terms, key=lambda t: t.key)))

    @classmethod
    def from_pairs(cls, entries: Iterable[Tuple[int, int, float]]) -> "MixtureSpec":
        """
        from_pairs

        :param entries: iterable of (p, q, beta); no validation
        :return: MixtureSpec
        """
        return cls(tuple(Term(int(p), int(q), float(beta)) for p, q, beta in entries))

    @property
    def active_terms(self) -> Tuple[Term, ...]:
        return tuple(term for term in self.terms if term.beta > 0.0)

    @property
    def is_pure(self) -> bool:
        return len(self.active_terms) == 1

    @property
    def pure_degrees(self) -> Optional[Tuple[int, int]]:
        if not self.is_pure:
            return None
        return self.active_terms[0].key

    @property
    def total_weight(self) -> float:
        return sum(term.weight for term in self.terms)

    def xi(self, x: float, y: float) -> float:
        """
        xi

        :param x: float overlap in the first species
        :param y: float overlap in the second species
        :return: float
        """
        return sum(term.weight * x**term.p * y**term.q for term in self.terms)

    def __len__(self) -> int:
        return len(self.terms)
