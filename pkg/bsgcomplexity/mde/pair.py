"""Solution of the two-species Dyson equation at one spectral point"""

from dataclasses import dataclass

from bsgcomplexity.model.params import ModelParams


@dataclass(frozen=True)
class StieltjesPair:
    z: complex
    m1: complex
    m2: complex
    residual1: float
    residual2: float

    @property
    def residual(self) -> float:
        return max(self.residual1, self.residual2)


def stieltjes_transform(pair: StieltjesPair, params: ModelParams) -> complex:
    """
    stieltjes_transform

    :param pair: StieltjesPair
    :param params: ModelParams
    :return: complex gamma*m1 + (1 - gamma)*m2
    """
    return params.gamma * pair.m1 + params.gamma2 * pair.m2
