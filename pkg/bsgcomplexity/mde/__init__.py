"""Two-species Dyson equation and the limiting spectral density."""

from bsgcomplexity.mde.density import SpectralDensity, default_window, density
from bsgcomplexity.mde.edges import left_edge, support_edges
from bsgcomplexity.mde.field import FieldPoint
from bsgcomplexity.mde.pair import StieltjesPair, stieltjes_transform
from bsgcomplexity.mde.solve import MdeCoefficients, kappa, solve_point

__all__ = [
    "FieldPoint",
    "StieltjesPair",
    "SpectralDensity",
    "MdeCoefficients",
    "stieltjes_transform",
    "solve_point",
    "density",
    "default_window",
    "support_edges",
    "left_edge",
    "kappa",
]
