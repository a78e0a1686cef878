"""Mixture descriptions and the scalars derived from them."""

from bsgcomplexity.model.mixture import MixtureSpec, Term
from bsgcomplexity.model.params import ModelParams, derive_params, prefactor_limit
from bsgcomplexity.model.parse import load_mixture, parse_mixture, serialize_mixture

__all__ = [
    "MixtureSpec",
    "Term",
    "ModelParams",
    "derive_params",
    "prefactor_limit",
    "parse_mixture",
    "load_mixture",
    "serialize_mixture",
]
