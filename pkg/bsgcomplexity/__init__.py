"""
bsgcomplexity

Annealed complexity of bipartite spherical spin glasses: the two-species Matrix
Dyson Equation, limiting Hessian spectra, the complexity variational problems
and Monte Carlo checks at finite N.

Example Usage:
==============
>>> from bsgcomplexity import derive_params, parse_mixture, sigma_total
>>> params = derive_params(parse_mixture("pure 2 2"), 0.5)
>>> round(sigma_total(params).value, 3)
0.549
"""

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "parse_mixture",
    "load_mixture",
    "derive_params",
    "FieldPoint",
    "solve_point",
    "density",
    "support_edges",
    "sigma_total",
    "sigma_min",
    "e_infinity",
    "ground_state_bound",
    "run_verification",
]

_LAZY = {
    "parse_mixture": "bsgcomplexity.model",
    "load_mixture": "bsgcomplexity.model",
    "derive_params": "bsgcomplexity.model",
    "FieldPoint": "bsgcomplexity.mde",
    "solve_point": "bsgcomplexity.mde",
    "density": "bsgcomplexity.mde.density",
    "support_edges": "bsgcomplexity.mde",
    "sigma_total": "bsgcomplexity.complexity",
    "sigma_min": "bsgcomplexity.complexity",
    "e_infinity": "bsgcomplexity.complexity",
    "ground_state_bound": "bsgcomplexity.complexity",
    "run_verification": "bsgcomplexity.rmt",
}


def __getattr__(name):
    if name in _LAZY:
        from importlib import import_module

        mod = import_module(_LAZY[name])
        return getattr(mod, name)
    raise AttributeError(name)
