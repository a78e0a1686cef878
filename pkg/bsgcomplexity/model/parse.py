"""
Mixture file loader

Lines are ``term <p> <q> <beta>`` or ``pure <p> <q>``; ``#`` starts a comment and
``;`` separates records on one line.

Example Usage:
==============
>>> spec = parse_mixture("term 2 2 0.7071067812; term 2 3 0.7071067812")
>>> len(spec)
2
"""

import math
from decimal import Decimal
from pathlib import Path
from typing import Dict, List, Tuple, Union

from bsgcomplexity.error import ModelValidationError, NormalizationError
from bsgcomplexity.logger import Logger as log
from bsgcomplexity.model.mixture import MixtureSpec, Term

NORMALIZATION_TOLERANCE = 1e-12
# precision slack from short decimal coefficients never exceeds this
MAX_PRECISION_SLACK = 1e-8


def _parse_degree(token: str, name: str, line: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ModelValidationError(f"{name} must be an integer, got {token!r}", line)
    if value < 1:
        raise ModelValidationError(f"{name} must be >= 1, got {value}", line)
    return value


def _parse_beta(token: str, line: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ModelValidationError(f"beta must be a real number, got {token!r}", line)
    if not math.isfinite(value):
        raise ModelValidationError(f"beta must be finite, got {token!r}", line)
    if value < 0.0:
        raise ModelValidationError(f"beta must be nonnegative, got {value}", line)
    return value


def _records(text: str) -> List[Tuple[int, List[str]]]:
    records = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        for chunk in content.split(";"):
            tokens = chunk.split()
            if tokens:
                records.append((number, tokens))
    return records


def precision_slack(beta: float) -> float:
    """
    precision_slack

    Half a unit in the last place of the shortest decimal form of beta.

    :param beta: float
    :return: float
    """
    if beta == 0.0:
        return 0.0
    exponent = Decimal(repr(beta)).as_tuple().exponent
    return 0.5 * 10.0**exponent


def normalization_tolerance(terms: Tuple[Term, ...]) -> float:
    """
    normalization_tolerance

    :param terms: parsed terms
    :return: float admissible |sum beta^2 - 1|
    """
    slack = sum(2.0 * term.beta * precision_slack(term.beta) for term in terms)
    return max(NORMALIZATION_TOLERANCE, min(slack, MAX_PRECISION_SLACK))


def parse_mixture(text: str, renormalize: bool = False) -> MixtureSpec:
    """
    parse_mixture

    :param text: str model description
    :param renormalize: bool divide every beta by sqrt(sum beta^2) instead of failing
    :return: MixtureSpec
    """
    seen: Dict[Tuple[int, int], int] = {}
    terms = []
    for line, tokens in _records(text):
        keyword = tokens[0].lower()
        if keyword == "term":
            if len(tokens) != 4:
                raise ModelValidationError(
                    f"expected 'term <p> <q> <beta>', got {' '.join(tokens)!r}", line
                )
            p = _parse_degree(tokens[1], "p", line)
            q = _parse_degree(tokens[2], "q", line)
            beta = _parse_beta(tokens[3], line)
        elif keyword == "pure":
            if len(tokens) != 3:
                raise ModelValidationError(
                    f"expected 'pure <p> <q>', got {' '.join(tokens)!r}", line
                )
            p = _parse_degree(tokens[1], "p", line)
            q = _parse_degree(tokens[2], "q", line)
            beta = 1.0
        else:
            raise ModelValidationError(f"unknown record {tokens[0]!r}", line)

        if (p, q) in seen:
            raise ModelValidationError(
                f"duplicate term ({p},{q}), first given on line {seen[(p, q)]}", line
            )
        seen[(p, q)] = line
        terms.append(Term(p, q, beta))

    if not terms:
        raise ModelValidationError("model description has no terms")
    if not any(term.beta > 0.0 for term in terms):
        raise ModelValidationError("at least one beta must be positive")

    spec = MixtureSpec(tuple(terms))
    total = spec.total_weight
    tolerance = normalization_tolerance(spec.terms)
    if abs(total - 1.0) > tolerance:
        if not renormalize:
            raise NormalizationError(total, tolerance)
        scale = math.sqrt(total)
        log.warning(f"Renormalizing mixture: sum of beta^2 = {total:.17g}")
        spec = MixtureSpec(tuple(Term(t.p, t.q, t.beta / scale) for t in spec.terms))

    log.parameter("Parsed mixture terms", [f"({t.p},{t.q}):{t.beta!r}" for t in spec.terms])
    return spec


def load_mixture(path: Union[str, Path], renormalize: bool = False) -> MixtureSpec:
    """
    load_mixture

    :param path: model file
    :param renormalize: bool
    :return: MixtureSpec
    """
    path = Path(path)
    if not path.is_file():
        raise ModelValidationError(f"model file not found: {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as ex:
        raise ModelValidationError(f"cannot read model file {path}: {ex}")
    return parse_mixture(text, renormalize=renormalize)


def serialize_mixture(spec: MixtureSpec) -> str:
    """
    serialize_mixture

    :param spec: MixtureSpec
    :return: str with 17 significant digits per coefficient
    """
    lines = [f"term {term.p} {term.q} {term.beta:.17g}" for term in spec.terms]
    return "\n".join(lines) + "\n"
