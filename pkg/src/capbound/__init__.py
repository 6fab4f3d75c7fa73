"""Polynomial-method bounds for progression-free subsets of F_q^n."""

from .asymptotics import RateResult, clp_constant, convergence_report, cramer_objective, rate_function
from .capsearch import (
    PointSet,
    SearchResult,
    exhaustive_max,
    greedy_random,
    is_progression_free,
    sigma_set,
)
from .ffield import CoefficientTriple, FieldElement, Point, combine
from .monomials import Monomial, count_above, count_monomials, enumerate_monomials, reflect
from .polymethod import (
    check_proposition,
    max_support_element,
    theorem_bound,
    vanishing_space,
    verify_theorem_pipeline,
)
from .polynomial import Polynomial, evaluate, indicator, interpolate, multiply

__all__ = [
    "CoefficientTriple",
    "FieldElement",
    "Monomial",
    "Point",
    "PointSet",
    "Polynomial",
    "RateResult",
    "SearchResult",
    "check_proposition",
    "clp_constant",
    "combine",
    "convergence_report",
    "count_above",
    "count_monomials",
    "cramer_objective",
    "enumerate_monomials",
    "evaluate",
    "exhaustive_max",
    "greedy_random",
    "indicator",
    "interpolate",
    "is_progression_free",
    "max_support_element",
    "multiply",
    "rate_function",
    "reflect",
    "sigma_set",
    "theorem_bound",
    "vanishing_space",
    "verify_theorem_pipeline",
]
