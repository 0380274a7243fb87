"""Exact hermitian rank of polynomials in z and conj(z), and the rank inequality for Q P^d."""

from hermrank.coeffmatrix import (
    CoefficientMatrix,
    RankFactorization,
    SignatureDecomposition,
    build_matrix,
    exact_rank,
    multinomial_bound,
    rank_factorize,
    rank_of,
    signature_decompose,
)
from hermrank.combinatorics import pivot_verify, structure_check
from hermrank.jets import AnalyticJet, jet_of, jet_times_power, rank_lower_bound
from hermrank.normalform import classify_linear_form, factor_out_P, find_zero, reduce_full_rank
from hermrank.parsing import ParseError, parse_poly, parse_recipe
from hermrank.poly import Point, PolarizedPolynomial, evaluate, poly_mul, poly_pow
from hermrank.scalar import Scalar, format_scalar, parse_scalar
from hermrank.verify import VerificationReport, verify_theorem

__version__ = "0.1.0"

__all__ = [
    "AnalyticJet", "CoefficientMatrix", "ParseError", "Point", "PolarizedPolynomial",
    "RankFactorization", "Scalar", "SignatureDecomposition", "VerificationReport",
    "build_matrix", "classify_linear_form", "evaluate", "exact_rank", "factor_out_P",
    "find_zero", "format_scalar", "jet_of", "jet_times_power", "multinomial_bound",
    "parse_poly", "parse_recipe", "parse_scalar", "pivot_verify", "poly_mul", "poly_pow",
    "rank_factorize", "rank_lower_bound", "rank_of", "reduce_full_rank", "signature_decompose",
    "structure_check", "verify_theorem",
]
