"""Conjugate polynomial algebra, grammar and realness test"""

from .parser import parse_poly, print_poly
from .polynomial import ConjugatePolynomial, MonomialKey, conjugate_key, eval_poly
from .realness import check_real_valued, classify_form

__all__ = [
    "ConjugatePolynomial",
    "MonomialKey",
    "check_real_valued",
    "classify_form",
    "conjugate_key",
    "eval_poly",
    "parse_poly",
    "print_poly",
]
