"""Text grammar and canonical printer for conjugate polynomials"""

import logging
from functools import lru_cache, reduce
from typing import List, Optional

import pyparsing as pp

from ..core.exceptions import ParseError
from .polynomial import ConjugatePolynomial, MonomialKey

logger = logging.getLogger(__name__)

_REAL = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"


def _variable_action(conjugated: bool):
    def action(instring: str, loc: int, toks: pp.ParseResults) -> ConjugatePolynomial:
        index = int(toks[0])
        if index < 1:
            raise pp.ParseFatalException(instring, loc, f"variable index must be at least 1, got {index}")
        return ConjugatePolynomial.variable(index, conjugated=conjugated)
    return action


def _complex_literal(toks: pp.ParseResults) -> ConjugatePolynomial:
    re = float(toks[0])
    im = 0.0
    if len(toks) > 1:
        magnitude = float(toks[2]) if len(toks) > 2 else 1.0
        im = magnitude if toks[1] == "+" else -magnitude
    return ConjugatePolynomial.constant(complex(re, im))


def _power(toks: pp.ParseResults) -> ConjugatePolynomial:
    out = toks[0]
    for exponent in toks[1:]:
        out = out ** int(exponent)
    return out


def _product(toks: pp.ParseResults) -> ConjugatePolynomial:
    return reduce(lambda a, b: a * b, toks)


def _sum(toks: pp.ParseResults) -> ConjugatePolynomial:
    items = list(toks)
    total = ConjugatePolynomial(0)
    sign = "+"
    for item in items:
        if isinstance(item, str):
            sign = item
            continue
        total = total + item if sign == "+" else total - item
        sign = "+"
    return total


@lru_cache(maxsize=1)
def _grammar() -> pp.ParserElement:
    uint = pp.Word(pp.nums)
    real = pp.Regex(_REAL)
    signed_real = pp.Regex(r"[+-]?" + _REAL)
    sign = pp.one_of("+ -")

    real_literal = real.copy().set_parse_action(lambda toks: ConjugatePolynomial.constant(float(toks[0])))
    paren_literal = (
        pp.Suppress("(")
        + signed_real
        + pp.Optional(sign + pp.Optional(real) + pp.Suppress("i"))
        + pp.Suppress(")")
    ).set_parse_action(_complex_literal)
    imaginary_unit = pp.Keyword("i").set_parse_action(lambda: ConjugatePolynomial.constant(1j))
    var = (pp.Suppress("x") + uint).set_parse_action(_variable_action(False))
    conjvar = (pp.Suppress("~") + pp.Suppress("x") + uint).set_parse_action(_variable_action(True))

    base = paren_literal | real_literal | imaginary_unit | conjvar | var
    factor = (base + pp.ZeroOrMore(pp.Suppress("^") + uint)).set_parse_action(_power)
    term = (factor + pp.ZeroOrMore(pp.Suppress("*") + factor)).set_parse_action(_product)
    poly = (pp.Optional(sign) + term + pp.ZeroOrMore(sign + term)).set_parse_action(_sum)
    return poly


def parse_poly(text: str, n: Optional[int] = None) -> ConjugatePolynomial:
    """Parse polynomial text into canonical form.

    The variable count is the largest index seen, or ``n`` when that is larger.
    """
    try:
        result = _grammar().parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise ParseError(e.msg, line=e.lineno, column=e.col) from e
    poly: ConjugatePolynomial = result[0]
    used = max((i for k in poly.terms for i in k.conj + k.plain), default=0)
    width = max(used, n or 0, poly.n)
    logger.debug(f"Parsed polynomial with {len(poly)} terms in {width} variables")
    return poly.with_n(width)


def _fmt_real(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(float(x))


def _fmt_monomial(key: MonomialKey) -> str:
    parts: List[str] = []
    for prefix, indices in (("~x", key.conj), ("x", key.plain)):
        for i in sorted(set(indices)):
            power = indices.count(i)
            parts.append(f"{prefix}{i}" if power == 1 else f"{prefix}{i}^{power}")
    return "*".join(parts)


def _fmt_coefficient(c: complex, has_monomial: bool):
    """Sign and unsigned text of one coefficient"""
    a, b = c.real, c.imag
    if b == 0:
        magnitude = abs(a)
        text = "" if magnitude == 1 and has_monomial else _fmt_real(magnitude)
        return ("-" if a < 0 else "+"), text
    if a == 0:
        magnitude = abs(b)
        text = "i" if magnitude == 1 else f"{_fmt_real(magnitude)}*i"
        return ("-" if b < 0 else "+"), text
    joiner = "+" if b > 0 else "-"
    return "+", f"({_fmt_real(a)}{joiner}{_fmt_real(abs(b))}i)"


def print_poly(p: ConjugatePolynomial) -> str:
    """Deterministic canonical text; parse_poly inverts it exactly"""
    if p.is_zero():
        return "0"
    pieces: List[str] = []
    for key, coeff in p.items():
        monomial = _fmt_monomial(key)
        sign, coef_text = _fmt_coefficient(coeff, bool(monomial))
        body = "*".join(part for part in (coef_text, monomial) if part) or "1"
        if not pieces:
            pieces.append(f"-{body}" if sign == "-" else body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)
