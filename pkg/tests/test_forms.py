"""Tests for conjugate polynomials: grammar, printer, evaluation, realness and classification"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.core.exceptions import ArgumentError, DimensionError, ParseError
from src.core.models import FormKind
from src.forms import (
    ConjugatePolynomial,
    MonomialKey,
    check_real_valued,
    classify_form,
    conjugate_key,
    eval_poly,
    parse_poly,
    print_poly,
)


def test_parse_quartic_symmetric_conjugate_form(quartic_form_text):
    """Three canonical terms with the printed coefficients"""
    p = parse_poly(quartic_form_text)

    assert p.n == 2
    assert len(p) == 3
    assert p.coefficient(((1, 1), (1, 1))) == 1 - 1j
    assert p.coefficient(((1, 2), (1, 2))) == 4
    assert p.coefficient(((1, 2), (2, 2))) == 6


def test_parse_quadratic_general_conjugate_form(quadratic_form_text):
    """Four terms, including the imaginary unit as a coefficient"""
    p = parse_poly(quadratic_form_text)

    assert len(p) == 4
    assert p.coefficient(((1, 1), ())) == 1j
    assert p.coefficient(((1,), (1,))) == 2
    assert p.coefficient(((2,), (1,))) == 4
    assert p.coefficient(((), (2, 2))) == 3


def test_parse_merges_like_terms_and_respects_n():
    """Repeated monomials add up; n widens the variable count"""
    p = parse_poly("x1*~x2 + ~x2*x1 - 2*x1*~x2", n=4)
    assert p.is_zero(), "Like terms must cancel"
    assert p.n == 4

    q = parse_poly("-x1 + (0.5-2i)*x1")
    assert q.coefficient(((), (1,))) == pytest.approx(-0.5 - 2j)


def test_parse_errors_carry_position():
    """Malformed text raises ParseError with a line and column"""
    with pytest.raises(ParseError) as excinfo:
        parse_poly("2*x1 + * x2")
    assert excinfo.value.line == 1
    assert excinfo.value.column >= 1

    with pytest.raises(ParseError):
        parse_poly("x0")


def test_canonical_print_round_trips(quartic_form_text, quadratic_form_text):
    """parse(print(p)) == p exactly"""
    for text in (quartic_form_text, quadratic_form_text, "0", "-3*~x1^2*x2 + (1.25+0.5i)"):
        p = parse_poly(text)
        assert parse_poly(print_poly(p)) == p, f"Round trip failed for {text!r}"


def test_print_is_deterministic():
    """Canonical order is by degree, then conjugated indices, then plain indices"""
    p = parse_poly("~x1 + x2 + 3")
    assert print_poly(p) == "3 + x2 + ~x1"
    assert print_poly(ConjugatePolynomial(2)) == "0"


def test_eval_quadratic_form_at_unit_vector(quadratic_form_text):
    """At x = e1 only i~x1² and 2~x1x1 survive"""
    p = parse_poly(quadratic_form_text)
    assert eval_poly(p, [1, 0]) == pytest.approx(2 + 1j)


def test_eval_checks_length():
    with pytest.raises(DimensionError):
        eval_poly(parse_poly("x1*x2"), [1, 2, 3])


def test_polynomial_arithmetic():
    """(x̄1 + x1)² expands with the cross term doubled; conjugate swaps keys"""
    s = ConjugatePolynomial.variable(1, conjugated=True) + ConjugatePolynomial.variable(1)
    square = s ** 2
    assert square.coefficient(((1,), (1,))) == 2
    assert square.coefficient(((1, 1), ())) == 1

    p = parse_poly("i*~x1*x2^2")
    assert p.conjugate() == parse_poly("-i*~x2^2*x1")
    with pytest.raises(ArgumentError):
        s ** -1


def test_monomial_key_helpers():
    key = MonomialKey.of(conj=(2, 1), plain=(3,))
    assert key == MonomialKey((1, 2), (3,))
    assert conjugate_key(key) == MonomialKey((3,), (1, 2))
    assert key.degree == 3


def test_realness_of_hermitian_style_forms():
    """Conjugate pairs with conjugate coefficients are real-valued"""
    assert check_real_valued(parse_poly("~x1*x1 + 2*~x2*x2"))
    assert check_real_valued(parse_poly("i*~x1*x2 - i*~x2*x1 + ~x1^2 + x1^2"))


def test_realness_witnesses_point_at_violations():
    """Violated pairs are reported worst first"""
    verdict = check_real_valued(parse_poly("0.25*i*~x1*x1 + ~x1*x2 + 3*~x2*x1"))

    assert not verdict
    assert verdict.violations == 2
    worst = verdict.witnesses[0]
    assert worst.violation == pytest.approx(2.0), "|1 − conj(3)| = 2 is the largest defect"
    assert {worst.key, worst.partner} == {MonomialKey((1,), (2,)), MonomialKey((2,), (1,))}


def _random_key(rng, n: int, degree: int):
    conj_count = int(rng.integers(0, degree + 1))
    plain_count = int(rng.integers(0, degree - conj_count + 1))
    return (
        tuple(int(i) for i in rng.integers(1, n + 1, conj_count)),
        tuple(int(i) for i in rng.integers(1, n + 1, plain_count)),
    )


def _random_real_valued(rng) -> ConjugatePolynomial:
    """Random support with n ≤ 3 and degree ≤ 4; every coefficient is paired with the conjugate of its mirror"""
    n, degree = int(rng.integers(1, 4)), int(rng.integers(0, 5))
    pairs = []
    for _ in range(int(rng.integers(1, 7))):
        key = _random_key(rng, n, degree)
        c = complex(rng.standard_normal(), rng.standard_normal())
        pairs += [(key, c), (conjugate_key(MonomialKey.of(*key)), c.conjugate())]
    return ConjugatePolynomial.from_terms(n, pairs)


def _random_points(rng, n: int, count: int):
    return rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))


def test_real_valued_forms_evaluate_real(rng):
    """200 paired polynomials take real values at 50 points each"""
    for _ in range(200):
        p = _random_real_valued(rng)
        assert check_real_valued(p)
        degree = p.degree or 0
        for x in _random_points(rng, p.n, 50):
            bound = 1e-10 * (1 + np.linalg.norm(x)) ** degree
            assert abs(eval_poly(p, x).imag) <= bound, f"{print_poly(p)} is not real at {x}"


def test_violating_forms_take_non_real_values(rng):
    """200 polynomials with one broken pair of size ≥ 0.1 take a non-real value at some of 50 points"""
    for _ in range(200):
        p = _random_real_valued(rng)
        key = MonomialKey.of(*_random_key(rng, p.n, 4))
        size = rng.uniform(0.1, 1.0)
        if key == conjugate_key(key):
            broken = p + ConjugatePolynomial(p.n, {key: 1j * size})
        else:
            broken = p + ConjugatePolynomial(p.n, {key: size * np.exp(1j * rng.uniform(0, 2 * np.pi))})
        verdict = check_real_valued(broken)
        assert not verdict
        assert verdict.witnesses[0].violation >= 0.1

        worst = max(abs(eval_poly(broken, x).imag) for x in _random_points(rng, p.n, 50))
        assert worst > 1e-6, f"{print_poly(broken)} looked real at every point"


def test_value_plus_conjugate_value_is_real(rng):
    for _ in range(50):
        p = _random_real_valued(rng) + ConjugatePolynomial(1, {((1,), ()): 2 - 1j})
        q = p.conjugate()
        for x in _random_points(rng, p.n, 5):
            total = eval_poly(p, x) + eval_poly(q, x)
            assert abs(total.imag) <= 1e-12 * max(1.0, abs(total))


def test_classify_forms(quartic_form_text, quadratic_form_text):
    """Tightest class with the degree of its definition"""
    quartic = classify_form(parse_poly(quartic_form_text))
    assert quartic.kind == FormKind.SYMMETRIC_CONJUGATE and quartic.degree == 2

    quadratic = classify_form(parse_poly(quadratic_form_text))
    assert quadratic.kind == FormKind.GENERAL_CONJUGATE and quadratic.degree == 2

    assert classify_form(parse_poly("x1*x2 + 2*x2^2")).kind == FormKind.COMPLEX
    assert classify_form(parse_poly("x1 + ~x1*x1")).kind == FormKind.GENERAL
    assert classify_form(ConjugatePolynomial(2)).kind == FormKind.GENERAL


small_ints = st.integers(min_value=-5, max_value=5)
monomials = st.tuples(
    st.lists(st.integers(min_value=1, max_value=3), max_size=3),
    st.lists(st.integers(min_value=1, max_value=3), max_size=3),
)


@settings(max_examples=50, deadline=None)
@given(terms=st.lists(st.tuples(monomials, small_ints, small_ints), max_size=6))
def test_print_parse_round_trip_property(terms):
    """Every canonical polynomial survives print → parse unchanged"""
    p = ConjugatePolynomial.from_terms(3, [(key, complex(re, im)) for key, re, im in terms])
    assert parse_poly(print_poly(p), n=3) == p


finite_coefficients = st.complex_numbers(allow_nan=False, allow_infinity=False, max_magnitude=1e300)


@settings(max_examples=200, deadline=None)
@given(terms=st.lists(st.tuples(monomials, finite_coefficients), max_size=6))
def test_print_parse_round_trip_with_float_coefficients(terms):
    """Shortest-repr reals, exponents and pure imaginary coefficients print and parse back exactly"""
    p = ConjugatePolynomial.from_terms(3, terms)
    assert parse_poly(print_poly(p), n=3) == p


def test_print_uses_exponents_and_repr_floats():
    p = ConjugatePolynomial.from_terms(2, [
        (((), (1,)), -0.7j),
        (((1,), ()), 1 / 3),
        (((1,), (2,)), 0.1 + 0.2j),
        (((2,), (1,)), complex(-1e-20, -3.3e15)),
    ])
    text = print_poly(p)
    assert "0.7*i*x1" in text
    assert "0.3333333333333333*~x1" in text
    assert "(0.1+0.2i)*~x1*x2" in text
    assert "(-1e-20-3300000000000000.0i)*~x2*x1" in text
    assert parse_poly(text) == p


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
