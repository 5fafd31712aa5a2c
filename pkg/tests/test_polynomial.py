import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from knotsearch.errors import DataQualityWarning, EvaluationAtPole, UnparseableCell, WindowTooSmall, ZeroPolynomial
from knotsearch.polynomial import (
    ComplexPoint,
    LaurentPolynomial,
    detect_layout,
    determinant_feature,
    evaluate,
    evaluate_many,
    exponent_window,
    flatten,
    flatten_many,
    format_polynomial,
    parse_polynomial,
    span,
    turaev_feature,
)

TREFOIL = "[1, 4, 1, 0, 1, -1]"  # t + t^3 - t^4


@pytest.mark.parametrize(
    "cell, terms",
    [
        (TREFOIL, {1: 1, 3: 1, 4: -1}),
        ("1", {0: 1}),
        ("[-2, 2, 1, -1, 1, -1, 1]", {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}),
        ("[0, 2, 1, 0, 1]", {0: 1, 2: 1}),
    ],
)
def test_parse_knotinfo_vectors(cell, terms):
    assert parse_polynomial(cell) == LaurentPolynomial(terms)


def test_parse_min_first_layout():
    # no max field: [min, c_min, c_min+1, ...]
    assert parse_polynomial("[1, 1, 0, 1, -1]", layout="min_first") == LaurentPolynomial({1: 1, 3: 1, 4: -1})


def test_detect_layout_prefers_min_max_when_every_cell_fits():
    assert detect_layout([TREFOIL, "[0, 2, 1, 0, 1]"]) == "min_max"
    assert detect_layout(["[1, 1, 0, 1, -1]"]) == "min_first"


def test_parse_two_variable():
    # two rows: outer exponent 0 has inner 1..2, outer exponent 1 has inner 0
    p = parse_polynomial("[0, 1, [1, 2, 3, -1], [0, 0, 5]]")
    assert p.variable_count == 2
    assert dict(p.terms) == {(0, 1): 3, (0, 2): -1, (1, 0): 5}


@pytest.mark.parametrize("cell", ["[1, 4, 1, 0.5, 1, -1]", "not a poly", "[1, 4, 'a', 0, 1, -1]", "{1: 2}"])
def test_parse_rejects_junk(cell):
    with pytest.raises(UnparseableCell):
        parse_polynomial(cell)


def test_zero_terms_are_dropped():
    assert LaurentPolynomial({0: 0, 2: 3, 5: 0}) == LaurentPolynomial({2: 3})
    assert LaurentPolynomial({}).is_zero()


def test_trefoil_evaluations():
    p = parse_polynomial(TREFOIL)
    assert evaluate(p, -1) == -3
    assert evaluate(p, 1) == 1
    assert determinant_feature(p) == 3
    assert span(p) == 3
    assert turaev_feature(p, 3) == 0


def test_pole_at_zero():
    with pytest.raises(EvaluationAtPole):
        evaluate(LaurentPolynomial({-1: 1}), 0)
    with pytest.raises(EvaluationAtPole):
        evaluate_many([LaurentPolynomial({-1: 1})], 0)
    assert evaluate(LaurentPolynomial({0: 2, 1: 1}), 0) == 2


def test_zero_polynomial_guards():
    z = LaurentPolynomial({})
    with pytest.raises(ZeroPolynomial):
        span(z)
    with pytest.raises(ZeroPolynomial):
        determinant_feature(z)
    assert evaluate(z, 0.3 + 0.2j) == 0


def test_window_too_small():
    with pytest.raises(WindowTooSmall):
        flatten(parse_polynomial(TREFOIL), (2, 4))


def test_flatten_layout():
    f = flatten(parse_polynomial(TREFOIL), (-1, 5))
    assert f.values.tolist() == [0, 0, 1, 0, 1, -1, 0]
    assert f.exponent_window == (-1, 5)


def test_flatten_two_variable_row_major():
    p = LaurentPolynomial({(0, 0): 1, (1, 1): 2}, variable_count=2)
    f = flatten(p, ((0, 1), (0, 1)))
    assert f.values.tolist() == [1, 0, 0, 2]


def test_determinant_warns_off_integer(monkeypatch):
    import knotsearch.polynomial as poly

    monkeypatch.setattr(poly, "evaluate", lambda q, t: 1.25)
    with pytest.warns(DataQualityWarning):
        assert poly.determinant_feature(LaurentPolynomial({0: 1})) == 1


@pytest.mark.parametrize(
    "text, re_, im_",
    [("-0.6+0.1i", -0.6, 0.1), ("-0.7+0.1j", -0.7, 0.1), ("(1,-2)", 1.0, -2.0), ("0.5", 0.5, 0.0), ("-1-0.2i", -1.0, -0.2)],
)
def test_complex_point_parse(text, re_, im_):
    p = ComplexPoint.parse(text)
    assert (p.re, p.im) == (re_, im_)
    assert ComplexPoint.parse(str(p)) == p


def test_complex_point_str():
    assert str(ComplexPoint(-0.6, 0.1)) == "-0.6+0.1i"
    assert str(ComplexPoint(-0.0, 0.0)) == "0+0i"
    with pytest.raises(ValueError):
        ComplexPoint(math.inf, 0)


# ---------------------------------------------------------------------------
# properties

coeffs = st.integers(-20, 20)
polys = st.dictionaries(st.integers(-12, 12), coeffs, max_size=10).map(LaurentPolynomial)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
points = st.complex_numbers(min_magnitude=0.2, max_magnitude=1.5, allow_nan=False, allow_infinity=False)


def naive(p, t):
    return sum(c * t**e for e, c in p.terms.items())


@given(polys, points)
def test_horner_matches_naive_sum(p, t):
    scale = max(1.0, sum(abs(c) * abs(t) ** e for e, c in p.terms.items()))
    assert abs(evaluate(p, t) - naive(p, t)) <= 1e-12 * scale


@given(st.lists(polys, min_size=1, max_size=6), points)
def test_vectorized_matches_scalar(ps, t):
    many = evaluate_many(ps, t)
    for p, v in zip(ps, many):
        scale = max(1.0, sum(abs(c) * abs(t) ** e for e, c in p.terms.items()))
        assert abs(v - evaluate(p, t)) <= 1e-12 * scale


@given(polys, points)
def test_conjugate_symmetry(p, t):
    a = evaluate(p, t.conjugate())
    b = evaluate(p, t).conjugate()
    assert cmath.isclose(a, b, rel_tol=1e-12, abs_tol=1e-9)


@given(nonzero_polys, st.integers(-10, 10))
def test_span_shift_invariant(p, k):
    assert span(p.shift(k)) == span(p)


@given(polys)
def test_format_parse_round_trip(p):
    assert parse_polynomial(format_polynomial(p)) == p


@given(st.lists(polys, min_size=1, max_size=5))
def test_flatten_round_trip(ps):
    mat, (lo, _) = flatten_many(ps)
    for p, row in zip(ps, mat):
        back = LaurentPolynomial({lo + i: int(c) for i, c in enumerate(row)})
        assert back == p


@settings(max_examples=50)
@given(st.dictionaries(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), coeffs, max_size=8))
def test_two_variable_round_trip(terms):
    p = LaurentPolynomial(terms, variable_count=2)
    assume(not p.is_zero())
    assert parse_polynomial(format_polynomial(p)) == p
    w = exponent_window([p])
    assert np.count_nonzero(flatten(p, w).values) == len(p.terms)
