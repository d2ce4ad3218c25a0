from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from tripartite.scalar import (
    FieldMismatch,
    NegativeInput,
    QuadExt,
    as_scalar,
    format_scalar,
    modulus,
    parse_scalar,
    quad,
    sign,
    sqrt_in_field,
    squarefree_split,
    to_complex,
    to_float,
)

from conftest import nonzero_fracs, small_fracs

FIELDS = [2, 3, 5, -1, -2]


def to_sympy(x):
    if isinstance(x, QuadExt):
        return sp.Rational(x.a.numerator, x.a.denominator) + sp.Rational(x.b.numerator, x.b.denominator) * sp.sqrt(x.d)
    return sp.Rational(x.numerator, x.denominator)


def _zero(e):
    """Exact zero test: expand after rationalizing denominators."""
    return sp.expand(sp.radsimp(e))


quads = st.builds(quad, small_fracs, small_fracs, st.sampled_from(FIELDS))


def same_field(draw_d):
    return st.tuples(st.builds(quad, small_fracs, small_fracs, st.just(draw_d)), st.builds(quad, small_fracs, small_fracs, st.just(draw_d)))


pairs = st.sampled_from(FIELDS).flatmap(same_field)


@given(pairs)
def test_arithmetic_matches_sympy(pair):
    x, y = pair
    for got, want in [
        (x + y, to_sympy(x) + to_sympy(y)),
        (x - y, to_sympy(x) - to_sympy(y)),
        (x * y, to_sympy(x) * to_sympy(y)),
    ]:
        assert _zero(to_sympy(as_scalar(got)) - want) == 0
    if y != 0:
        assert _zero(to_sympy(as_scalar(x / y)) - to_sympy(x) / to_sympy(y)) == 0


@given(quads)
def test_inverse_and_norm(x):
    if x == 0:
        return
    assert x * (1 / x) == 1
    if isinstance(x, QuadExt):
        assert x * x.galois_conjugate() == x.norm()


@given(pairs)
def test_norm_is_multiplicative(pair):
    x, y = pair
    if isinstance(x, QuadExt) and isinstance(y, QuadExt) and isinstance(x * y, QuadExt):
        assert (x * y).norm() == x.norm() * y.norm()


def test_collapse_to_fraction_and_hash():
    s2 = quad(0, 1, 2)
    assert isinstance(s2 * s2, Fraction) and s2 * s2 == 2
    assert hash(as_scalar(s2 * s2)) == hash(Fraction(2))
    assert quad(3, 0, 5) == 3 and isinstance(quad(3, 0, 5), Fraction)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        quad(0, 1, 2) + quad(0, 1, 3)


def test_d_must_be_squarefree():
    with pytest.raises(ValueError):
        QuadExt(1, 1, 4)
    with pytest.raises(ValueError):
        QuadExt(1, 1, 1)


@given(st.sampled_from([2, 3, 5, 6, 7]), small_fracs, small_fracs)
def test_sign_matches_float(d, a, b):
    x = quad(a, b, d)
    assert sign(x) == (to_float(x) > 0) - (to_float(x) < 0)


@given(st.sampled_from([2, 3, 5]), small_fracs, small_fracs)
def test_sqrt_in_field_roundtrip(d, a, b):
    x = quad(a, b, d)
    if sign(x) < 0:
        return
    r = sqrt_in_field(x * x, d)
    assert r is not None and r * r == x * x and sign(r) >= 0


def test_sqrt_in_field_examples():
    assert sqrt_in_field(Fraction(9, 4)) == Fraction(3, 2)
    assert sqrt_in_field(Fraction(2)) is None
    assert sqrt_in_field(Fraction(1, 2), 2) == quad(0, Fraction(1, 2), 2)
    # (3 + 2 sqrt 2) = (1 + sqrt 2)^2
    assert sqrt_in_field(quad(3, 2, 2)) == quad(1, 1, 2)
    # sqrt((3 + 2 sqrt 2)/16) = (1 + sqrt 2)/4
    assert sqrt_in_field(quad(Fraction(3, 16), Fraction(1, 8), 2)) == quad(Fraction(1, 4), Fraction(1, 4), 2)
    with pytest.raises(NegativeInput):
        sqrt_in_field(Fraction(-1))


@given(nonzero_fracs)
def test_squarefree_split(q):
    k, D = squarefree_split(abs(q))
    assert k * k * D == abs(q)


def test_to_float_precise_under_cancellation():
    # 1 - (1/2) sqrt 2 ... and a value that nearly cancels
    x = quad(99, -70, 2)  # ~ 0.00505
    assert abs(to_float(x) - float(sp.N(99 - 70 * sp.sqrt(2), 30))) < 1e-15
    assert to_complex(quad(1, 2, -1)) == complex(1, 2)


def test_modulus():
    assert modulus(quad(Fraction(3, 5), Fraction(4, 5), -1)) == 1
    assert modulus(Fraction(-3)) == 3


@given(quads)
def test_format_parse_roundtrip(x):
    assert parse_scalar(format_scalar(x)) == x


def test_format_examples():
    assert format_scalar(quad(Fraction(3, 16), Fraction(-1, 8), 2)) == "3/16-1/8*sqrt(2)"
    assert format_scalar(quad(0, Fraction(1, 2), 2)) == "0+1/2*sqrt(2)"
    assert format_scalar(Fraction(-5, 3)) == "-5/3"


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_scalar(0.5)


@pytest.mark.parametrize("text", ["1/0", "abc", "1+sqrt(2)", "1/2*sqrt(2)"])
def test_parse_rejects(text):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_scalar(text)
