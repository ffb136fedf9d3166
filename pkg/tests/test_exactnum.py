from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tkklab.exactnum import I, ONE, ZERO, CompElement, Scalar, as_scalar, sqrt

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
radicands = st.sampled_from([1, 2, 3, 5, 6])


@st.composite
def scalars(draw):
    terms = draw(st.dictionaries(radicands, st.tuples(rationals, rationals), max_size=3))
    return Scalar.from_terms(terms)


comp = st.lists(st.integers(-3, 3), min_size=8, max_size=8).map(lambda c: CompElement(c, "O"))


@given(scalars(), scalars(), scalars())
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == ZERO


@given(scalars())
def test_inverse(x):
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            ONE / x
    else:
        assert x * (ONE / x) == ONE


@given(scalars())
def test_conjugation_is_an_involution(x):
    assert x.conjugate().conjugate() == x
    assert (x * x.conjugate()).is_real()


@given(st.integers(0, 200), st.integers(1, 30))
def test_sqrt_squares_back(a, b):
    r = sqrt(Fraction(a, b))
    assert r * r == Scalar(Fraction(a, b))


def test_sqrt_normalizes_radicand():
    assert sqrt(12) == Scalar(2) * sqrt(3)
    assert sqrt(Fraction(1, 2)) == sqrt(2) / Scalar(2)
    assert sqrt(-4) == Scalar(2) * I


def test_structural_equality_and_hash():
    a = sqrt(2) + sqrt(3)
    b = sqrt(3) + sqrt(2)
    assert a == b and hash(a) == hash(b)
    assert Scalar(Fraction(1, 2)) == Fraction(1, 2)


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_scalar(0.5)


@given(scalars())
def test_json_round_trip(x):
    assert Scalar.from_json(x.to_json()) == x


@settings(max_examples=60)
@given(comp, comp)
def test_octonions_alternative_and_normed(x, y):
    # alternative law and multiplicative norm
    assert (x * x) * y == x * (x * y)
    assert (y * x) * x == y * (x * x)
    n = lambda z: sum(c * c for c in z.coeffs)
    assert n(x * y) == n(x) * n(y)
