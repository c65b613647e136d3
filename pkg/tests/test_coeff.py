"""Exact coefficient fields: F_p, F_{p^k}, and F_{p^k}(t).

Fixed-value cases pin the documented element constructions and Frobenius
images; the hypothesis suites check the field axioms on randomized triples
for all three kinds of field.
"""

import pytest
from hypothesis import given, settings, strategies as st

from frobinv.coeff import (
    ExtensionField,
    FieldElement,
    FieldError,
    PrimeField,
    RationalFunctionField,
    field_frobenius,
    field_make,
)

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)
F4 = ExtensionField(2, (1, 1, 1))          # F_2[a]/(a^2+a+1)
F9 = ExtensionField(3, (1, 0, 1), gen="b")  # F_3[b]/(b^2+1)
F2T = RationalFunctionField(F2, "t")
F3T = RationalFunctionField(F3, "t")


def el(spec, text):
    return field_make(spec, text)


# -- fixed parsing / reduction cases ---------------------------------------


def test_prime_field_one():
    assert el(F2, "1") == el(F2, "1")
    assert el(F2, "1") + el(F2, "1") == el(F2, "0")


def test_extension_square_of_generator():
    # a*a reduces to a+1 modulo a^2+a+1
    assert el(F4, "a*a") == el(F4, "a+1")
    assert el(F4, "a^3") == el(F4, "1")


def test_rational_function_collapse():
    # t/(t+1) + 1/(t+1) = (t+1)/(t+1) = 1
    assert el(F2T, "t/(t+1) + 1/(t+1)") == el(F2T, "1")


def test_rational_function_canonical_form():
    # common factors cancel and the denominator is monic
    x = el(F3T, "(2*t^2+2*t)/(2*t)")
    assert x == el(F3T, "t+1")


def test_parse_rejects_garbage():
    with pytest.raises(FieldError):
        el(F4, "a +")
    with pytest.raises(FieldError):
        el(F2, "q")
    with pytest.raises(FieldError):
        el(F2T, "1/(t+t+1+1)")  # zero denominator


def test_extension_requires_irreducible_modulus():
    with pytest.raises(FieldError):
        ExtensionField(2, (1, 0, 1))  # a^2+1 = (a+1)^2 over F_2


# -- Frobenius --------------------------------------------------------------


def test_frobenius_prime_field_fixes_elements():
    two = el(F3, "2")
    assert field_frobenius(two, 1) == two  # 2^3 = 8 = 2


def test_frobenius_extension_generator():
    a = el(F4, "a")
    assert field_frobenius(a, 1) == el(F4, "a^2")
    # F_4 has degree 2, so the square of Frobenius is the identity
    assert field_frobenius(a, 2) == a


def test_frobenius_rational_function():
    x = el(F2T, "t+1")
    assert field_frobenius(x, 2) == el(F2T, "t^4+1")


@given(st.integers(0, 4), st.integers(0, 3), st.integers(0, 3))
def test_frobenius_composes(n, e1, e2):
    x = FieldElement(F9, F9.from_int(n)) + el(F9, "b") * el(F9, str(e2 + 1))
    assert field_frobenius(field_frobenius(x, e1), e2) == field_frobenius(x, e1 + e2)


# -- field axioms on randomized triples -------------------------------------


def _prime_elements(spec):
    return st.integers(0, spec.p - 1).map(lambda n: FieldElement(spec, spec.from_int(n)))


def _f4_elements():
    a = el(F4, "a")
    return st.tuples(st.integers(0, 1), st.integers(0, 1)).map(
        lambda c: el(F4, str(c[0])) + a * el(F4, str(c[1])))


def _ratfunc_elements():
    t = el(F2T, "t")
    one = el(F2T, "1")

    def build(cs):
        num = el(F2T, str(cs[0])) + t * el(F2T, str(cs[1]))
        den = t * t * el(F2T, str(cs[2])) + t * el(F2T, str(cs[3])) + one
        return num / den

    return st.tuples(*[st.integers(0, 1)] * 4).map(build)


AXIOM_CASES = [
    ("F5", _prime_elements(F5)),
    ("F4", _f4_elements()),
    ("F2(t)", _ratfunc_elements()),
]


@pytest.mark.parametrize("label,strategy", AXIOM_CASES, ids=[c[0] for c in AXIOM_CASES])
def test_field_axioms(label, strategy):
    @settings(max_examples=50, deadline=None)
    @given(strategy, strategy, strategy)
    def check(x, y, z):
        assert x + y == y + x
        assert x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x - x == y - y

    check()


@pytest.mark.parametrize("label,strategy", AXIOM_CASES, ids=[c[0] for c in AXIOM_CASES])
def test_multiplicative_inverses(label, strategy):
    @settings(max_examples=50, deadline=None)
    @given(strategy)
    def check(x):
        zero = x - x
        if x != zero:
            one = x / x
            assert (one / x) * x == one
            assert x ** 3 == x * x * x

    check()


@given(_ratfunc_elements(), _ratfunc_elements())
@settings(max_examples=50, deadline=None)
def test_fraction_reduction_is_canonical(x, y):
    # equal fractions built along different arithmetic routes share a payload
    lhs = (x + y) * (x + y)
    rhs = x * x + x * y + y * x + y * y
    assert lhs == rhs
    assert hash(lhs) == hash(rhs)
