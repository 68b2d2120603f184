import math
import random
from fractions import Fraction

import pytest
import sympy

from oracles import X, local_expr, random_local
from twinprop.errors import NotLocalError
from twinprop.local import LocalElement, TruncSeries
from twinprop.unipoly import UniPoly

x = UniPoly.gen("x")


def L(num, den=1):
    return LocalElement(num, den)


def test_valuation_examples():
    assert L(x**2 * (x + 1)).valuation() == 2
    assert L(0).valuation() == math.inf
    assert L(x**3 + x**4, 1 - x).valuation() == 3


def test_unit_factor_examples():
    assert L(x**2).unit_factor() == (2, L(1))
    assert L(x + 3).unit_factor() == (0, L(x + 3))
    n, u = L(x**3 * (2 - x), 1 + x).unit_factor()
    assert (n, u) == (3, L(2 - x, 1 + x))


def test_unit_factor_of_zero_raises():
    with pytest.raises(ValueError):
        L(0).unit_factor()


def test_expand_examples():
    assert L(1, 1 - x).expand(3).to_unipoly() == UniPoly([1, 1, 1], "x")
    assert L(x**2).expand(2).to_unipoly().is_zero()
    assert L(1 + x, 1 + x * 2).expand(3).to_unipoly() == UniPoly([1, -1, 2], "x")


def test_expand_matches_sympy_series():
    rng = random.Random(2)
    for _ in range(30):
        e = random_local(rng)
        N = rng.randint(1, 6)
        expected = sympy.series(local_expr(e), X, 0, N).removeO()
        got = sum(sympy.Rational(c.numerator, c.denominator) * X**k for k, c in enumerate(e.expand(N).coeffs))
        assert sympy.expand(expected - got) == 0


def test_denominator_must_not_vanish_at_origin():
    with pytest.raises(NotLocalError):
        L(1, x)
    with pytest.raises(NotLocalError):
        L(1, x * (x + 1))


def test_representation_is_reduced_and_canonical():
    a = L((x + 2) * (x - 1), (x - 1) * (x * 3 + 2))
    assert a.num == (x + 2).scale(Fraction(1, 2))
    assert a.den == (x * Fraction(3, 2) + 1)
    assert a == L(x + 2, x * 3 + 2)
    assert a.den[0] == 1


def test_valuation_is_additive():
    rng = random.Random(4)
    for _ in range(100):
        a, b = random_local(rng), random_local(rng)
        assert (a * b).valuation() == a.valuation() + b.valuation()


def test_expand_times_denominator_is_numerator():
    rng = random.Random(9)
    for _ in range(100):
        e = random_local(rng)
        N = rng.randint(0, 6)
        s = e.expand(N).to_unipoly() * e.den
        lhs = UniPoly(s.coeffs[:N], "x")
        rhs = UniPoly(e.num.coeffs[:N], "x")
        assert lhs == rhs


def test_unit_factor_round_trips():
    rng = random.Random(10)
    for _ in range(100):
        e = random_local(rng)
        if not e:
            continue
        n, u = e.unit_factor()
        assert u.is_unit()
        assert LocalElement.x_power(n) * u == e
        assert n == e.valuation()


def test_field_operations_stay_local():
    a = L(1 + x, 1 - x)
    b = L(x * 2 + 3)
    assert (a / b) * b == a
    assert a - a == L(0)
    with pytest.raises(NotLocalError):
        _ = a / L(x)


def test_series_inverse_and_products():
    s = L(1, 1 - x).expand(5)
    inv = s.inverse()
    assert (s * inv).to_unipoly() == UniPoly.const(1, "x")
    assert inv.to_unipoly() == UniPoly([1, -1], "x")
    prod = L(1 + x).expand(4) * L(1, 1 + x).expand(4)
    assert prod.to_unipoly() == UniPoly.const(1, "x")


def test_series_precision_is_the_smaller_one():
    a = TruncSeries([1, 2, 3], 3)
    b = TruncSeries([1, 1], 2)
    assert (a + b).precision == 2
    assert (a * b).precision == 2
