"""GF(p) polynomial arithmetic, factorization, and the bivariate oracle."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atomiclab.ffpoly import (
    BiPoly,
    PrimeField,
    UniPoly,
    bi_target,
    cyclotomic_3power,
    factor_uni,
    is_irreducible_bi_bruteforce,
    is_irreducible_uni,
    is_primitive_root,
    multiplicative_order,
    poly_gcd,
)


def poly(p, *coeffs):
    """Ascending-coefficient constructor shorthand."""
    return UniPoly(p, coeffs)


def test_prime_field_validation():
    assert PrimeField(7).p == 7
    with pytest.raises(ValueError):
        PrimeField(6)


def test_arithmetic_basics():
    x1 = poly(2, 1, 1)  # x + 1
    assert x1 * x1 == poly(2, 1, 0, 1)  # freshman's dream in char 2
    q, r = divmod(poly(2, 1, 0, 0, 1), x1)
    assert q == poly(2, 1, 1, 1) and r.is_zero()
    assert poly(5, 2, 3) + poly(5, 4, 3) == poly(5, 1, 1)
    with pytest.raises(ZeroDivisionError):
        divmod(x1, UniPoly.zero(2))


def test_string_form():
    assert str(poly(2, 1, 0, 1)) == "1*x^2+1*x^0"
    assert str(UniPoly.zero(3)) == "0"
    assert str(poly(5, 0, 4)) == "4*x^1"


def test_gcd():
    p = 2
    f = poly(p, 1, 1) * poly(p, 1, 1, 1)
    g = poly(p, 1, 1) * poly(p, 1, 0, 1, 1)
    common = poly_gcd(f, g)
    assert f % common == UniPoly.zero(p) % common or (f % common).is_zero()
    assert common == poly(p, 1, 1)


def test_multiplicative_order():
    assert multiplicative_order(2, 9) == 6
    assert multiplicative_order(2, 7) == 3
    assert is_primitive_root(2, 27)
    assert not is_primitive_root(2, 7)
    with pytest.raises(ValueError):
        multiplicative_order(3, 9)


def test_cyclotomic_3power_shape_and_irreducibility():
    for n in range(4):
        q = cyclotomic_3power(n)
        assert q == UniPoly.from_terms(2, {2 * 3**n: 1, 3**n: 1, 0: 1})
        assert q.degree == 2 * 3**n
        assert is_irreducible_uni(q)


def test_irreducibility_known_cases():
    assert is_irreducible_uni(poly(2, 1, 1, 1))  # x^2+x+1
    assert not is_irreducible_uni(poly(2, 1, 0, 1))  # (x+1)^2
    assert is_irreducible_uni(poly(3, 1, 0, 1))  # x^2+1 over GF(3)
    assert not is_irreducible_uni(poly(5, 1, 0, 1))  # x^2+1 = (x+2)(x+3) over GF(5)


def test_factor_known_products():
    p = 2
    f = poly(p, 1, 0, 0, 1, 0, 0, 1) ** 2 * poly(p, 1, 1)
    unit, factors = factor_uni(f)
    assert unit == 1
    assert [(str(g), m) for g, m in factors] == [
        ("1*x^1+1*x^0", 1),
        ("1*x^6+1*x^3+1*x^0", 2),
    ]


def test_factor_pth_powers():
    # (x+1)^4 over GF(2) exercises the zero-derivative branch twice
    unit, factors = factor_uni(poly(2, 1, 1) ** 4)
    assert factors == [(poly(2, 1, 1), 4)]
    unit, factors = factor_uni(poly(3, 1, 1) ** 3)
    assert factors == [(poly(3, 1, 1), 3)]


def _random_poly(rng, p, max_deg):
    deg = rng.randrange(1, max_deg + 1)
    coeffs = [rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)]
    return UniPoly(p, coeffs)


def test_factor_round_trip_500_per_field():
    rng = random.Random(1234)
    for p in (2, 3, 5):
        for _ in range(500):
            f = _random_poly(rng, p, 12)
            unit, factors = factor_uni(f)  # internally asserts the round trip
            product = UniPoly(p, (unit,))
            for g, m in factors:
                assert g.coeffs[-1] == 1  # monic
                product = product * g**m
            assert product == f


def test_factor_agrees_with_irreducibility_test():
    rng = random.Random(99)
    for p in (2, 3, 5):
        for _ in range(60):
            f = _random_poly(rng, p, 8)
            _, factors = factor_uni(f)
            single = len(factors) == 1 and factors[0][1] == 1
            assert is_irreducible_uni(f) == single


def test_factor_deterministic_for_fixed_seed():
    f = poly(2, 1, 1, 0, 1, 1, 0, 1, 1)
    assert factor_uni(f, seed=42) == factor_uni(f, seed=42)


@settings(max_examples=80, deadline=None)
@given(
    st.sampled_from([2, 3, 5]),
    st.lists(st.integers(0, 4), min_size=1, max_size=8),
    st.lists(st.integers(0, 4), min_size=1, max_size=8),
)
def test_degree_additivity_uni(p, ca, cb):
    f, g = UniPoly(p, ca), UniPoly(p, cb)
    if f.is_zero() or g.is_zero():
        return
    assert (f * g).degree == f.degree + g.degree


def test_bipoly_arithmetic():
    w = BiPoly(2, {(1, 0): 1, (0, 1): 1, (1, 1): 1})  # x + y + xy
    assert w**2 == bi_target(2, 2)
    assert str(bi_target(1, 2)) == "1*X^1*Y^1+1*X^1*Y^0+1*X^0*Y^1"


def test_bivariate_oracle():
    for n, p in ((1, 2), (3, 2), (1, 3), (2, 3), (1, 5), (2, 5)):
        assert is_irreducible_bi_bruteforce(n, p), (n, p)
    assert not is_irreducible_bi_bruteforce(2, 2)
    with pytest.raises(ValueError):
        is_irreducible_bi_bruteforce(9, 5)  # beyond the enumeration guard
