"""Rational helpers and prime utilities."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from atomiclab.primes import factorize, is_prime, nth_odd_prime, nth_prime, totient
from atomiclab.rationals import (
    INFINITE_VALUATION,
    den,
    format_rational,
    padic_val,
    parse_rational,
    reduce,
)

nonzero = st.integers(min_value=-10**9, max_value=10**9).filter(bool)
rationals = st.fractions(max_denominator=10**6)


def test_reduce_basic():
    assert reduce(6, 4) == Fraction(3, 2)
    assert reduce(-6, -4) == Fraction(3, 2)
    assert reduce(0, 7) == 0
    with pytest.raises(ValueError):
        reduce(1, 0)


def test_den():
    assert den(Fraction(3, 2)) == 2
    assert den(Fraction(4)) == 1
    assert den(Fraction(10, 4)) == 2


def test_format_and_parse():
    assert format_rational(Fraction(1, 2)) == "1/2"
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert format_rational(Fraction(5)) == "5"
    assert parse_rational("1/2") == Fraction(1, 2)
    assert parse_rational("7") == 7
    with pytest.raises(ValueError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("")


@given(rationals)
def test_format_parse_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_padic_val_examples():
    assert padic_val(Fraction(12), 2) == 2
    assert padic_val(Fraction(1, 12), 2) == -2
    assert padic_val(Fraction(5, 7), 2) == 0
    assert padic_val(Fraction(0), 3) == INFINITE_VALUATION
    with pytest.raises(ValueError):
        padic_val(Fraction(1), 4)


@given(st.fractions(max_denominator=10**4).filter(bool),
       st.fractions(max_denominator=10**4).filter(bool),
       st.sampled_from([2, 3, 5, 7]))
def test_padic_val_multiplicative(a, b, p):
    assert padic_val(a * b, p) == padic_val(a, p) + padic_val(b, p)


def test_infinite_valuation_ordering():
    assert INFINITE_VALUATION > 10**18
    assert not (INFINITE_VALUATION < -5)
    assert INFINITE_VALUATION >= INFINITE_VALUATION
    assert INFINITE_VALUATION == INFINITE_VALUATION


def _sieve(limit):
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, int(limit**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i, f in enumerate(flags) if f]


def test_is_prime_matches_sieve():
    primes = set(_sieve(2000))
    for n in range(2001):
        assert is_prime(n) == (n in primes), n


def test_nth_prime_sequences():
    primes = _sieve(200)
    for i, p in enumerate(primes[:30], start=1):
        assert nth_prime(i) == p
    odd = [p for p in primes if p != 2]
    for i, p in enumerate(odd[:20], start=1):
        assert nth_odd_prime(i) == p


def test_factorize_and_totient():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert totient(9) == 6
    assert totient(1) == 1
    n = 2 * 3 * 5 * 7
    assert totient(n) == n * 1 // 2 * 2 // 3 * 4 // 5 * 6 // 7
