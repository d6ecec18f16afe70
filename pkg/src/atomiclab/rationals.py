"""Exact rational arithmetic helpers: reduction, denominators, p-adic valuations.

Rationals are plain ``fractions.Fraction`` values, which already maintain the
reduced-form invariant (coprime numerator/denominator, positive denominator).
This module adds the denominator and valuation functions the monoid
constructions depend on, plus the canonical "n/d" text form used everywhere
in reports and config files.
"""

from __future__ import annotations

from fractions import Fraction

from .primes import is_prime


class _InfiniteValuation:
    """Marker for the valuation of zero; compares above every integer."""

    __slots__ = ()

    def __gt__(self, other):
        return not isinstance(other, _InfiniteValuation)

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _InfiniteValuation)

    def __eq__(self, other):
        return isinstance(other, _InfiniteValuation)

    def __hash__(self):
        return hash("atomiclab-infinite-valuation")

    def __repr__(self):
        return "INFINITE_VALUATION"


INFINITE_VALUATION = _InfiniteValuation()


def reduce(numerator: int, denominator: int) -> Fraction:
    """The unique reduced fraction numerator/denominator (denominator != 0)."""
    if denominator == 0:
        raise ValueError("zero denominator")
    return Fraction(numerator, denominator)


def den(q: Fraction) -> int:
    """d(q): the denominator of q in lowest terms (always >= 1)."""
    return Fraction(q).denominator


def padic_val(q, p: int):
    """Exponent of the prime p in the factorization of the rational q.

    Additive on products.  For q == 0 returns INFINITE_VALUATION, which
    compares greater than every integer.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = Fraction(q)
    if q == 0:
        return INFINITE_VALUATION
    v = 0
    n = abs(q.numerator)
    while n % p == 0:
        n //= p
        v += 1
    d = q.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def format_rational(q) -> str:
    """Serialize q as "n/d" in lowest terms, omitting "/1" for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse the "n/d" (or plain integer) form produced by format_rational."""
    text = text.strip()
    try:
        if "/" in text:
            n, d = text.split("/")
            return reduce(int(n), int(d))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational: {text!r}") from exc
