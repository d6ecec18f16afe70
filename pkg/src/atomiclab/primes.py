"""Small prime-number utilities shared by the monoid and polynomial modules."""

from __future__ import annotations

from functools import lru_cache

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all 64-bit inputs."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def nth_prime(n: int) -> int:
    """The n-th prime, 1-based (nth_prime(1) == 2)."""
    if n < 1:
        raise ValueError("prime index must be positive")
    count, cand = 0, 1
    while count < n:
        cand += 1
        while not is_prime(cand):
            cand += 1
        count += 1
    return cand


def nth_odd_prime(n: int) -> int:
    """The n-th odd prime, 1-based (nth_odd_prime(1) == 3)."""
    return nth_prime(n + 1)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 by trial division."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def totient(n: int) -> int:
    if n < 1:
        raise ValueError("totient expects a positive integer")
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result
