"""Polynomial arithmetic over prime fields GF(p).

Univariate factorization (squarefree / distinct-degree / equal-degree),
irreducibility testing, cyclotomic polynomials of 3-power order over GF(2),
multiplicative orders, and a brute-force bivariate irreducibility oracle for
the x^n + y^n + x^n y^n family.
"""

from __future__ import annotations

import os
import random
from itertools import product
from math import gcd

from .primes import factorize, is_prime, totient

_SEED_ENV = "ATOMICLAB_SEED"
_DEFAULT_SEED = 0x5EED


def default_seed() -> int:
    return int(os.environ.get(_SEED_ENV, _DEFAULT_SEED))


class PrimeField:
    """GF(p) for a machine-word sized prime p."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class UniPoly:
    """Dense univariate polynomial over GF(p); no trailing zero coefficients."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs=()):
        self.p = p
        c = [x % p for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def zero(cls, p: int) -> "UniPoly":
        return cls(p)

    @classmethod
    def one(cls, p: int) -> "UniPoly":
        return cls(p, (1,))

    @classmethod
    def x(cls, p: int, degree: int = 1, coeff: int = 1) -> "UniPoly":
        return cls(p, (0,) * degree + (coeff,))

    @classmethod
    def from_terms(cls, p: int, terms: dict[int, int]) -> "UniPoly":
        if not terms:
            return cls(p)
        c = [0] * (max(terms) + 1)
        for e, v in terms.items():
            c[e] = v
        return cls(p, c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, UniPoly) and other.p == self.p and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def _check(self, other):
        if self.p != other.p:
            raise ValueError("mixed fields")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = (out[i] + v) % self.p
        return UniPoly(self.p, out)

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.p, tuple(-v for v in self.coeffs))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return UniPoly(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, u in enumerate(self.coeffs):
            if u:
                for j, v in enumerate(other.coeffs):
                    out[i + j] += u * v
        return UniPoly(self.p, [v % self.p for v in out])

    def scale(self, k: int) -> "UniPoly":
        return UniPoly(self.p, tuple(v * k for v in self.coeffs))

    def __divmod__(self, other: "UniPoly"):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.p
        rem = list(self.coeffs)
        q = [0] * max(0, len(rem) - len(other.coeffs) + 1)
        inv_lead = pow(other.coeffs[-1], -1, p)
        d = other.degree
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i]:
                factor = rem[i] * inv_lead % p
                q[i - d] = factor
                for j, v in enumerate(other.coeffs):
                    rem[i - d + j] = (rem[i - d + j] - factor * v) % p
        return UniPoly(p, q), UniPoly(p, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, k: int) -> "UniPoly":
        result = UniPoly.one(self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def powmod(self, k: int, modulus: "UniPoly") -> "UniPoly":
        result = UniPoly.one(self.p) % modulus
        base = self % modulus
        while k:
            if k & 1:
                result = result * base % modulus
            base = base * base % modulus
            k >>= 1
        return result

    def monic(self) -> "UniPoly":
        if self.is_zero() or self.coeffs[-1] == 1:
            return self
        return self.scale(pow(self.coeffs[-1], -1, self.p))

    def derivative(self) -> "UniPoly":
        return UniPoly(self.p, tuple(i * v for i, v in enumerate(self.coeffs))[1:])

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = [
            f"{v}*x^{e}"
            for e, v in sorted(enumerate(self.coeffs), reverse=True)
            if v
        ]
        return "+".join(parts)

    __repr__ = __str__


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def multiplicative_order(r: int, m: int) -> int:
    """Least n >= 1 with r^n == 1 (mod m)."""
    if m <= 1:
        raise ValueError("modulus must exceed 1")
    if gcd(r, m) != 1:
        raise ValueError(f"{r} is not a unit modulo {m}")
    # the order divides phi(m); scan its divisors in increasing order
    phi = totient(m)
    divisors = [1]
    for p, e in factorize(phi).items():
        divisors = [d * p**k for d in divisors for k in range(e + 1)]
    for d in sorted(divisors):
        if pow(r, d, m) == 1:
            return d
    raise AssertionError("order not found below phi(m)")


def is_primitive_root(r: int, m: int) -> bool:
    return multiplicative_order(r, m) == totient(m)


def cyclotomic_3power(n: int) -> UniPoly:
    """Q_{3^(n+1)} over GF(2), computed as (x^(3^(n+1)) - 1)/(x^(3^n) - 1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    num = UniPoly.from_terms(2, {3 ** (n + 1): 1, 0: 1})  # char 2: -1 == 1
    den = UniPoly.from_terms(2, {3**n: 1, 0: 1})
    q, r = divmod(num, den)
    if not r.is_zero():
        raise AssertionError("cyclotomic quotient left a remainder")
    return q


def is_irreducible_uni(f: UniPoly) -> bool:
    """Rabin's irreducibility test via x^(p^d) congruences."""
    n = f.degree
    if n < 1:
        raise ValueError("constant polynomial")
    if n == 1:
        return True
    p = f.p
    x = UniPoly.x(p)
    # x^(p^n) == x mod f
    h = x
    for _ in range(n):
        h = h.powmod(p, f)
    if h != x % f:
        return False
    for q in factorize(n):
        h = x
        for _ in range(n // q):
            h = h.powmod(p, f)
        if poly_gcd(h - x, f).degree != 0:
            return False
    return True


def _squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun-style squarefree decomposition, handling p-th powers in char p."""
    p = f.p
    out: list[tuple[UniPoly, int]] = []
    fp = f.derivative()
    if fp.is_zero():
        # f = g(x^p) = (root of g)^p where root takes coefficient c at e/p
        root = UniPoly(p, tuple(f.coeffs[i] for i in range(0, len(f.coeffs), p)))
        return [(g, m * p) for g, m in _squarefree_decomposition(root)]
    c = poly_gcd(f, fp)
    w = (f // c).monic()
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        factor = (w // y).monic()
        if factor.degree > 0:
            out.append((factor, i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        # what remains is a p-th power; the recursion's zero-derivative
        # branch supplies the factor of p in the multiplicities
        out.extend(_squarefree_decomposition(c))
    return out


def _distinct_degree(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Split a squarefree monic f into products of irreducibles per degree."""
    p = f.p
    out = []
    x = UniPoly.x(p)
    h = x
    d = 0
    rest = f
    while rest.degree > 2 * d + 1:
        d += 1
        h = h.powmod(p, rest)
        g = poly_gcd(h - x, rest)
        if g.degree > 0:
            out.append((g, d))
            rest = (rest // g).monic()
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _equal_degree(f: UniPoly, d: int, rng: random.Random) -> list[UniPoly]:
    """Cantor-Zassenhaus split of f into its irreducible factors of degree d.

    Characteristic 2 uses the trace map; odd characteristic the usual
    random-exponent method.
    """
    p = f.p
    if f.degree == d:
        return [f.monic()]
    while True:
        t = UniPoly(p, [rng.randrange(p) for _ in range(f.degree)])
        if t.degree < 1:
            continue
        if p == 2:
            g = UniPoly.zero(2)
            cur = t % f
            for _ in range(d):
                g = g + cur
                cur = cur * cur % f
            g = poly_gcd(g, f)
        else:
            g = poly_gcd(t, f)
            if g.degree == 0:
                e = (p**d - 1) // 2
                g = poly_gcd(t.powmod(e, f) - UniPoly.one(p), f)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d, rng) + _equal_degree((f // g).monic(), d, rng)


def factor_uni(f: UniPoly, seed: int | None = None) -> tuple[int, list[tuple[UniPoly, int]]]:
    """Full factorization: (leading unit, [(monic irreducible, multiplicity)]).

    Deterministic for a fixed seed (default from ATOMICLAB_SEED).
    """
    if f.degree < 1:
        raise ValueError("constant polynomial")
    rng = random.Random(default_seed() if seed is None else seed)
    unit = f.coeffs[-1]
    monic = f.monic()
    found: dict[UniPoly, int] = {}
    for sqf, mult in _squarefree_decomposition(monic):
        for part, d in _distinct_degree(sqf.monic()):
            for irr in _equal_degree(part, d, rng):
                found[irr] = found.get(irr, 0) + mult
    factors = sorted(found.items(), key=lambda fm: (fm[0].degree, fm[0].coeffs))
    # round-trip guard: the factorization must reproduce f exactly
    check = UniPoly(f.p, (unit,))
    for g, m in factors:
        check = check * g**m
    if check != f:
        raise AssertionError("factorization failed round-trip check")
    return unit, factors


# --------------------------------------------------------------------------
# bivariate oracle
# --------------------------------------------------------------------------


class BiPoly:
    """Sparse bivariate polynomial over GF(p): {(x_deg, y_deg): coeff}."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: dict[tuple[int, int], int] | None = None):
        self.p = p
        self.terms = {}
        for key, v in (terms or {}).items():
            v %= p
            if v:
                self.terms[key] = v

    @classmethod
    def zero(cls, p: int) -> "BiPoly":
        return cls(p)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, BiPoly) and other.p == self.p and other.terms == self.terms

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(self.p, out)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        out: dict[tuple[int, int], int] = {}
        for (i, j), u in self.terms.items():
            for (k, l), v in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + u * v
        return BiPoly(self.p, out)

    def __pow__(self, k: int) -> "BiPoly":
        result = BiPoly(self.p, {(0, 0): 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def y_coefficients(self) -> list[UniPoly]:
        """Coefficients in y, each a UniPoly in x, index = y-degree."""
        if self.is_zero():
            return []
        dy = max(j for _, j in self.terms)
        rows: list[dict[int, int]] = [dict() for _ in range(dy + 1)]
        for (i, j), v in self.terms.items():
            rows[j][i] = v
        return [UniPoly.from_terms(self.p, row) for row in rows]

    @classmethod
    def from_y_coefficients(cls, p: int, rows: list[UniPoly]) -> "BiPoly":
        terms = {}
        for j, poly in enumerate(rows):
            for i, v in enumerate(poly.coeffs):
                if v:
                    terms[(i, j)] = v
        return cls(p, terms)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for (i, j), v in sorted(self.terms.items(), reverse=True):
            parts.append(f"{v}*X^{i}*Y^{j}")
        return "+".join(parts)

    __repr__ = __str__


def _prem_y(f_rows: list[UniPoly], g_rows: list[UniPoly], p: int) -> bool:
    """True iff g divides f in F(x)[y] (pseudo-remainder in y vanishes)."""
    f = list(f_rows)
    dg = len(g_rows) - 1
    lead = g_rows[-1]
    while len(f) - 1 >= dg and any(not c.is_zero() for c in f):
        while f and f[-1].is_zero():
            f.pop()
        if len(f) - 1 < dg:
            break
        # multiply f by lead and subtract f_lead * y^(df-dg) * g
        top = f[-1]
        df = len(f) - 1
        f = [c * lead for c in f]
        for j, gj in enumerate(g_rows):
            idx = df - dg + j
            f[idx] = f[idx] - top * gj
        f.pop()
    return all(c.is_zero() for c in f)


def bi_target(n: int, p: int) -> BiPoly:
    """The polynomial x^n + y^n + x^n y^n over GF(p)."""
    return BiPoly(p, {(n, 0): 1, (0, n): 1, (n, n): 1})


def is_irreducible_bi_bruteforce(n: int, p: int, guard: int = 2**24) -> bool:
    """Exhaustive trial division deciding irreducibility of x^n+y^n+x^ny^n.

    Enumerates every candidate factor g with 1 <= deg_y g <= n-1 whose
    y-coefficients are polynomials in x of degree <= n (any proper factor
    must look like this, since deg_x and deg_y are both n), and tests
    divisibility in F(x)[y] via pseudo-division.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be positive")
    f = bi_target(n, p)
    f_rows = f.y_coefficients()
    # content in y is trivial: gcd(x^n, 1 + x^n) = 1, so factors have deg_y >= 1
    count = sum((p ** (n + 1)) ** (dy + 1) for dy in range(1, n))
    if count > guard:
        raise ValueError("out of brute-force range")
    coeff_space = list(product(range(p), repeat=n + 1))
    for dy in range(1, n):
        for rows in product(coeff_space, repeat=dy + 1):
            if all(v == 0 for v in rows[-1]):
                continue  # leading y-coefficient must be nonzero
            g_rows = [UniPoly(p, r) for r in rows]
            if _prem_y(f_rows, g_rows, p):
                return False
    return True
