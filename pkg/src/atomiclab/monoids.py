"""Puiseux monoids given by closed-form generator families.

Decides membership, divisibility, atomhood and ACCP-chain strictness with
machine-checkable certificates.  A bounded search can never prove a negative
on an infinitely generated monoid, so verdicts are three-valued:

* ``yes``      -- carries an exact certificate (generator label -> coefficient)
                  whose weighted sum re-evaluates to the queried value;
* ``no``       -- only via a sound, depth-independent valuation obstruction
                  (the queried value has a p-adic valuation below the floor
                  attained by *every* generator of the family);
* ``unknown``  -- the bounded search was exhausted without a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional

from .primes import is_prime, nth_odd_prime, nth_prime, factorize
from .rationals import format_rational, padic_val

YES = "yes"
NO = "no"
UNKNOWN = "unknown"

DEFAULT_DEPTH = 12
DEFAULT_COEFF_BOUND = 64


@dataclass(frozen=True)
class Membership:
    status: str
    certificate: Optional[object] = None  # dict label -> int, or tuple for products
    obstruction: Optional[tuple[int, int]] = None  # (prime, valuation floor)
    depth: Optional[int] = None
    coeff_bound: Optional[int] = None
    note: Optional[str] = None

    @property
    def is_yes(self) -> bool:
        return self.status == YES

    @property
    def is_no(self) -> bool:
        return self.status == NO

    @property
    def is_unknown(self) -> bool:
        return self.status == UNKNOWN

    def to_json_dict(self) -> dict:
        out: dict = {"status": self.status}
        if self.certificate is not None:
            if isinstance(self.certificate, tuple):
                out["certificate"] = {"components": [dict(c) for c in self.certificate]}
            else:
                out["certificate"] = dict(self.certificate)
        if self.obstruction is not None:
            out["obstruction"] = {"prime": self.obstruction[0], "floor": self.obstruction[1]}
        if self.depth is not None:
            out["depth"] = self.depth
        if self.coeff_bound is not None:
            out["coeff_bound"] = self.coeff_bound
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class AtomCheck:
    """Result of is_atom: NonAtom carries a certificate over the other generators."""

    status: str  # "non_atom" | "atom_up_to"
    certificate: Optional[dict] = None
    depth: Optional[int] = None
    coeff_bound: Optional[int] = None

    @property
    def is_atom_up_to(self) -> bool:
        return self.status == "atom_up_to"


class GeneratorFamily:
    """Closed-form indexed generator sequence with valuation metadata."""

    name: str

    def index_valid(self, n: int) -> bool:
        raise NotImplementedError

    def generator(self, n: int) -> Fraction:
        raise NotImplementedError

    def label(self, n: int) -> str:
        raise NotImplementedError

    def valuation_floor(self, p: int) -> Optional[int]:
        """Lower bound on padic_val over ALL generators, or None if unbounded."""
        raise NotImplementedError

    def materialize(self, depth: int) -> list[tuple[str, Fraction]]:
        """First ``depth`` generators as (label, value) pairs, family order."""
        out = []
        n = 0
        while len(out) < depth:
            n += 1
            if self.index_valid(n):
                out.append((self.label(n), self.generator(n)))
        return out


class GramsFamily(GeneratorFamily):
    """Generators 1/(2^n * p_n) with p_n the n-th odd prime."""

    name = "grams"

    def index_valid(self, n: int) -> bool:
        return n >= 1

    def generator(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError(f"index {n} outside generator domain")
        return Fraction(1, 2**n * nth_odd_prime(n))

    def label(self, n: int) -> str:
        return f"g{n}"

    def valuation_floor(self, p: int) -> Optional[int]:
        if p == 2:
            return None
        return -1


class MpFamily(GeneratorFamily):
    """Generators 1/(p^n * p_n) over all n with p_n != p; p_n enumerates all primes."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"mp:{p}"

    def index_valid(self, n: int) -> bool:
        return n >= 1 and nth_prime(n) != self.p

    def generator(self, n: int) -> Fraction:
        if not self.index_valid(n):
            raise ValueError(f"index {n} outside generator domain of {self.name}")
        return Fraction(1, self.p**n * nth_prime(n))

    def label(self, n: int) -> str:
        return f"g{n}"

    def valuation_floor(self, p: int) -> Optional[int]:
        if p == self.p:
            return None
        return -1


class Prop51Family(GeneratorFamily):
    """The pair family a_n = (2^n 3^l_n - 1)/(2^(2n) 3^l_n), b_n the +1 twin.

    Exponent choice l_n = (n+1)(n+2)/2, so l_n - l_{n-1} = n+1 and
    3^(l_n - l_{n-1}) > 2^(n+1).  Indexing interleaves the pairs in
    decreasing value order: index 2k-1 -> b_k, index 2k -> a_k.
    """

    name = "prop51"

    @staticmethod
    def ell(n: int) -> int:
        return (n + 1) * (n + 2) // 2

    def a(self, n: int) -> Fraction:
        e = self.ell(n)
        return Fraction(2**n * 3**e - 1, 2 ** (2 * n) * 3**e)

    def b(self, n: int) -> Fraction:
        e = self.ell(n)
        return Fraction(2**n * 3**e + 1, 2 ** (2 * n) * 3**e)

    def index_valid(self, n: int) -> bool:
        return n >= 1

    def generator(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError(f"index {n} outside generator domain")
        k, r = divmod(n + 1, 2)
        return self.b(k) if r == 0 else self.a(k)

    def label(self, n: int) -> str:
        k, r = divmod(n + 1, 2)
        return f"b{k}" if r == 0 else f"a{k}"

    def valuation_floor(self, p: int) -> Optional[int]:
        if p in (2, 3):
            return None
        return 0  # every generator lies in Z[1/2, 1/3]


class ExplicitFamily(GeneratorFamily):
    """A finite, explicitly listed generator set."""

    name = "explicit"

    def __init__(self, generators):
        gens = [Fraction(g) for g in generators]
        if not gens:
            raise ValueError("explicit family needs at least one generator")
        for g in gens:
            if g <= 0:
                raise ValueError(f"non-positive generator {format_rational(g)}")
        self.gens = gens

    def index_valid(self, n: int) -> bool:
        return 1 <= n <= len(self.gens)

    def generator(self, n: int) -> Fraction:
        if not self.index_valid(n):
            raise ValueError(f"index {n} outside generator domain")
        return self.gens[n - 1]

    def label(self, n: int) -> str:
        return format_rational(self.generator(n))

    def valuation_floor(self, p: int) -> Optional[int]:
        return min(0, min(padic_val(g, p) for g in self.gens))

    def materialize(self, depth: int) -> list[tuple[str, Fraction]]:
        depth = min(depth, len(self.gens))
        return [(self.label(n), self.gens[n - 1]) for n in range(1, depth + 1)]


def make_family(name: str, generators=None) -> GeneratorFamily:
    if name == "grams":
        return GramsFamily()
    if name == "prop51":
        return Prop51Family()
    if name.startswith("mp:"):
        return MpFamily(int(name[3:]))
    if name == "explicit":
        return ExplicitFamily(generators or [])
    raise ValueError(f"unknown family {name!r}")


# --------------------------------------------------------------------------
# bounded membership search
# --------------------------------------------------------------------------


class _SearchSpace:
    """Materialized generators sorted by decreasing value, with prune tables."""

    def __init__(self, gens: list[tuple[str, Fraction]], coeff_bound: int):
        self.gens = sorted(gens, key=lambda lv: lv[1], reverse=True)
        self.C = coeff_bound
        k = len(self.gens)
        # suffix sums for the r <= C * sum(remaining) prune
        self.suffix_sum = [Fraction(0)] * (k + 1)
        for i in range(k - 1, -1, -1):
            self.suffix_sum[i] = self.suffix_sum[i + 1] + self.gens[i][1]
        # primes appearing in any generator denominator
        prime_set: set[int] = set()
        for _, v in self.gens:
            prime_set.update(factorize(v.denominator))
        self.primes = sorted(prime_set)
        # per-suffix valuation floors (min(0, min valuation over suffix))
        self.suffix_floor: list[dict[int, int]] = [dict() for _ in range(k + 1)]
        self.suffix_floor[k] = {p: 0 for p in self.primes}
        for i in range(k - 1, -1, -1):
            v = self.gens[i][1]
            self.suffix_floor[i] = {
                p: min(self.suffix_floor[i + 1][p], padic_val(v, p)) for p in self.primes
            }

    def search(self, q: Fraction, exclude_label: Optional[str] = None,
               all_solutions: bool = False, solution_cap: int = 10000):
        """Exhaustive DFS for q = sum c_i * g_i with 0 <= c_i <= C.

        Returns a list of certificates (possibly empty).  With
        all_solutions=False, stops at the first one found.
        """
        gens = [(lab, val) for lab, val in self.gens if lab != exclude_label]
        k = len(gens)
        if exclude_label is None:
            suffix_sum = self.suffix_sum
            suffix_floor = self.suffix_floor
        else:
            suffix_sum = [Fraction(0)] * (k + 1)
            for i in range(k - 1, -1, -1):
                suffix_sum[i] = suffix_sum[i + 1] + gens[i][1]
            suffix_floor = [dict() for _ in range(k + 1)]
            suffix_floor[k] = {p: 0 for p in self.primes}
            for i in range(k - 1, -1, -1):
                v = gens[i][1]
                suffix_floor[i] = {
                    p: min(suffix_floor[i + 1][p], padic_val(v, p)) for p in self.primes
                }
        C = self.C
        solutions: list[dict] = []
        failed: set[tuple[int, Fraction]] = set()

        # the prime factors that can ever appear in a reachable residual
        residual_primes = sorted(set(self.primes) | set(factorize(q.denominator)))

        def feasible(i: int, r: Fraction) -> bool:
            if r > C * suffix_sum[i]:
                return False
            floors = suffix_floor[i]
            for p in residual_primes:
                v = padic_val(r, p)
                if v < floors.get(p, 0):
                    return False
            return True

        def dfs(i: int, r: Fraction, partial: dict) -> bool:
            if r == 0:
                solutions.append(dict(partial))
                return not all_solutions or len(solutions) >= solution_cap
            if i == k:
                return False
            key = (i, r)
            if key in failed:
                return False
            if not feasible(i, r):
                failed.add(key)
                return False
            lab, g = gens[i]
            top = min(C, int(r / g))
            found = False
            for c in range(top, -1, -1):
                if c:
                    partial[lab] = c
                elif lab in partial:
                    del partial[lab]
                if dfs(i + 1, r - c * g, partial):
                    if not all_solutions:
                        return True
                    found = True
            partial.pop(lab, None)
            if not found and not all_solutions:
                failed.add(key)
            return found

        dfs(0, q, {})
        return solutions


def _prop51_solve(family: Prop51Family, depth: int, coeff_bound: int, q: Fraction,
                  exclude: Optional[tuple[str, int]] = None,
                  all_solutions: bool = False, solution_cap: int = 10000) -> list[dict]:
    """Complete bounded solver for the prop51 family, exploiting pair structure.

    Any representation q = sum_m (alpha_m a_m + beta_m b_m) splits into a
    balanced part k_m = min(alpha_m, beta_m) -- whose contribution
    k_m (a_m + b_m) = k_m / 2^(m-1) is dyadic -- and an unbalanced part
    delta_m = alpha_m - beta_m.  Requiring the residual after level m to have
    3-adic valuation >= -l_{m-1} pins delta_m to a single congruence class
    modulo 3^(m+1), so the deltas are enumerated top-down with at most a few
    candidates each; the remaining dyadic equation is a bounded-digit binary
    knapsack solved by memoized recursion.
    """
    C = coeff_bound
    N = depth
    ell = [family.ell(m) for m in range(N + 1)]
    a = [None] + [family.a(m) for m in range(1, N + 1)]
    b = [None] + [family.b(m) for m in range(1, N + 1)]
    solutions: list[dict] = []

    def finish(r0: Fraction, deltas: dict[int, int]) -> bool:
        # solve sum k_m / 2^(m-1) = r0 with 0 <= k_m <= cap_m
        if r0 < 0:
            return False
        caps = [0] * (N + 1)
        for m in range(1, N + 1):
            d = deltas.get(m, 0)
            caps[m] = 0 if (exclude is not None and exclude[1] == m) else C - abs(d)
        denom = r0.denominator
        if denom & (denom - 1):  # not a power of two
            return False
        if denom > 2 ** (N - 1):
            return False
        R0 = int(r0 * 2 ** (N - 1))
        # capleft[m]: max value levels m..1 can contribute when level m has weight 1
        capleft = [0] * (N + 1)
        for m in range(1, N + 1):
            capleft[m] = caps[m] + 2 * capleft[m - 1]
        dead: set[tuple[int, int]] = set()

        def rec(m: int, R: int, ks: dict[int, int]) -> bool:
            # levels m..1 remain; level m currently has weight 1
            if R == 0:
                emit(ks, deltas)
                return not all_solutions or len(solutions) >= solution_cap
            if m == 0:
                return False
            if (m, R) in dead:
                return False
            if R > capleft[m]:
                dead.add((m, R))
                return False
            got = False
            start = R & 1
            if start > caps[m]:
                dead.add((m, R))
                return False
            for k in range(start, min(caps[m], R) + 1, 2):
                if k:
                    ks[m] = k
                else:
                    ks.pop(m, None)
                if rec(m - 1, (R - k) >> 1, ks):
                    if not all_solutions:
                        return True
                    got = True
            ks.pop(m, None)
            if not got:
                dead.add((m, R))
            return got

        def emit(ks: dict[int, int], deltas: dict[int, int]) -> None:
            cert: dict[str, int] = {}
            for m in range(1, N + 1):
                d = deltas.get(m, 0)
                k = ks.get(m, 0)
                alpha = k + max(d, 0)
                beta = k + max(-d, 0)
                if alpha:
                    cert[f"a{m}"] = alpha
                if beta:
                    cert[f"b{m}"] = beta
            solutions.append(cert)

        return rec(N, R0, {})

    def descend(m: int, r: Fraction, deltas: dict[int, int]) -> bool:
        if r < 0:
            return False
        if m == 0:
            return finish(r, deltas)
        if r != 0:
            # residual must stay inside Z[1/2,1/3] and within remaining depth
            f = factorize(r.denominator)
            if any(p not in (2, 3) for p in f):
                return False
            if f.get(3, 0) > ell[m]:
                return False
            if f.get(2, 0) > max(2 * m, N - 1):
                return False
        mod = 3 ** (m + 1)
        x = r * 3 ** ell[m]
        s = x.numerator * pow(x.denominator, -1, mod) % mod
        w = (-s * pow(4, m, mod)) % mod
        lo, hi = -C, C
        if exclude is not None and exclude[1] == m:
            if exclude[0] == "a":
                hi = 0
            else:
                lo = 0
        # candidates delta == w (mod 3^(m+1)) within [lo, hi]
        first = lo + (w - lo) % mod  # smallest member of the class that is >= lo
        got = False
        d = first
        while d <= hi:
            u = d * a[m] if d > 0 else (-d) * b[m] if d < 0 else Fraction(0)
            if u <= r:
                deltas[m] = d
                if descend(m - 1, r - u, deltas):
                    if not all_solutions:
                        return True
                    got = True
                deltas.pop(m, None)
            d += mod
        return got

    descend(N, q, {})
    return solutions


# --------------------------------------------------------------------------
# monoid objects
# --------------------------------------------------------------------------


class PuiseuxMonoid:
    """A generator family materialized at a finite truncation depth.

    For pair families (prop51), ``depth`` counts pair levels; otherwise it
    counts generators.
    """

    def __init__(self, family: GeneratorFamily, depth: int = DEFAULT_DEPTH):
        if depth < 1:
            raise ValueError("depth must be positive")
        self.family = family
        self.depth = depth
        if isinstance(family, Prop51Family):
            self._gens = family.materialize(2 * depth)
        else:
            self._gens = family.materialize(depth)
        self._by_label = dict(self._gens)

    def __eq__(self, other):
        return (
            isinstance(other, PuiseuxMonoid)
            and self.family.name == other.family.name
            and self.depth == other.depth
            and self._gens == other._gens
        )

    def __repr__(self):
        return f"PuiseuxMonoid({self.family.name}, depth={self.depth})"

    def generators(self) -> list[tuple[str, Fraction]]:
        return list(self._gens)

    def generator(self, n: int) -> Fraction:
        return self.family.generator(n)

    def value(self, label: str) -> Fraction:
        return self._by_label[label]

    def _space(self, coeff_bound: int) -> _SearchSpace:
        return _SearchSpace(self._gens, coeff_bound)

    def _solve(self, q: Fraction, coeff_bound: int,
               exclude_label: Optional[str] = None,
               all_solutions: bool = False) -> list[dict]:
        if isinstance(self.family, Prop51Family):
            exclude = None
            if exclude_label is not None:
                exclude = (exclude_label[0], int(exclude_label[1:]))
            return _prop51_solve(self.family, self.depth, coeff_bound, q,
                                 exclude=exclude, all_solutions=all_solutions)
        return self._space(coeff_bound).search(q, exclude_label=exclude_label,
                                               all_solutions=all_solutions)

    def _floor_obstruction(self, q: Fraction) -> Optional[tuple[int, int]]:
        for p in factorize(q.denominator):
            floor = self.family.valuation_floor(p)
            if floor is not None and padic_val(q, p) < floor:
                return (p, floor)
        return None

    def membership(self, q, depth: Optional[int] = None,
                   coeff_bound: int = DEFAULT_COEFF_BOUND) -> Membership:
        """Decide q in M with a certificate, obstruction, or Unknown."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("membership queries require a nonnegative value")
        if q == 0:
            return Membership(YES, certificate={})
        obstruction = self._floor_obstruction(q)
        if obstruction is not None:
            return Membership(NO, obstruction=obstruction)
        monoid = self if depth is None or depth == self.depth else PuiseuxMonoid(self.family, depth)
        sols = monoid._solve(q, coeff_bound)
        if sols:
            cert = sols[0]
            assert sum(monoid.value(lab) * c for lab, c in cert.items()) == q
            return Membership(YES, certificate=cert)
        return Membership(UNKNOWN, depth=monoid.depth, coeff_bound=coeff_bound)

    def divides(self, x, y, depth: Optional[int] = None,
                coeff_bound: int = DEFAULT_COEFF_BOUND) -> Membership:
        """x | y in M, i.e. y - x in M; negative difference is an immediate No."""
        diff = Fraction(y) - Fraction(x)
        if diff < 0:
            return Membership(NO, note="negative difference")
        return self.membership(diff, depth=depth, coeff_bound=coeff_bound)

    def is_atom(self, label: str, depth: Optional[int] = None,
                coeff_bound: int = DEFAULT_COEFF_BOUND) -> AtomCheck:
        """Search for a representation of generator ``label`` over the others."""
        monoid = self if depth is None or depth == self.depth else PuiseuxMonoid(self.family, depth)
        value = monoid.value(label)
        sols = monoid._solve(value, coeff_bound, exclude_label=label)
        if sols:
            cert = sols[0]
            assert sum(monoid.value(lab) * c for lab, c in cert.items()) == value
            return AtomCheck("non_atom", certificate=cert)
        return AtomCheck("atom_up_to", depth=monoid.depth, coeff_bound=coeff_bound)

    def accp_chain_check(self, base, steps: int,
                         coeff_bound: int = DEFAULT_COEFF_BOUND) -> list[dict]:
        """Check strict ascent of the chain (base/2^n) + M for n < steps.

        Strict ascent at step n is certified by a membership certificate for
        base/2^(n+1), a nonzero element of M; the reverse inclusion fails
        because the difference is negative.
        """
        base = Fraction(base)
        report = []
        for n in range(steps):
            elem = base / 2**n
            half = base / 2 ** (n + 1)
            elem_in = self.membership(elem, coeff_bound=coeff_bound)
            half_in = self.membership(half, coeff_bound=coeff_bound)
            strict = elem_in.is_yes and half_in.is_yes and half > 0
            report.append({
                "step": n,
                "element": format_rational(elem),
                "element_membership": elem_in,
                "ascent_certificate": half_in,
                "strict": strict,
            })
            if not strict:
                break
        return report

    def factor_into_atoms(self, q, depth: Optional[int] = None,
                          coeff_bound: int = DEFAULT_COEFF_BOUND) -> list[dict]:
        """All decompositions of q over the materialized generators, within bounds."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("nonnegative values only")
        monoid = self if depth is None or depth == self.depth else PuiseuxMonoid(self.family, depth)
        sols = monoid._solve(q, coeff_bound, all_solutions=True)
        seen = set()
        out = []
        for cert in sols:
            key = frozenset(cert.items())
            if key not in seen:
                seen.add(key)
                out.append(cert)
        return out


class Naturals:
    """The free rank-1 monoid of nonnegative integers, with exact membership."""

    def __repr__(self):
        return "Naturals()"

    def __eq__(self, other):
        return isinstance(other, Naturals)

    def membership(self, q, depth=None, coeff_bound=None) -> Membership:
        q = Fraction(q)
        if q < 0:
            raise ValueError("membership queries require a nonnegative value")
        if q.denominator == 1:
            cert = {"1": int(q)} if q else {}
            return Membership(YES, certificate=cert)
        p = min(factorize(q.denominator))
        return Membership(NO, obstruction=(p, 0))

    def divides(self, x, y, depth=None, coeff_bound=None) -> Membership:
        diff = Fraction(y) - Fraction(x)
        if diff < 0:
            return Membership(NO, note="negative difference")
        return self.membership(diff)


class ProductMonoid:
    """Finite product of monoid factors; membership holds componentwise."""

    def __init__(self, factors):
        if not factors:
            raise ValueError("product needs at least one factor")
        self.factors = list(factors)

    def __eq__(self, other):
        return isinstance(other, ProductMonoid) and self.factors == other.factors

    def __repr__(self):
        return f"ProductMonoid({self.factors!r})"

    def membership(self, q, depth: Optional[int] = None,
                   coeff_bound: int = DEFAULT_COEFF_BOUND) -> Membership:
        q = tuple(q)
        if len(q) != len(self.factors):
            raise ValueError("component count mismatch")
        results = [
            m.membership(c, depth=depth, coeff_bound=coeff_bound)
            for m, c in zip(self.factors, q)
        ]
        for r in results:
            if r.is_no:
                return Membership(NO, obstruction=r.obstruction, note=r.note)
        if all(r.is_yes for r in results):
            return Membership(YES, certificate=tuple(r.certificate for r in results))
        return Membership(UNKNOWN, depth=depth, coeff_bound=coeff_bound)

    def divides(self, x, y, depth: Optional[int] = None,
                coeff_bound: int = DEFAULT_COEFF_BOUND) -> Membership:
        diff = tuple(Fraction(b) - Fraction(a) for a, b in zip(x, y))
        if any(c < 0 for c in diff):
            return Membership(NO, note="negative difference")
        return self.membership(diff, depth=depth, coeff_bound=coeff_bound)


def verify_certificate(monoid, certificate, q) -> bool:
    """Independent summation check of a Yes certificate."""
    if isinstance(monoid, ProductMonoid):
        return all(
            verify_certificate(m, c, v)
            for m, c, v in zip(monoid.factors, certificate, q)
        )
    if isinstance(monoid, Naturals):
        total = sum(int(lab) * c for lab, c in certificate.items())
        return Fraction(total) == Fraction(q)
    total = sum(monoid.value(lab) * c for lab, c in certificate.items())
    return total == Fraction(q)
