"""Finite truncation of the rank-aleph_0 lexicographically ordered monoid.

Symbols are ordered a > b > c > s_0 > s_1 > ... > s_N > t_0 > ... > t_N and
vectors are compared lexicographically at the highest symbol where they
differ.  The monoid is generated by the atoms

    c,  s_n,  t_n,  A_n := a - n*c - s_n,  B_n := b - n*c - t_n   (0 <= n <= N)

and membership in the atom-generated submonoid is decided exactly at the
truncation: a No here means "no within truncation N".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .monoids import Membership, NO, YES


@dataclass(frozen=True)
class SymbolTable:
    """Ordered symbol set for truncation depth N: 2N+5 symbols."""

    truncation: int

    def __post_init__(self):
        if self.truncation < 0:
            raise ValueError("truncation must be nonnegative")

    @property
    def size(self) -> int:
        return 2 * self.truncation + 5

    def names(self) -> list[str]:
        n = self.truncation
        return ["a", "b", "c"] + [f"s{i}" for i in range(n + 1)] + [f"t{i}" for i in range(n + 1)]

    def index(self, name: str) -> int:
        n = self.truncation
        if name == "a":
            return 0
        if name == "b":
            return 1
        if name == "c":
            return 2
        kind, idx = name[0], int(name[1:])
        if kind == "s" and 0 <= idx <= n:
            return 3 + idx
        if kind == "t" and 0 <= idx <= n:
            return 4 + n + idx
        raise KeyError(f"symbol {name!r} outside table at truncation {n}")


class OmegaVector:
    """Integer vector over a SymbolTable; ordered lexicographically."""

    __slots__ = ("table", "coeffs")

    def __init__(self, table: SymbolTable, coeffs=None):
        self.table = table
        if coeffs is None:
            self.coeffs = (0,) * table.size
        else:
            coeffs = tuple(coeffs)
            if len(coeffs) != table.size:
                raise ValueError("coefficient length mismatch")
            self.coeffs = coeffs

    @classmethod
    def from_symbols(cls, table: SymbolTable, **exponents) -> "OmegaVector":
        c = [0] * table.size
        for name, e in exponents.items():
            c[table.index(name)] = e
        return cls(table, c)

    @classmethod
    def parse(cls, table: SymbolTable, text: str) -> "OmegaVector":
        c = [0] * table.size
        text = text.strip()
        if text not in ("", "0"):
            for part in text.split():
                name, _, exp = part.partition("^")
                c[table.index(name)] += int(exp) if exp else 1
        return cls(table, c)

    def __getitem__(self, name: str) -> int:
        return self.coeffs[self.table.index(name)]

    def __add__(self, other: "OmegaVector") -> "OmegaVector":
        self._check(other)
        return OmegaVector(self.table, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "OmegaVector") -> "OmegaVector":
        self._check(other)
        return OmegaVector(self.table, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "OmegaVector":
        return OmegaVector(self.table, tuple(-x for x in self.coeffs))

    def scale(self, k: int) -> "OmegaVector":
        return OmegaVector(self.table, tuple(k * x for x in self.coeffs))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coeffs)

    def _check(self, other):
        if not isinstance(other, OmegaVector) or other.table != self.table:
            raise ValueError("vectors over different symbol tables")

    def __eq__(self, other):
        return (
            isinstance(other, OmegaVector)
            and other.table == self.table
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.table, self.coeffs))

    def __lt__(self, other):
        return lex_compare(self, other) < 0

    def __le__(self, other):
        return lex_compare(self, other) <= 0

    def __gt__(self, other):
        return lex_compare(self, other) > 0

    def __ge__(self, other):
        return lex_compare(self, other) >= 0

    def __str__(self):
        parts = [
            f"{name}^{e}"
            for name, e in zip(self.table.names(), self.coeffs)
            if e != 0
        ]
        return " ".join(parts) if parts else "0"

    __repr__ = __str__


def lex_compare(u: OmegaVector, v: OmegaVector) -> int:
    """-1, 0 or 1: comparison at the first (highest) differing symbol."""
    u._check(v)
    for x, y in zip(u.coeffs, v.coeffs):
        if x != y:
            return 1 if x > y else -1
    return 0


def thm32_atoms(table: SymbolTable) -> dict[str, OmegaVector]:
    """The 4(N+1)+1 atoms at truncation N, keyed by label."""
    N = table.truncation
    atoms: dict[str, OmegaVector] = {"c": OmegaVector.from_symbols(table, c=1)}
    for n in range(N + 1):
        atoms[f"s{n}"] = OmegaVector.from_symbols(table, **{f"s{n}": 1})
        atoms[f"t{n}"] = OmegaVector.from_symbols(table, **{f"t{n}": 1})
        atoms[f"A{n}"] = OmegaVector.from_symbols(table, a=1, c=-n, **{f"s{n}": -1})
        atoms[f"B{n}"] = OmegaVector.from_symbols(table, b=1, c=-n, **{f"t{n}": -1})
    return atoms


def _side_solve(total: int, lows: list[int], highs: list[int]):
    """Feasibility of sum(x_n) == total with lows <= x <= highs; returns the
    achievable range of sum(n * x_n) or None."""
    lo_sum = sum(lows)
    hi_sum = sum(highs)
    if total < lo_sum or total > hi_sum:
        return None
    extra = total - lo_sum
    caps = [h - l for l, h in zip(lows, highs)]
    base = sum(n * l for n, l in enumerate(lows))
    # min: push extra mass to the smallest indices, max: to the largest
    min_s, rem = base, extra
    for n, cap in enumerate(caps):
        take = min(cap, rem)
        min_s += n * take
        rem -= take
        if rem == 0:
            break
    max_s, rem = base, extra
    for n in range(len(caps) - 1, -1, -1):
        take = min(caps[n], rem)
        max_s += n * take
        rem -= take
        if rem == 0:
            break
    return min_s, max_s


def _side_assign(total: int, lows: list[int], highs: list[int], target: int) -> list[int]:
    """An assignment with sum(x) == total and sum(n * x_n) == target.

    Assumes feasibility (target within the _side_solve range).  Starts from
    the minimizing assignment and moves unit mass upward until the weighted
    sum matches.
    """
    extra = total - sum(lows)
    caps = [h - l for l, h in zip(lows, highs)]
    x = list(lows)
    rem = extra
    for n, cap in enumerate(caps):
        take = min(cap, rem)
        x[n] += take
        rem -= take
        if rem == 0:
            break
    current = sum(n * v for n, v in enumerate(x))
    while current < target:
        # move one unit from the lowest movable index to the next feasible slot up
        moved = False
        for i in range(len(x)):
            if x[i] > lows[i]:
                for j in range(len(x) - 1, i, -1):
                    if x[j] < highs[j] and current + (j - i) <= target:
                        x[i] -= 1
                        x[j] += 1
                        current += j - i
                        moved = True
                        break
                if moved:
                    break
        if not moved:  # take any upward move; overshoot is impossible by integrality
            for i in range(len(x)):
                if x[i] > lows[i]:
                    j = next(j for j in range(i + 1, len(x)) if x[j] < highs[j])
                    x[i] -= 1
                    x[j] += 1
                    current += j - i
                    moved = True
                    break
        if not moved:
            raise AssertionError("side assignment failed despite feasibility")
    return x


def membership_lex(x: OmegaVector, exclude: Optional[str] = None) -> Membership:
    """Exact membership of x in the atom-generated monoid at its truncation.

    With ``exclude`` set, decides membership in the monoid generated by the
    atoms minus the named one.  Yes certificates are atom multisets.
    """
    table = x.table
    N = table.truncation
    va, vb, vc = x["a"], x["b"], x["c"]
    vs = [x[f"s{n}"] for n in range(N + 1)]
    vt = [x[f"t{n}"] for n in range(N + 1)]

    def bounds(v_coords, total, kind_atom, kind_plain):
        lows, highs = [], []
        for n, v in enumerate(v_coords):
            lo = max(0, -v)
            hi = max(total, 0)
            if exclude == f"{kind_atom}{n}":
                hi = 0  # the A_n/B_n atom is unavailable
            if exclude == f"{kind_plain}{n}":
                # s_n/t_n unavailable: its count v + alpha_n must come out 0
                if v > 0:
                    return None
                lo = hi = min(hi, -v)
                if lo != -v:
                    return None
            if hi < lo:
                return None
            lows.append(lo)
            highs.append(hi)
        return lows, highs

    if va < 0 or vb < 0:
        return Membership(NO, note=f"no within truncation {N}")
    ab = bounds(vs, va, "A", "s")
    bb = bounds(vt, vb, "B", "t")
    if ab is None or bb is None:
        return Membership(NO, note=f"no within truncation {N}")
    a_range = _side_solve(va, *ab)
    b_range = _side_solve(vb, *bb)
    if a_range is None or b_range is None:
        return Membership(NO, note=f"no within truncation {N}")
    total_min = a_range[0] + b_range[0]
    total_max = a_range[1] + b_range[1]
    if exclude == "c":
        target_total = -vc
        if not (total_min <= target_total <= total_max):
            return Membership(NO, note=f"no within truncation {N}")
    else:
        if vc + total_max < 0:
            return Membership(NO, note=f"no within truncation {N}")
        target_total = max(total_min, -vc)
    # split the weighted-sum target between the two sides
    ta = max(a_range[0], min(a_range[1], target_total - b_range[0]))
    tb = target_total - ta
    alphas = _side_assign(va, *ab, ta)
    betas = _side_assign(vb, *bb, tb)
    gamma = vc + sum(n * (al + be) for n, (al, be) in enumerate(zip(alphas, betas)))
    cert: dict[str, int] = {}
    if gamma:
        cert["c"] = gamma
    for n in range(N + 1):
        if alphas[n]:
            cert[f"A{n}"] = alphas[n]
        sigma = vs[n] + alphas[n]
        if sigma:
            cert[f"s{n}"] = sigma
        if betas[n]:
            cert[f"B{n}"] = betas[n]
        tau = vt[n] + betas[n]
        if tau:
            cert[f"t{n}"] = tau
    atoms = thm32_atoms(table)
    check = OmegaVector(table)
    for label, count in cert.items():
        check = check + atoms[label].scale(count)
    assert check == x, "certificate failed independent summation"
    return Membership(YES, certificate=cert)


def membership_lex_bruteforce(x: OmegaVector) -> Optional[dict[str, int]]:
    """Independent oracle: enumerate all atom multisets compatible with x.

    Enumerates every composition of v_a(x) into (alpha_n) and of v_b(x) into
    (beta_n) and checks the forced remaining counts for nonnegativity.
    Exponentially slower than membership_lex but plainly complete.
    """
    table = x.table
    N = table.truncation
    va, vb, vc = x["a"], x["b"], x["c"]
    if va < 0 or vb < 0:
        return None
    vs = [x[f"s{n}"] for n in range(N + 1)]
    vt = [x[f"t{n}"] for n in range(N + 1)]

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    for alphas in compositions(va, N + 1):
        if any(vs[n] + alphas[n] < 0 for n in range(N + 1)):
            continue
        for betas in compositions(vb, N + 1):
            if any(vt[n] + betas[n] < 0 for n in range(N + 1)):
                continue
            gamma = vc + sum(n * (alphas[n] + betas[n]) for n in range(N + 1))
            if gamma < 0:
                continue
            cert = {}
            if gamma:
                cert["c"] = gamma
            for n in range(N + 1):
                if alphas[n]:
                    cert[f"A{n}"] = alphas[n]
                if vs[n] + alphas[n]:
                    cert[f"s{n}"] = vs[n] + alphas[n]
                if betas[n]:
                    cert[f"B{n}"] = betas[n]
                if vt[n] + betas[n]:
                    cert[f"t{n}"] = vt[n] + betas[n]
            return cert
    return None


def minimality_check(N: int) -> dict[str, bool]:
    """For each atom at truncation N: is it outside the span of the others?"""
    if N < 2:
        raise ValueError("minimality check needs truncation N >= 2")
    table = SymbolTable(N)
    atoms = thm32_atoms(table)
    return {
        label: membership_lex(v, exclude=label).is_no
        for label, v in atoms.items()
    }


class LexMonoid:
    """Monoid context for lex-vector exponents in algebra elements."""

    def __init__(self, truncation: int):
        self.table = SymbolTable(truncation)

    def __eq__(self, other):
        return isinstance(other, LexMonoid) and other.table == self.table

    def __repr__(self):
        return f"LexMonoid(N={self.table.truncation})"

    def atoms(self) -> dict[str, OmegaVector]:
        return thm32_atoms(self.table)

    def vector(self, **exponents) -> OmegaVector:
        return OmegaVector.from_symbols(self.table, **exponents)

    def membership(self, x: OmegaVector, depth=None, coeff_bound=None) -> Membership:
        return membership_lex(x)
