"""Monoid algebras F[x;M] with exact sparse arithmetic.

Elements carry one of three exponent variants — rationals, pairs of
rationals, or lex vectors — ordered by the matching total order.  On top of
the ring operations this module provides Frobenius p-th roots, denominator
clearing into ordinary polynomials, and the bounded factorization/descent
searches used by the verification suites.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import lcm

from .ffpoly import BiPoly, UniPoly, factor_uni, is_prime
from .lexmonoid import LexMonoid, OmegaVector, lex_compare
from .monoids import ProductMonoid, PuiseuxMonoid, make_family
from .rationals import format_rational, parse_rational

FOUND = "found"
NONE = "none"
INCONCLUSIVE = "inconclusive"

NO_IRREDUCIBLE_FACTORIZATION = "no_irreducible_factorization_up_to_bound"
TERMINATED_AT_IRREDUCIBLE = "terminated_at_irreducible"
FACTORED = "factored"


def _exponent_key(e):
    """Sort key putting exponents in descending canonical order."""
    if isinstance(e, OmegaVector):
        return _LexKey(e)
    return e  # Fraction or tuple of Fractions, both natively ordered


class _LexKey:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return lex_compare(self.v, other.v) < 0

    def __eq__(self, other):
        return lex_compare(self.v, other.v) == 0


def _format_exponent(e) -> str:
    if isinstance(e, OmegaVector):
        return f"x^({e})"
    if isinstance(e, tuple):
        return f"X^({format_rational(e[0])})*Y^({format_rational(e[1])})"
    return f"x^({format_rational(e)})"


class AlgebraElement:
    """Immutable sparse element of F[x;M] in canonical descending form."""

    __slots__ = ("field", "terms", "context")

    def __init__(self, field, terms, context):
        if field is not None and not is_prime(field):
            raise ValueError(f"coefficient field must be prime or rational, got {field}")
        self.field = field
        self.context = context
        clean = {}
        for e, c in terms.items():
            c = c % field if field is not None else Fraction(c)
            if c:
                clean[e] = c
        self.terms = clean

    # -- ring structure -------------------------------------------------

    def _check(self, other: "AlgebraElement"):
        if self.field != other.field or self.context is not other.context:
            raise ValueError("field or monoid context mismatch")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and other.field == self.field
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return AlgebraElement(self.field, out, self.context)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.field, {e: -c for e, c in self.terms.items()}, self.context)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _exp_add(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return AlgebraElement(self.field, out, self.context)

    def __pow__(self, k: int) -> "AlgebraElement":
        if k < 0:
            raise ValueError("negative power")
        result = AlgebraElement(self.field, {_exp_zero_like(self): 1}, self.context)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- canonical form -------------------------------------------------

    def ordered_terms(self):
        """(exponent, coefficient) pairs in strictly decreasing exponent order."""
        return sorted(self.terms.items(), key=lambda ec: _exponent_key(ec[0]), reverse=True)

    @property
    def degree(self):
        if self.is_zero():
            raise ValueError("the zero element has no degree")
        return self.ordered_terms()[0][0]

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.ordered_terms():
            coeff = format_rational(c) if self.field is None else str(c)
            parts.append(f"{coeff}*{_format_exponent(e)}")
        return "+".join(parts)

    __repr__ = __str__


def _exp_add(e1, e2):
    if isinstance(e1, tuple):
        return (e1[0] + e2[0], e1[1] + e2[1])
    return e1 + e2


def _exp_zero_like(f: AlgebraElement):
    ctx = f.context
    if isinstance(ctx, LexMonoid):
        return OmegaVector(ctx.table, (0,) * ctx.table.size)
    if isinstance(ctx, ProductMonoid):
        return (Fraction(0), Fraction(0))
    return Fraction(0)


def parse_element(text: str, field, context) -> AlgebraElement:
    """Inverse of str(AlgebraElement) for the given field and context."""
    terms = {}
    if text.strip() == "0":
        return AlgebraElement(field, {}, context)
    for chunk in text.split("+"):
        coeff_s, _, exp_s = chunk.partition("*")
        coeff = int(coeff_s) if field is not None else parse_rational(coeff_s)
        if isinstance(context, LexMonoid):
            if not (exp_s.startswith("x^(") and exp_s.endswith(")")):
                raise ValueError(f"bad lex term {chunk!r}")
            e = OmegaVector.parse(context.table, exp_s[3:-1])
        elif isinstance(context, ProductMonoid):
            xs, _, ys = exp_s.partition("*")
            if not (xs.startswith("X^(") and ys.startswith("Y^(")):
                raise ValueError(f"bad pair term {chunk!r}")
            e = (parse_rational(xs[3:-1]), parse_rational(ys[3:-1]))
        else:
            if not (exp_s.startswith("x^(") and exp_s.endswith(")")):
                raise ValueError(f"bad term {chunk!r}")
            e = parse_rational(exp_s[3:-1])
        if e in terms:
            raise ValueError(f"duplicate exponent in {text!r}")
        terms[e] = coeff
    return AlgebraElement(field, terms, context)


# --------------------------------------------------------------------------
# Frobenius roots and denominator clearing
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RootResult:
    """Outcome of a p-th root attempt: found / none / inconclusive."""

    status: str
    element: AlgebraElement | None = None
    blocking: str | None = None
    certificates: dict = dc_field(default_factory=dict)


def _exp_div(e, p: int):
    if isinstance(e, tuple):
        return (e[0] / p, e[1] / p)
    return Fraction(e) / p


def pth_root(f: AlgebraElement) -> RootResult:
    """Try to write f = g^p over GF(p), guided by monoid membership.

    Every candidate exponent e/p must get a membership Yes from the context;
    a No aborts with status "none", an Unknown with "inconclusive".
    """
    p = f.field
    if p is None:
        raise ValueError("p-th roots require a prime coefficient field")
    if f.is_zero():
        raise ValueError("zero element")
    root_terms = {}
    certs = {}
    for e, c in f.terms.items():
        if isinstance(e, OmegaVector):
            raise ValueError("p-th root descent is not defined for lex exponents")
        q = _exp_div(e, p)
        verdict = f.context.membership(q)
        key = _format_exponent(q)
        if verdict.is_no:
            return RootResult(NONE, blocking=key)
        if verdict.is_unknown:
            return RootResult(INCONCLUSIVE, blocking=key)
        certs[key] = verdict.certificate
        root_terms[q] = c  # GF(p) coefficients are fixed by Frobenius
    g = AlgebraElement(p, root_terms, f.context)
    if g**p != f:
        raise AssertionError("root candidate failed the p-th power check")
    return RootResult(FOUND, element=g, certificates=certs)


def clear_denominators(f: AlgebraElement):
    """Return (L, polynomial image) with x -> x^(1/L) recovering f."""
    if f.is_zero():
        raise ValueError("zero element")
    if f.field is None:
        raise ValueError("clearing requires a prime coefficient field")
    sample = next(iter(f.terms))
    if isinstance(sample, OmegaVector):
        raise ValueError("lex-vector exponents cannot be cleared")
    if isinstance(sample, tuple):
        L = lcm(*(part.denominator for e in f.terms for part in e))
        terms = {}
        for (ex, ey), c in f.terms.items():
            terms[(int(ex * L), int(ey * L))] = c
        return L, BiPoly(f.field, terms)
    L = lcm(*(e.denominator for e in f.terms))
    return L, UniPoly.from_terms(f.field, {int(e * L): c for e, c in f.terms.items()})


def _lift(poly: UniPoly, L: int, field: int, context) -> AlgebraElement:
    terms = {Fraction(e, L): c for e, c in enumerate(poly.coeffs) if c}
    return AlgebraElement(field, terms, context)


# --------------------------------------------------------------------------
# Bounded factorization search
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DescentReport:
    """Result of a bounded factorization/descent search.

    chain holds (element, denominator level) pairs with each element the
    p-th power of its successor; factors is populated for the factored
    outcome; blocking records the query that stopped an inconclusive run.
    """

    outcome: str
    chain: tuple = ()
    factors: tuple = ()
    certificates: tuple = ()
    blocking: str | None = None
    note: str = ""

    def to_json_dict(self) -> dict:
        d = {
            "outcome": self.outcome,
            "chain": [{"element": str(e), "denominator": L} for e, L in self.chain],
            "factors": [str(g) for g in self.factors],
            "certificates": [
                {k: v for k, v in sorted(level.items())} for level in self.certificates
            ],
        }
        if self.blocking is not None:
            d["blocking"] = self.blocking
        if self.note:
            d["note"] = self.note
        return d


def _set_partitions(items: list):
    """All partitions of items into nonempty groups (lists of lists)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def _lift_partition(groups, unit, L, field, context):
    """Lift each group product back to F[x;M]; None if membership blocks.

    Returns ("unknown", blocking) if a membership query is exhausted.
    """
    lifted = []
    for gi, group in enumerate(groups):
        prod = UniPoly(field, (unit,)) if gi == 0 else UniPoly.one(field)
        for g in group:
            prod = prod * g
        for e, c in enumerate(prod.coeffs):
            if not c:
                continue
            verdict = context.membership(Fraction(e, L))
            if verdict.is_no:
                return None
            if verdict.is_unknown:
                return ("unknown", format_rational(Fraction(e, L)))
        lifted.append(_lift(prod, L, field, context))
    return lifted


def factor_in_algebra(f: AlgebraElement, denom_bound: int, seed=None) -> DescentReport:
    """Bounded factorization of f in F[x;M] with rational exponents.

    Strategy: clear denominators, factor the polynomial image over GF(p),
    try to lift groupings of its irreducible factors back through monoid
    membership, and chase Frobenius p-th roots of anything that resists,
    stopping once root denominators exceed denom_bound.
    """
    if f.is_zero() or (len(f.terms) == 1 and _is_constant(f)):
        raise ValueError("zero or unit element")
    context = f.context
    p = f.field
    chain = []
    certs: list[dict] = []
    current = f
    while True:
        L, image = clear_denominators(current)
        if not isinstance(image, UniPoly):
            raise ValueError("factorization search handles univariate elements only")
        chain.append((current, L))
        unit, factors = factor_uni(image, seed=seed)
        instances = [g for g, m in factors for _ in range(m)]
        if len(instances) > 1:
            best = None
            seen = set()
            for part in _set_partitions(instances):
                sig = frozenset(
                    (len(group), tuple(sorted(g.coeffs for g in group))) for group in part
                )
                if len(part) < 2 or sig in seen:
                    continue
                seen.add(sig)
                lifted = _lift_partition(part, unit, L, p, context)
                if lifted is None:
                    continue
                if isinstance(lifted, tuple):
                    return DescentReport(
                        INCONCLUSIVE,
                        chain=tuple(chain),
                        certificates=tuple(certs),
                        blocking=lifted[1],
                    )
                if best is None or len(lifted) > len(best):
                    best = lifted
            if best is not None:
                leaves = []
                for piece in best:
                    sub = factor_in_algebra(piece, denom_bound, seed=seed)
                    if sub.outcome == TERMINATED_AT_IRREDUCIBLE:
                        leaves.append(piece)
                    elif sub.outcome == FACTORED:
                        leaves.extend(sub.factors)
                    else:
                        return sub
                return DescentReport(
                    FACTORED,
                    chain=tuple(chain),
                    factors=tuple(leaves),
                    certificates=tuple(certs),
                )
        # image is irreducible (or nothing lifts): try the Frobenius descent
        root = pth_root(current)
        if root.status == INCONCLUSIVE:
            return DescentReport(
                INCONCLUSIVE,
                chain=tuple(chain),
                certificates=tuple(certs),
                blocking=root.blocking,
            )
        if root.status == NONE:
            return DescentReport(
                TERMINATED_AT_IRREDUCIBLE,
                chain=tuple(chain),
                factors=(current,),
                certificates=tuple(certs),
                blocking=root.blocking,
            )
        root_L = lcm(*(e.denominator for e in root.element.terms))
        if root_L > denom_bound:
            return DescentReport(
                NO_IRREDUCIBLE_FACTORIZATION,
                chain=tuple(chain),
                certificates=tuple(certs),
                note=(
                    f"a further p-th root exists at denominator {root_L}"
                    f" beyond the bound {denom_bound}"
                ),
            )
        certs.append({k: dict(v) for k, v in root.certificates.items()})
        current = root.element


def _is_constant(f: AlgebraElement) -> bool:
    (e,) = f.terms
    if isinstance(e, OmegaVector):
        return e.is_zero()
    if isinstance(e, tuple):
        return e == (Fraction(0), Fraction(0))
    return e == 0


# --------------------------------------------------------------------------
# Named witness constructions
# --------------------------------------------------------------------------


def _pair_element(p: int, context, k: int) -> AlgebraElement:
    q = Fraction(1, p**k)
    zero = Fraction(0)
    return AlgebraElement(
        p, {(q, zero): 1, (zero, q): 1, (q, q): 1}, context
    )


def thm43_descent(p: int, k_max: int, monoid: ProductMonoid | None = None) -> DescentReport:
    """Verify the descent chain for X + Y + XY over GF(p)[x; M x M].

    Checks g_{k+1}^p = g_k for g_k = X^(1/p^k) + Y^(1/p^k) + X^(1/p^k)Y^(1/p^k)
    and collects membership certificates for 1/p^k in each coordinate monoid.
    With monoid = naturals x naturals the descent blocks at k = 1.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    if monoid is None:
        mp = PuiseuxMonoid(make_family(f"mp:{p}"))
        monoid = ProductMonoid([mp, mp])
    chain = []
    certs = []
    prev = None
    for k in range(k_max + 1):
        q = Fraction(1, p**k)
        verdict = monoid.membership((q, q))
        key = _format_exponent((q, q))
        if verdict.is_no:
            return DescentReport(
                TERMINATED_AT_IRREDUCIBLE,
                chain=tuple(chain),
                certificates=tuple(certs),
                blocking=key,
                note=f"descent blocked at k={k}: {format_rational(q)} is not in the monoid",
            )
        if verdict.is_unknown:
            return DescentReport(
                INCONCLUSIVE, chain=tuple(chain), certificates=tuple(certs), blocking=key
            )
        g = _pair_element(p, monoid, k)
        if prev is not None and g**p != prev:
            raise AssertionError(f"descent relation failed at k={k}")
        chain.append((g, p**k))
        certs.append({key: verdict.certificate})
        prev = g
    return DescentReport(
        NO_IRREDUCIBLE_FACTORIZATION, chain=tuple(chain), certificates=tuple(certs)
    )


def cross_terms_distinct(f: AlgebraElement, g: AlgebraElement) -> bool:
    """True iff every exponent of f*g arises from exactly one term pair."""
    seen = set()
    for e1 in f.terms:
        for e2 in g.terms:
            e = _exp_add(e1, e2)
            key = _exponent_key(e)
            if isinstance(key, _LexKey):
                key = key.v.coeffs
            if key in seen:
                return False
            seen.add(key)
    return True


def thm32_witness_chain(N: int, field, k_max: int) -> dict:
    """Verify the division chain below x^a + x^b in the lex-monoid algebra.

    For each 1 <= k <= k_max checks (i) x^(kc) * (x^(a-kc) + x^(b-kc)) equals
    x^a + x^b with distinct cross terms, (ii) membership certificates for
    a - kc and b - kc, and (iii) that 2c divides a - kc via the element
    c' = A_(k+2) + s_(k+2), which satisfies 2c + c' = a - kc.
    """
    if k_max > N - 2:
        raise ValueError(f"k_max={k_max} requires truncation at least {k_max + 2}")
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    M = LexMonoid(N)
    a = M.vector(a=1)
    b = M.vector(b=1)
    c = M.vector(c=1)
    atoms = M.atoms()
    steps = []
    for k in range(1, k_max + 1):
        a_kc = a - c.scale(k)
        b_kc = b - c.scale(k)
        left = AlgebraElement(field, {c.scale(k): 1}, M)
        right = AlgebraElement(field, {a_kc: 1, b_kc: 1}, M)
        target = AlgebraElement(field, {a: 1, b: 1}, M)
        product_ok = left * right == target
        distinct = cross_terms_distinct(left, right)
        mem_a = M.membership(a_kc)
        mem_b = M.membership(b_kc)
        # 2c + c' = a - kc with c' = A_(k+2) + s_(k+2), both atoms
        c_prime = atoms[f"A{k + 2}"] + atoms[f"s{k + 2}"]
        divis_ok = c.scale(2) + c_prime == a_kc
        ok = (
            product_ok
            and distinct
            and mem_a.is_yes
            and mem_b.is_yes
            and divis_ok
        )
        steps.append(
            {
                "k": k,
                "status": "pass" if ok else "fail",
                "product_identity": product_ok,
                "cross_terms_distinct": distinct,
                "membership_a": mem_a.to_json_dict(),
                "membership_b": mem_b.to_json_dict(),
                "divisibility_certificate": {
                    "c_prime": str(c_prime),
                    "c_prime_parts": [f"A{k + 2}", f"s{k + 2}"],
                    "identity": f"2c + c' = a - {k}c",
                    "holds": divis_ok,
                },
            }
        )
    return {
        "truncation": N,
        "field": "rational" if field is None else f"GF({field})",
        "k_max": k_max,
        "status": "pass" if all(s["status"] == "pass" for s in steps) else "fail",
        "steps": steps,
    }
