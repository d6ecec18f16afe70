"""Command-line verification suites.

Each suite reruns one family of results at desk scale and emits a
machine-readable report: `atomiclab suite <name> [options]`.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .algebra import (
    NO_IRREDUCIBLE_FACTORIZATION,
    TERMINATED_AT_IRREDUCIBLE,
    AlgebraElement,
    factor_in_algebra,
    thm32_witness_chain,
    thm43_descent,
)
from .ffpoly import (
    BiPoly,
    UniPoly,
    bi_target,
    cyclotomic_3power,
    default_seed,
    is_irreducible_bi_bruteforce,
    is_irreducible_uni,
    multiplicative_order,
)
from .lexmonoid import minimality_check
from .monoids import (
    DEFAULT_COEFF_BOUND,
    DEFAULT_DEPTH,
    Naturals,
    ProductMonoid,
    PuiseuxMonoid,
    make_family,
    verify_certificate,
)
from .rationals import parse_rational

SUITE_NAMES = ("grams", "prop51", "thm32", "thm43", "lemma41", "lemma53", "thm54")


class SpecError(ValueError):
    """Monoid spec file parse failure, with a line number in the message."""


def parse_monoid_spec(text: str) -> PuiseuxMonoid:
    """Parse the `key = value` monoid spec format into a materialized monoid."""
    family_name = None
    depth = DEFAULT_DEPTH
    coeff_bound = None
    generators = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = (part.strip() for part in line.partition("="))
        if not eq or not key or not value:
            raise SpecError(f"line {lineno}: expected `key = value`, got {raw!r}")
        try:
            if key == "family":
                family_name = value
            elif key == "depth":
                depth = int(value)
                if depth < 1:
                    raise ValueError("depth must be positive")
            elif key == "coeff_bound":
                coeff_bound = int(value)
                if coeff_bound < 1:
                    raise ValueError("coeff_bound must be positive")
            elif key == "generators":
                generators = [parse_rational(part.strip()) for part in value.split(",")]
                for g in generators:
                    if g <= 0:
                        raise ValueError(f"non-positive generator {g}")
            else:
                raise ValueError(f"unknown key {key!r}")
        except ValueError as exc:
            raise SpecError(f"line {lineno}: {exc}") from exc
    if family_name is None:
        raise SpecError("line 0: missing `family = ...`")
    try:
        family = make_family(family_name, generators=generators)
        monoid = PuiseuxMonoid(family, depth)
    except ValueError as exc:
        raise SpecError(f"line 0: {exc}") from exc
    monoid.spec_coeff_bound = coeff_bound
    return monoid


# --------------------------------------------------------------------------
# suites
# --------------------------------------------------------------------------


def _run_check(checks: list, check_id: str, statement: str, fn):
    """Execute fn() -> (ok: bool | str, certificate | None) and record it."""
    start = time.perf_counter()
    ok, certificate = fn()
    runtime_ms = int((time.perf_counter() - start) * 1000)
    status = ok if isinstance(ok, str) else ("pass" if ok else "fail")
    entry = {"id": check_id, "statement": statement, "status": status, "runtime_ms": runtime_ms}
    if certificate is not None:
        entry["certificate"] = certificate
    checks.append(entry)


def suite_grams(cfg) -> list:
    monoid = PuiseuxMonoid(make_family("grams"), cfg["depth"])
    C = cfg["coeff_bound"]
    checks = []
    for label, value in monoid.generators():

        def atom_check(label=label):
            res = monoid.is_atom(label, coeff_bound=C)
            return res.is_atom_up_to, {
                "status": res.status,
                "depth": res.depth,
                "coeff_bound": res.coeff_bound,
            }

        _run_check(checks, f"grams.atom.{label}", f"generator {label} = {value} is an atom "
                   f"up to depth {monoid.depth}, coefficients <= {C}", atom_check)

    def accp_check():
        steps = monoid.accp_chain_check(Fraction(1), 10, coeff_bound=C)
        ok = len(steps) == 10 and all(s["strict"] for s in steps)
        return ok, {"ascents": [s["element"] for s in steps]}

    _run_check(checks, "grams.accp", "the chain of principal ideals above 1 "
               "ascends strictly for 10 steps", accp_check)
    return checks


def suite_prop51(cfg) -> list:
    depth = max(cfg["depth"], 10)
    monoid = PuiseuxMonoid(make_family("prop51"), depth)
    fam = monoid.family
    C = cfg["coeff_bound"]
    checks = []

    def interleaving():
        seq = []
        for n in range(1, 11):
            seq.append(("b", n, fam.b(n)))
            seq.append(("a", n, fam.a(n)))
        ok = all(seq[i][2] > seq[i + 1][2] for i in range(len(seq) - 1))
        return ok, {"order": [f"{kind}{n}" for kind, n, _ in seq]}

    _run_check(checks, "prop51.interleaving",
               "the generators interleave as b1 > a1 > b2 > a2 > ... for n <= 10",
               interleaving)

    for n in range(0, 9):

        def halving(n=n):
            q = Fraction(1, 2**n)
            exact = fam.a(n + 1) + fam.b(n + 1) == q
            res = monoid.membership(q, coeff_bound=C)
            ok = exact and res.is_yes and verify_certificate(monoid, res.certificate, q)
            return ok, res.to_json_dict()

        _run_check(checks, f"prop51.halving.{n}",
                   f"1/2^{n} = a_{n + 1} + b_{n + 1} with a verified certificate", halving)

    atom_monoid = PuiseuxMonoid(make_family("prop51"), 10)
    for n in range(1, 9):
        for kind in ("a", "b"):

            def atom_check(label=f"{kind}{n}"):
                res = atom_monoid.is_atom(label, coeff_bound=C)
                return res.is_atom_up_to, {"status": res.status, "depth": res.depth,
                                           "coeff_bound": res.coeff_bound}

            _run_check(checks, f"prop51.atom.{kind}{n}",
                       f"{kind}_{n} is an atom up to depth 10, coefficients <= {C}", atom_check)
    return checks


def suite_thm32(cfg) -> list:
    checks = []

    def minimality():
        verdicts = minimality_check(10)
        failing = sorted(label for label, ok in verdicts.items() if not ok)
        return not failing, {"atoms": len(verdicts), "failing": failing}

    _run_check(checks, "thm32.minimality",
               "all 45 listed atoms at truncation 10 are minimal generators", minimality)

    for field, tag in ((cfg["field"], f"gf{cfg['field']}"), (None, "rational")):

        def chain(field=field):
            report = thm32_witness_chain(10, field, 8)
            return report["status"] == "pass", report

        _run_check(checks, f"thm32.chain.{tag}",
                   f"x^a + x^b divides down the c-chain for k <= 8 over "
                   f"{'the rationals' if field is None else f'GF({field})'}", chain)
    return checks


def suite_thm43(cfg) -> list:
    checks = []
    for p, k_max in ((2, 4), (3, 3)):

        def descent(p=p, k_max=k_max):
            report = thm43_descent(p, k_max)
            ok = report.outcome == NO_IRREDUCIBLE_FACTORIZATION and len(report.chain) == k_max + 1
            return ok, report.to_json_dict()

        _run_check(checks, f"thm43.descent.p{p}",
                   f"X + Y + XY descends through p-th roots to level {k_max} over "
                   f"GF({p})[x; M_{p} x M_{p}]", descent)

    def control():
        nn = ProductMonoid([Naturals(), Naturals()])
        report = thm43_descent(2, 1, monoid=nn)
        ok = report.outcome == TERMINATED_AT_IRREDUCIBLE and len(report.chain) == 1
        return ok, report.to_json_dict()

    _run_check(checks, "thm43.control",
               "over naturals x naturals the same descent blocks at k = 1", control)
    return checks


def suite_lemma41(cfg) -> list:
    checks = []
    for n, p in ((1, 2), (3, 2), (1, 3), (2, 3), (1, 5), (2, 5)):

        def irr(n=n, p=p):
            return is_irreducible_bi_bruteforce(n, p), None

        _run_check(checks, f"lemma41.irreducible.n{n}p{p}",
                   f"x^{n} + y^{n} + x^{n}y^{n} is irreducible over GF({p}) "
                   "(exhaustive trial division)", irr)

    def reducible22():
        witness = BiPoly(2, {(1, 0): 1, (0, 1): 1, (1, 1): 1})
        ok = not is_irreducible_bi_bruteforce(2, 2) and witness**2 == bi_target(2, 2)
        return ok, {"witness": "(x+y+xy)^2"}

    _run_check(checks, "lemma41.reducible.n2p2",
               "x^2 + y^2 + x^2y^2 = (x + y + xy)^2 over GF(2)", reducible22)
    return checks


def suite_lemma53(cfg) -> list:
    checks = []
    for n in range(4):

        def cyclo(n=n):
            q = cyclotomic_3power(n)
            expected = UniPoly.from_terms(2, {2 * 3**n: 1, 3**n: 1, 0: 1})
            order = multiplicative_order(2, 3 ** (n + 1))
            ok = q == expected and is_irreducible_uni(q) and order == 2 * 3**n
            return ok, {"degree": q.degree, "order_of_2": order}

        _run_check(checks, f"lemma53.cyclotomic.{n}",
                   f"the 3^{n + 1}-th cyclotomic polynomial over GF(2) is "
                   f"x^{2 * 3**n} + x^{3**n} + 1 and irreducible", cyclo)
    return checks


def suite_thm54(cfg) -> list:
    checks = []
    D = cfg["denom_bound"]

    def descent():
        monoid = PuiseuxMonoid(make_family("prop51"), cfg["depth"])
        f = AlgebraElement(2, {Fraction(2): 1, Fraction(1): 1, Fraction(0): 1}, monoid)
        report = factor_in_algebra(f, D, seed=cfg["seed"])
        ok = report.outcome == NO_IRREDUCIBLE_FACTORIZATION
        for k, (e, L) in enumerate(report.chain):
            expected = AlgebraElement(
                2,
                {Fraction(2, 2**k): 1, Fraction(1, 2**k): 1, Fraction(0): 1},
                monoid,
            )
            ok = ok and L == 2**k and e == expected
        return ok, report.to_json_dict()

    _run_check(checks, "thm54.descent",
               f"x^2 + x + 1 admits no irreducible factorization over GF(2)[x; prop51] "
               f"up to denominator {D}", descent)

    def control():
        nat = Naturals()
        f = AlgebraElement(2, {Fraction(2): 1, Fraction(1): 1, Fraction(0): 1}, nat)
        report = factor_in_algebra(f, D, seed=cfg["seed"])
        return report.outcome == TERMINATED_AT_IRREDUCIBLE, report.to_json_dict()

    _run_check(checks, "thm54.control",
               "the same polynomial is irreducible in GF(2)[x; naturals]", control)
    return checks


_SUITES = {
    "grams": suite_grams,
    "prop51": suite_prop51,
    "thm32": suite_thm32,
    "thm43": suite_thm43,
    "lemma41": suite_lemma41,
    "lemma53": suite_lemma53,
    "thm54": suite_thm54,
}


def run_suite(name: str, **overrides) -> dict:
    """Run a named suite and return the report dict."""
    if name != "all" and name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}")
    cfg = {
        "depth": DEFAULT_DEPTH,
        "coeff_bound": DEFAULT_COEFF_BOUND,
        "denom_bound": 8,
        "field": 2,
        "seed": default_seed(),
    }
    cfg.update((k, v) for k, v in overrides.items() if v is not None)
    names = SUITE_NAMES if name == "all" else (name,)
    checks = []
    for suite_name in names:
        checks.extend(_SUITES[suite_name](cfg))
    checks.sort(key=lambda c: c["id"])
    return {"suite": name, "config": cfg, "checks": checks}


def emit_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"suite: {report['suite']}"]
    for check in report["checks"]:
        lines.append(f"{check['status']:<13} {check['id']:<28} {check['statement']}")
    counts = {}
    for check in report["checks"]:
        counts[check["status"]] = counts.get(check["status"], 0) + 1
    lines.append(
        "total: " + ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))
    )
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="atomiclab",
                                     description="bounded verification suites")
    sub = parser.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("suite", help="run a named verification suite")
    sp.add_argument("name", choices=SUITE_NAMES + ("all",))
    sp.add_argument("--depth", type=int, default=None)
    sp.add_argument("--coeff-bound", type=int, default=None)
    sp.add_argument("--denom-bound", type=int, default=None)
    sp.add_argument("--field", type=int, default=None)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--spec", default=None, help="monoid spec file (validated, "
                    "its depth/coeff_bound override the defaults)")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    overrides = {
        "depth": args.depth,
        "coeff_bound": args.coeff_bound,
        "denom_bound": args.denom_bound,
        "field": args.field,
    }
    if args.spec is not None:
        try:
            with open(args.spec, encoding="utf-8") as fh:
                monoid = parse_monoid_spec(fh.read())
        except (OSError, SpecError) as exc:
            print(f"error: {args.spec}: {exc}", file=sys.stderr)
            return 2
        if overrides["depth"] is None:
            overrides["depth"] = monoid.depth
        if overrides["coeff_bound"] is None:
            overrides["coeff_bound"] = monoid.spec_coeff_bound
    try:
        report = run_suite(args.name, **overrides)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(emit_report(report, args.format))
    return 1 if any(c["status"] == "fail" for c in report["checks"]) else 0


if __name__ == "__main__":
    sys.exit(main())
