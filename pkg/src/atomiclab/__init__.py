"""Exact-arithmetic toolkit for Puiseux monoids and their monoid algebras."""

from .algebra import (
    AlgebraElement,
    DescentReport,
    RootResult,
    clear_denominators,
    cross_terms_distinct,
    factor_in_algebra,
    parse_element,
    pth_root,
    thm32_witness_chain,
    thm43_descent,
)
from .cli import emit_report, main, parse_monoid_spec, run_suite
from .ffpoly import (
    BiPoly,
    PrimeField,
    UniPoly,
    cyclotomic_3power,
    factor_uni,
    is_irreducible_bi_bruteforce,
    is_irreducible_uni,
    is_primitive_root,
    multiplicative_order,
    poly_gcd,
)
from .lexmonoid import (
    LexMonoid,
    OmegaVector,
    SymbolTable,
    lex_compare,
    membership_lex,
    membership_lex_bruteforce,
    minimality_check,
    thm32_atoms,
)
from .monoids import (
    AtomCheck,
    ExplicitFamily,
    GramsFamily,
    Membership,
    MpFamily,
    Naturals,
    ProductMonoid,
    Prop51Family,
    PuiseuxMonoid,
    make_family,
    verify_certificate,
)
from .primes import is_prime, nth_odd_prime, nth_prime
from .rationals import format_rational, padic_val, parse_rational, reduce

__version__ = "0.1.0"
