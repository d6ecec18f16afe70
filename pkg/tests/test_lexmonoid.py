"""Lexicographically ordered free-abelian monoid: order, atoms, membership."""

import random

import pytest

from atomiclab.lexmonoid import (
    LexMonoid,
    OmegaVector,
    SymbolTable,
    lex_compare,
    membership_lex,
    membership_lex_bruteforce,
    minimality_check,
    thm32_atoms,
)


def test_symbol_table_layout():
    t = SymbolTable(2)
    assert t.size == 9
    assert t.names() == ["a", "b", "c", "s0", "s1", "s2", "t0", "t1", "t2"]
    assert t.index("a") == 0
    assert t.index("t2") == 8
    with pytest.raises(ValueError):
        t.index("z")


def test_vector_parse_and_str_round_trip():
    t = SymbolTable(2)
    v = OmegaVector.from_symbols(t, a=1, s0=-2, t1=3)
    assert str(v) == "a^1 s0^-2 t1^3"
    assert OmegaVector.parse(t, str(v)) == v
    zero = OmegaVector(t, (0,) * t.size)
    assert str(zero) == "0"
    assert OmegaVector.parse(t, "0") == zero


def test_lex_order():
    t = SymbolTable(2)
    a = OmegaVector.from_symbols(t, a=1)
    b = OmegaVector.from_symbols(t, b=1)
    c = OmegaVector.from_symbols(t, c=1)
    s0 = OmegaVector.from_symbols(t, s0=1)
    s1 = OmegaVector.from_symbols(t, s1=1)
    assert lex_compare(a, b) > 0
    assert lex_compare(b, c) > 0
    assert lex_compare(s1, s0) < 0  # deeper s-symbols sit lower
    assert lex_compare(c.scale(5), c) > 0
    assert lex_compare(a, a) == 0
    # order respects translation
    assert lex_compare(a + c, b + c) > 0


def test_atom_list():
    t = SymbolTable(2)
    atoms = thm32_atoms(t)
    assert len(atoms) == 13  # 4 * (N + 1) + 1 at N = 2
    zero = OmegaVector(t, (0,) * t.size)
    for v in atoms.values():
        assert lex_compare(v, zero) > 0  # every atom is positive
    assert atoms["A0"] == OmegaVector.from_symbols(t, a=1, s0=-1)
    assert atoms["B1"] == OmegaVector.from_symbols(t, b=1, c=-1, t1=-1)


def test_membership_of_a():
    t = SymbolTable(3)
    a = OmegaVector.from_symbols(t, a=1)
    res = membership_lex(a)
    assert res.is_yes
    assert res.certificate == {"A0": 1, "s0": 1}


def test_membership_no_cases():
    t = SymbolTable(3)
    minus_c = OmegaVector.from_symbols(t, c=-1)
    assert membership_lex(minus_c).is_no
    assert membership_lex(OmegaVector.from_symbols(t, a=-1)).is_no


def test_minimality_all_atoms():
    for N in (2, 4, 10):
        verdicts = minimality_check(N)
        assert len(verdicts) == 4 * (N + 1) + 1
        assert all(verdicts.values())


def test_membership_matches_bruteforce_exhaustively_small():
    t = SymbolTable(0)  # 5 symbols: a, b, c, s0, t0
    mismatches = []
    for coords in _box(5, 2):
        v = OmegaVector(t, coords)
        fast = membership_lex(v)
        slow = membership_lex_bruteforce(v)
        if fast.is_yes != (slow is not None):
            mismatches.append(coords)
    assert not mismatches


def _box(dim, radius):
    import itertools

    return itertools.product(range(-radius, radius + 1), repeat=dim)


def test_membership_matches_bruteforce_random():
    rng = random.Random(20260826)
    for N in (1, 2, 3):
        t = SymbolTable(N)
        for _ in range(800):
            coords = tuple(rng.randint(-3, 3) for _ in range(t.size))
            v = OmegaVector(t, coords)
            fast = membership_lex(v)
            slow = membership_lex_bruteforce(v)
            assert fast.is_yes == (slow is not None), coords


def test_lexmonoid_context():
    M = LexMonoid(2)
    assert len(M.atoms()) == 13
    v = M.vector(a=1, b=1)
    res = M.membership(v)
    assert res.is_yes
