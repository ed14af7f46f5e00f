from fractions import Fraction

import numpy as np
import pytest

import oracles
from ramdyn.errors import HigherOrderPole, NegativeValuation, UnsupportedPrime
from ramdyn.padic_sums import (
    K_closed,
    F_expected,
    SumFamily,
    all_families,
    double_factorial,
    eval_F_families,
    eval_K,
    eval_sum,
    f_double_prime_rhs,
    find_simple_poles,
    harmonic_pair,
    nu_p,
    reduce_family,
    reduce_mod_p,
    residue_applicable,
    residue_reduce,
    scaled_reduce,
    table_value,
    wilson_product,
)
from ramdyn.rings import FpElem


def test_double_factorial():
    assert double_factorial(0) == 1 and double_factorial(1) == 1
    assert double_factorial(7) == 105 and double_factorial(8) == 384
    with pytest.raises(ValueError):
        double_factorial(-1)


def test_nu_p_and_reduce():
    assert nu_p(Fraction(49, 3), 7) == 2
    assert nu_p(Fraction(3, 14), 7) == -1
    assert int(reduce_mod_p(Fraction(1, 2), 7)) == 4
    with pytest.raises(NegativeValuation):
        reduce_mod_p(Fraction(1, 7), 7)


def test_eval_examples():
    assert eval_sum(SumFamily("R"), 1) == 1
    assert eval_sum(SumFamily("T"), 1) == 2
    assert eval_sum(SumFamily("S", (1, 1)), 1) == 2


def test_family_validation():
    with pytest.raises(ValueError):
        SumFamily("Q")
    with pytest.raises(ValueError):
        SumFamily("S", (1,))
    with pytest.raises(TypeError):
        SumFamily("S", (1, 0.5))


@pytest.mark.parametrize("n", range(1, 51))
def test_R_T_closed_forms(n):
    dfact = double_factorial
    assert eval_sum(SumFamily("R"), n) == dfact(2 * n + 1) - dfact(2 * n)
    assert eval_sum(SumFamily("T"), n) == dfact(2 * n + 2) - 2 * dfact(2 * n + 1)


def test_against_naive_sums():
    for n in range(1, 15):
        assert eval_sum(SumFamily("R"), n) == oracles.naive_R(n)
        assert eval_sum(SumFamily("T"), n) == oracles.naive_T(n)
        assert eval_sum(SumFamily("S", (3, -2)), n) == oracles.naive_S(3, -2, n)


def test_K_closed_form():
    for n in range(2, 13):
        for k in range(9):
            assert eval_K(n, k) == K_closed(n, k)
    assert eval_K(2, 0) == Fraction(2, 105)
    assert eval_K(2, 3) == Fraction(double_factorial(8), 105)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_K_integral(p):
    for k in range(0, (p + 3) // 2):
        assert nu_p(eval_K(p, k), p) >= 0


@pytest.mark.parametrize("p", [7, 11, 13, 31])
def test_tables(p):
    rng = np.random.default_rng(p)
    for fam in all_families(rng, 10):
        chk = reduce_family(fam, p)
        assert chk.valuation >= 0
        want = oracles.TABLES[fam.tag](*fam.params)
        assert chk.reduced == reduce_mod_p(want, p), fam


def test_R_T_S_near_p():
    p = 11
    assert table_value(SumFamily("R"), p, p - 1) == reduce_family(SumFamily("R"), p, p - 1).reduced
    assert int(reduce_family(SumFamily("R"), p, p - 2).reduced) == int(reduce_mod_p(Fraction(-1, 2), p))
    assert int(reduce_family(SumFamily("T"), p, p - 2).reduced) == p - 1
    s = reduce_family(SumFamily("S", (3, 1)), p, p - 1)
    assert s.match


def test_table_examples():
    assert int(reduce_family(SumFamily("W"), 7).reduced) == 2
    assert reduce_family(SumFamily("SHat", (1, -1, 1)), 11).reduced == reduce_mod_p(Fraction(-27, 4), 11)
    assert reduce_family(SumFamily("VHat", (2, 3, 1)), 7).reduced == reduce_mod_p(Fraction(-33, 2), 7)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_specializations(p):
    for tag, prm, scale, want in oracles.SPECIALIZATIONS:
        got = scaled_reduce(SumFamily(tag, prm), p, scale)
        assert got == reduce_mod_p(want, p), (tag, prm)


def test_unsupported_primes():
    with pytest.raises(UnsupportedPrime):
        reduce_family(SumFamily("Z", (1, 0, 0)), 5)
    with pytest.raises(UnsupportedPrime):
        harmonic_pair(3)


def test_poles():
    p = 11
    a, b = 3, 2
    poles = find_simple_poles([b, a], [1, 2], 1, p - 1, p)
    assert [j for j, _ in poles] == [(p - 1) // 2]
    poles = find_simple_poles([1, 4], [5, 2], 1, p - 1, p)
    assert [j for j, _ in poles] == [(p - 5) // 2]
    assert [j for j, _ in find_simple_poles([0, 1], [4, 2], 1, 6, 7)] == [5]
    with pytest.raises(HigherOrderPole):
        find_simple_poles([1], [0, 0, 1], 7, 7, 7)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_residue_agrees(p):
    rng = np.random.default_rng(100 + p)
    n_checked = 0
    for fam in all_families(rng, 3):
        if residue_applicable(fam, p):
            try:
                r = residue_reduce(fam, p)
            except HigherOrderPole:
                continue
            assert r == reduce_family(fam, p).reduced, fam
            n_checked += 1
    assert n_checked > 0
    assert residue_reduce(SumFamily("Z", (4, 2, 1)), p) == table_value(SumFamily("Z", (4, 2, 1)), p)
    assert int(residue_reduce(SumFamily("X", (5, -3)), p)) == 0


@pytest.mark.parametrize("p", [5, 7, 13])
def test_harmonic(p):
    h, hp = harmonic_pair(p)
    assert int(h + hp) == 0
    if p == 5:
        assert (int(h), int(hp)) == (2, 3)


def test_wilson():
    rng = np.random.default_rng(3)
    for p in (5, 7, 11):
        for _ in range(10):
            a, b = int(rng.integers(1, p)), int(rng.integers(0, p))
            assert int(wilson_product(a, b, p)) == p - 1


def test_F_families():
    assert reduce_mod_p(eval_F_families("F", lambda j: 1, 7), 7) == FpElem(7, 3)
    for p in (7, 11):
        g = lambda j: j * j - 3 * j + 2
        assert reduce_mod_p(eval_F_families("F", g, p), p) == F_expected(g, p)
        for deg in range(0, (p + 3) // 2):
            assert int(reduce_mod_p(eval_F_families("FPrime", lambda j: j**deg, p), p)) == 0
    for n in range(1, 12):
        for f in (lambda i: 1, lambda i: i, lambda i: 2 * i * i - 5):
            assert eval_F_families("FDoublePrime", f, n) == f_double_prime_rhs(f, n)
