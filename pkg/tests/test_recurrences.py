import numpy as np
import pytest

import oracles
from ramdyn.closed_form import thmB_coeffs
from ramdyn.errors import DegreeOverflow
from ramdyn.recurrences import (
    RecurrenceState,
    SparsePoly,
    hat_induction_step,
    run_to,
    solve_first_order,
    step,
    trajectory,
    verify_main_lemma_symbolic,
    xs,
)
from ramdyn.series import TruncatedSeries


def poly(p, text):
    x1, x2, x3, x4, x5 = xs(p)
    return eval(text, {"x1": x1, "x2": x2, "x3": x3, "x4": x4, "x5": x5})


@pytest.mark.parametrize("p,letter,m,text", oracles.INTERMEDIATES)
def test_printed_intermediates(p, letter, m, text):
    traj = trajectory(p, m)
    assert getattr(traj[m - 1], letter) == poly(p, text)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_symbolic_main_lemma(p):
    rep = verify_main_lemma_symbolic(p)
    assert rep.passed, rep.mismatches


def test_polynomial_arithmetic():
    p = 7
    x1, x2, *_ = xs(p)
    a = x1 + x2
    assert a * a == x1 * x1 + 2 * x1 * x2 + x2 * x2
    assert (a - a).is_zero()
    assert a**3 == (a * a) * a
    assert int((x1 * x2 + 3).evaluate([2, 5, 0, 0, 0])) == 13 % 7
    assert str(x1 * 3 + 1) == "3*x1 + 1"
    assert (x1 * 7).is_zero()


def test_degree_cap():
    x1 = SparsePoly.var(5, 1, cap=4)
    with pytest.raises(DegreeOverflow):
        x1**5
    with pytest.raises(DegreeOverflow):
        run_to(RecurrenceState.initial(13, cap=6), 13)


def test_B_closed_solution():
    # B_m = x1^(m-1) x2 R_m with R the double-factorial sum, as integers mod p
    from ramdyn.padic_sums import SumFamily, sequence

    p = 11
    R = sequence(SumFamily("R"), p)
    x1, x2, *_ = xs(p)
    for s in trajectory(p, p):
        assert s.B == x1 ** (s.m - 1) * x2 * (R[s.m - 1].numerator % p)


def test_solve_first_order_matches_stepping():
    p = 13
    x1, x2, *_ = xs(p)
    traj = trajectory(p, 8)
    # A_{m+1} = (2m+1) x1 A_m
    A = solve_first_order(lambda k: x1 * (2 * k + 1), lambda k: 0 * x1, 1, x1, 8)
    assert A == traj[-1].A
    # B_{m+1} = (2m+2) x1 B_m + (2m+1) x2 A_m
    B = solve_first_order(lambda k: x1 * (2 * k + 2), lambda k: x2 * (2 * k + 1) * traj[k - 1].A, 1, x2, 8)
    assert B == traj[-1].B
    ints = solve_first_order(lambda k: k, lambda k: 1, 1, 1, 6)
    y = 1
    for k in range(1, 6):
        y = k * y + 1
    assert ints == y


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_specialisation_matches_brute_force(p):
    rng = np.random.default_rng(p)
    s = run_to(RecurrenceState.initial(p), p)
    N = 2 * p + 6
    for _ in range(10):
        a = {j: int(rng.integers(0, p)) for j in range(2, 7)}
        vals = [a[j] for j in range(2, 7)]
        g = oracles.iterate(oracles.parabolic_list(a, N), p, N, p)
        got = [int(x.evaluate(vals)) for x in s.as_tuple()]
        assert got == g[2 * p + 1:2 * p + 6]


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_hat_step(p, n):
    rng = np.random.default_rng(10 * p + n)
    done = 0
    while done < 3:
        a = {j: int(rng.integers(0, p)) for j in range(2, 7)}
        f = TruncatedSeries.parabolic(p, a, 8)
        if int(thmB_coeffs(f, 1).phi) == 0:
            continue
        rep = hat_induction_step(p, n, f)
        assert rep.passed, rep.mismatches
        done += 1


def test_step_increments():
    s = RecurrenceState.initial(7)
    assert step(s).m == 2
    with pytest.raises(ValueError):
        run_to(step(s), 1)
