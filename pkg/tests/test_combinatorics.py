import pytest

from momentlab import arith
from momentlab import combinatorics as cb


def test_unit_ledger():
    L = cb.build_ledger(1, 1, 1, 1, 1, 1)
    assert (L.delta1, L.delta2, L.delta3, L.delta5) == (1, 1, 1, 1)


def test_ledger_example():
    # delta1 = k1 d / gcd(a, k1 d) = 6 / 2 = 3, hence delta2 = 3*2*5/3 = 10
    L = cb.build_ledger(2, 3, 3, 2, 5, 3)
    assert L.delta1 == 3 and L.delta2 == 10 and L.delta2 % L.k1 == 0
    # with delta1 = 6 the same formula gives 20
    assert cb.delta2(6, 2, 5, 3) == 20


def test_delta5_floorroot():
    d3, d4 = 4, 3
    d5 = d3 * d4
    assert d5 == 12 and arith.floorroot(d5) == arith.floorroot(d3) == 2


@pytest.mark.parametrize("args,invariant", [
    ((4, 1, 1, 1, 1, 1), "a squarefree"),
    ((1, 2, 3, 1, 1, 2), "d | c2"),
    ((1, 2, 2, 2, 1, 2), "(d, k1) = 1"),
    ((1, 2, 2, 1, 1, 3), "d | g0"),
])
def test_ledger_errors_name_the_invariant(args, invariant):
    with pytest.raises(cb.LedgerError) as exc:
        cb.build_ledger(*args)
    assert exc.value.invariant == invariant


def test_random_ledgers():
    assert cb.ledger_check(n=500, seed=3).ok


def test_tau3_examples():
    rep = cb.tau3_decompose_check(2, 4)
    assert rep.ok
    assert any(c.lhs == 56 for c in rep.cases)
    assert cb.tau3_decompose_check(1, 6).ok
    assert cb.tau3_sweep(8, 8).ok


def test_congruence_examples():
    rep = cb.congruence_decompose_check(4, 4)
    assert rep.ok and rep.cases[0].lhs == 8
    assert cb.congruence_decompose_check(1, 5).ok
    assert cb.congruence_sweep(20, 10).ok


def test_triple_poisson_k1_and_k2():
    assert cb.triple_poisson_check(1, tol=1e-8).ok
    assert cb.triple_poisson_check(2, alpha=1).ok


def test_poisson_H_step():
    assert cb.poisson_H_step_check(1, 1, 5, tol=1e-8).ok
    assert cb.poisson_H_step_check(6, 5, 12).ok
