import math

import pytest

from momentlab import arith


def brute_divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def test_factorize_examples():
    assert arith.factorize(1).factors == ()
    assert arith.factorize(12).factors == ((2, 2), (3, 1))
    assert arith.factorize(997).factors == ((997, 1),)


@pytest.mark.parametrize("n", range(1, 400))
def test_factorize_multiplies_back(n):
    f = arith.factorize(n)
    assert math.prod(p**e for p, e in f.factors) == n
    for p, _ in f.factors:
        assert all(p % q for q in range(2, int(p**0.5) + 1))


def test_multiplicative_functions():
    assert arith.mobius(30) == -1
    assert arith.mobius(12) == 0
    assert arith.euler_phi(1) == 1
    assert arith.tau_k(4, 3) == 6
    for n in range(1, 200):
        assert arith.euler_phi(n) == sum(1 for x in range(1, n + 1) if math.gcd(x, n) == 1)
        assert arith.tau_k(n, 2) == len(brute_divisors(n))
        assert arith.divisors(n) == brute_divisors(n)


def test_floorroot():
    assert [arith.floorroot(n) for n in (1, 8, 72)] == [1, 2, 6]
    for n in range(1, 500):
        # largest d with d^2 | n
        assert arith.floorroot(n) == max(d for d in range(1, n + 1) if n % (d * d) == 0)


def test_id_star_phi():
    assert arith.id_star_phi(1) == 1
    assert arith.id_star_phi(6) == 15
    for p in (2, 3, 5, 7, 101):
        assert arith.id_star_phi(p) == 2 * p - 1


@pytest.mark.parametrize("c,k,expected", [(5, 1, (5, 1, 1, 1)), (12, 18, (4, 3, 9, 2)), (2, 4, (1, 2, 4, 1))])
def test_ck_factorize_examples(c, k, expected):
    f = arith.ck_factorize(c, k)
    assert (f.c0, f.c2, f.k0, f.k1) == expected
    assert f.check(c, k) == []


def test_ck_factorize_invariants_sweep():
    for c in range(1, 80):
        for k in range(1, 40):
            assert arith.ck_factorize(c, k).check(c, k) == []


def test_crt_and_inverse():
    x, m = arith.crt([2, 3], [5, 7])
    assert m == 35 and x % 5 == 2 and x % 7 == 3
    assert (arith.inverse_mod(3, 7) * 3) % 7 == 1
    with pytest.raises(ValueError):
        arith.inverse_mod(2, 4)


def test_divisor_bounds_small():
    rep = arith.check_divisor_bounds(1000)
    assert rep.ok, rep.failures[:3]
