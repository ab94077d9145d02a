import cmath
import math

import pytest

from momentlab import arith
from momentlab import expsums as es


def brute_S(m, n, c):
    return sum(cmath.exp(2j * math.pi * (m * x + n * pow(x, -1, c)) / c) for x in range(c) if math.gcd(x, c) == 1) if c > 1 else 1


def test_kloosterman_examples():
    assert abs(es.kloosterman_value(1, 1, 3) - (-1)) < 1e-12
    assert abs(es.kloosterman_value(1, 2, 5) - (-1 - math.sqrt(5))) < 1e-10
    for c in range(1, 40):
        assert abs(es.kloosterman_value(0, 0, c) - arith.euler_phi(c)) < 1e-9


def test_kloosterman_exact_is_integer_for_real_sums():
    assert es.exact_value(es.kloosterman(1, 1, 3, exact=True), 3) == pytest.approx(-1)


@pytest.mark.parametrize("c", range(2, 30))
def test_kloosterman_vs_brute(c):
    for m in range(-2, 4):
        for n in range(0, 4):
            assert abs(es.kloosterman_value(m, n, c) - brute_S(m, n, c)) < 1e-9


def test_ramanujan():
    assert es.ramanujan(4, 8).value == pytest.approx(-4)
    for c in range(1, 50):
        assert es.ramanujan(1, c).value == pytest.approx(arith.mobius(c))
        for n in range(0, 13):
            a = es.ramanujan(n, c, method="divisor").value
            b = es.ramanujan(n, c, method="brute").value
            assert abs(a - b) < 1e-9


def test_H_examples():
    assert abs(es.H_closed(1, 1, 1, 5).value - 5 * es.e(-1 / 5)) < 1e-10
    assert abs(es.H_bruteforce(1, 1, 1, 5).value - 5 * es.e(-1 / 5)) < 1e-10
    assert abs(es.H_bruteforce(2, 3, 1, 4).value - es.H_closed(2, 3, 1, 4).value) < 1e-9
    # solvability: gcd(m1, c) must equal gcd(k, c)
    assert abs(es.H_closed(2, 1, 1, 4).value) < 1e-12


def test_H_small_grid():
    for c in range(1, 30):
        for k in range(0, 8):
            for m1 in range(1, 5):
                for na in range(1, 4):
                    a = es.H_closed(k, m1, na, c).value
                    b = es.H_bruteforce(k, m1, na, c).value
                    assert abs(a - b) <= 1e-9 * c, (k, m1, na, c)


def test_A_examples():
    assert es.A_bruteforce(0, 0, 0, 1, 1).value == pytest.approx(1)
    assert es.A_bruteforce(1, 1, 1, 1, 2).value == pytest.approx(2)
    assert es.A_closed(1, 1, 1, 1, 2).value == pytest.approx(2)
    assert es.A_closed(0, 0, 0, 1, 6).value == pytest.approx(90)
    assert es.A_bruteforce(0, 0, 0, 5, 6).value == pytest.approx(90)


def test_A_small_grid():
    for k in range(1, 10):
        for alpha in [a for a in range(1, k + 1) if math.gcd(a, k) == 1]:
            for p in [(1, 0, 2), (-1, 3, 2), (0, 0, 1), (2, -2, 1)]:
                a = es.A_closed(*p, alpha, k).value
                b = es.A_bruteforce(*p, alpha, k).value
                assert abs(a - b) <= 1e-9 * k**3


def test_A_rejects_bad_alpha():
    with pytest.raises(es.PreconditionError):
        es.A_closed(1, 1, 1, 2, 4)
