import math

import pytest

from momentlab import cusps
from momentlab import expsums as es


def test_normalize_examples():
    inf = cusps.normalize_cusp(6, 1, 0)
    assert inf.f == 6 and inf.is_infinity()
    assert cusps.normalize_cusp(6, 1, 6) == inf
    c = cusps.normalize_cusp(4, 1, 2)
    assert (c.v, c.f) == (1, 2)
    assert len(cusps.all_cusps(1)) == 1


@pytest.mark.parametrize("N", range(1, 40))
def test_cusp_count(N):
    # number of cusps of Gamma_0(N) is sum_{d|N} phi(gcd(d, N/d))
    expected = sum(math.gcd(d, N // d) and _phi(math.gcd(d, N // d)) for d in range(1, N + 1) if N % d == 0)
    reps = cusps.all_cusps(N)
    assert len(reps) == expected
    for i, a in enumerate(reps):
        for b in reps[i + 1:]:
            assert not cusps.cusps_equivalent(a.v, a.f, b.v, b.f, N)


def _phi(n):
    return sum(1 for x in range(1, n + 1) if math.gcd(x, n) == 1)


def test_allowed_moduli_examples():
    got = cusps.allowed_moduli(6, 2, 3, 10)
    assert got == pytest.approx([2 * math.sqrt(3), 4 * math.sqrt(3)])
    assert cusps.allowed_moduli(5, 5, 1, 20) == pytest.approx([5, 10, 15, 20])


@pytest.mark.parametrize("N,r,s,bound", [(6, 2, 3, 10), (12, 3, 4, 30), (5, 5, 1, 20), (10, 2, 5, 25)])
def test_allowed_moduli_vs_enumeration(N, r, s, bound):
    assert cusps.enumerate_lower_left(N, r, s, bound) == pytest.approx(cusps.allowed_moduli(N, r, s, bound))


def test_doublecoset_kloosterman_examples():
    assert cusps.doublecoset_kloosterman(6, 2, 3, 1, 1, 2).value == pytest.approx(1)
    for c in (5, 10, 15):
        for m in range(1, 4):
            for n in range(1, 4):
                a = cusps.doublecoset_kloosterman(5, 5, 1, m, n, c).value
                assert abs(a - es.kloosterman_value(m, n, c)) < 1e-9


def test_representative_order_does_not_matter():
    a = cusps.doublecoset_kloosterman(12, 3, 4, 1, 2, 3, order="ascending").value
    b = cusps.doublecoset_kloosterman(12, 3, 4, 1, 2, 3, order="descending").value
    assert abs(a - b) < 1e-12


@pytest.mark.parametrize("N,r,s", [(6, 2, 3), (15, 3, 5), (10, 5, 2)])
def test_atkin_lehner_identity_spot(N, r, s):
    rep = cusps.verify_atkin_lehner_identity(N, r, s, cmax=30, mmax=4, nmax=4)
    assert rep.ok and rep.total > 0


def test_bad_rs_rejected():
    with pytest.raises(ValueError):
        cusps.allowed_moduli(6, 2, 2, 10)
