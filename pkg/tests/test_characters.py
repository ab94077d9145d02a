import cmath
import math

import numpy as np
import pytest

from momentlab import arith
from momentlab import characters as ch


def test_group_sizes():
    assert len(ch.character_group(1)) == 1
    assert len(ch.character_group(5)) == 4
    for n in range(1, 60):
        assert len(ch.character_group(n)) == arith.euler_phi(n)


def test_mod8_is_klein_four():
    grp = ch.character_group(8)
    assert len(grp) == 4
    for chi in grp:
        assert (chi * chi).is_principal()
        assert all(abs(chi(x).imag) < 1e-12 for x in range(8))


@pytest.mark.parametrize("n", [3, 7, 8, 12, 15, 16, 21, 27])
def test_multiplicative_and_orthogonal(n):
    grp = ch.character_group(n)
    units = [x for x in range(n) if math.gcd(x, n) == 1]
    for chi in grp:
        for a in units:
            for b in units:
                assert abs(chi(a * b) - chi(a) * chi(b)) < 1e-10
        total = sum(chi(x) for x in range(n))
        assert abs(total - (len(units) if chi.is_principal() else 0)) < 1e-9
    assert len(set(grp)) == len(grp)


def test_gauss_sums():
    for n in range(1, 40):
        principal = ch.character_group(n)[0] if n == 1 else next(c for c in ch.character_group(n) if c.is_principal())
        assert abs(ch.gauss_sum(principal) - arith.mobius(n)) < 1e-9
    for chi in ch.character_group(5):
        if chi.is_primitive():
            assert abs(abs(ch.gauss_sum(chi)) - math.sqrt(5)) < 1e-10


def test_gauss_sum_of_lifted_character():
    chi3 = next(c for c in ch.character_group(3) if not c.is_principal())
    chi12 = ch.lift(chi3, 12)
    brute = sum(chi3(x) * cmath.exp(2j * math.pi * x / 12) for x in range(12) if math.gcd(x, 12) == 1)
    assert abs(ch.gauss_sum(chi12) - brute) < 1e-10
    assert chi12.conductor() == 3


def test_L_values():
    triv = ch.character_group(1)[0]
    assert abs(ch.dirichlet_L(2, triv) - math.pi**2 / 6) < 1e-9
    chi0 = ch.character_group(2)[0]
    assert abs(ch.dirichlet_L(2, chi0) - math.pi**2 / 8) < 1e-9


def test_L_vs_long_partial_sum():
    chi = next(c for c in ch.character_group(5) if not c.is_principal())
    s = 1.5 + 1j
    n = np.arange(1, 10**6 + 1)
    vals = chi.values[n % 5] * np.exp(-s * np.log(n))
    partial = vals.sum()
    # the omitted tail of a non-principal sum is O(N^{-1.5})
    assert abs(ch.dirichlet_L(s, chi) - partial) < 1e-7
