import cmath
import math

import mpmath
import pytest

from momentlab import specfun as sf


def test_gamma_values():
    assert sf.gamma_complex(1) == pytest.approx(1)
    assert abs(sf.gamma_complex(0.5) - math.sqrt(math.pi)) < 1e-12
    # recurrence oracle: Gamma(2+3i) = (1+3i)(3i) Gamma(3i), and the same from 0.5+3i upward
    g = sf.gamma_complex(2 + 3j)
    assert abs(g - (1 + 3j) * 3j * sf.gamma_complex(3j)) < 1e-12 * abs(g)
    g5 = sf.gamma_complex(2.5 + 3j)
    assert abs(g5 - (1.5 + 3j) * (0.5 + 3j) * sf.gamma_complex(0.5 + 3j)) < 1e-12 * abs(g5)


@pytest.mark.parametrize("z", [0.3 + 0.1j, -2.5 + 1j, 10 - 40j, 0.01j + 3, -7.3 - 2j])
def test_loggamma_vs_mpmath(z):
    ref = complex(mpmath.gamma(z))
    assert abs(sf.gamma_complex(z) - ref) <= 1e-11 * abs(ref)


def test_gamma_poles():
    with pytest.raises(sf.PoleError):
        sf.gamma_complex(-3)
    assert sf.rgamma_complex(-3) == 0


def test_mellin_closed_examples():
    assert sf.mellin_J_closed(1, 0) == pytest.approx(1)
    assert sf.mellin_J_closed(1, 1) == pytest.approx(1)
    assert sf.mellin_K_closed(1, 0) == pytest.approx(math.pi / 2)
    assert sf.mellin_K_closed(2, 0) == pytest.approx(1)


def test_mellin_quadrature():
    q = sf.mellin_J_quad(0.7, 3)
    assert abs(q.value - sf.mellin_J_closed(0.7, 3)) < 1e-6
    k = sf.mellin_K_quad(1.3, 0.7)
    assert abs(k.value - sf.mellin_K_closed(1.3, 0.7)) < 1e-8


def test_kernel_special_cases():
    s = 0.8 + 0.3j
    minus = sf.kuznetsov_kernels(s, sf.Spectral("minus", 0.0))
    assert abs(minus - 2 ** (s - 1) * sf.gamma_complex(s / 2) ** 2 / math.pi) < 1e-12
    for t in (0.3, 1.7, 4.0):
        assert abs(sf.kuznetsov_kernels(1.0, sf.Spectral("plus", t)).imag) < 1e-12
    for sp in sf.DEFAULT_SPECTRA:
        assert abs(cmath.exp(sf.log_kuznetsov_kernel(s, sp)) - sf.kuznetsov_kernels(s, sp)) < 1e-10


def test_stirling_slope():
    assert abs(sf.stirling_slope(1.5, 4, (10.0, 100.0)) - 0.5) < 0.1


def test_kuznetsov_direct_vs_mellin_small():
    rep = sf.kuznetsov_transform_consistency(
        phi=sf.BumpWeight(1.0, 2.0), spectral=[sf.Spectral("holomorphic", 4), sf.Spectral("minus", 0.0)], X=1.0
    )
    assert rep.ok, rep.failures


def test_script_H_values():
    assert abs(sf.script_H(0.5, 0.25, 0.25, 4) - 4 / 9) < 1e-12
    # symmetric in w and u
    a = sf.script_H(0.3 + 1j, 0.1, 0.4 - 0.2j, 6)
    b = sf.script_H(0.3 + 1j, 0.4 - 0.2j, 0.1, 6)
    assert abs(a - b) < 1e-14 * abs(a)
    with pytest.raises(sf.DomainError):
        sf.script_H(0.5, 0.25, 0.25, 3)


def test_script_H_simple_pole():
    # (s+w+u) H stays bounded as s+w+u -> 0+
    vals = [eps * sf.script_H(eps / 3, eps / 3, eps / 3, 2) for eps in (1e-3, 1e-5, 1e-7)]
    assert abs(vals[-1] - vals[-2]) < 1e-4 * abs(vals[-1])
    assert abs(vals[-1]) > 0.01


def test_hankel_J():
    for nu, mu, lam in [(0, 1, 0.5), (0.3j, 3, 0.4)]:
        a, b = sf.hankel_J_closed(nu, mu, lam), sf.hankel_J_quad(nu, mu, lam)
        assert abs(a - b) <= 1e-5 * abs(a)
    # divergence as lam -> 1 follows Gamma(1 - lam)
    r = [abs(sf.hankel_J_closed(0, 1, 1 - d)) * d for d in (1e-3, 1e-5)]
    assert r[1] == pytest.approx(r[0], rel=1e-2)


@pytest.mark.xfail(strict=True, reason="without the Hankel phase the factorization is off")
def test_script_I_without_phase():
    rep = sf.script_I_check()
    assert all(c.passed for c in rep.cases)
