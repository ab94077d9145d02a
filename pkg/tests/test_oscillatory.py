import math

import numpy as np
import pytest

from momentlab import oscillatory as osc


def test_omega_support_and_partition():
    x = np.array([0.5, 1.0, 2.0, 3.0, -1.0])
    assert np.all(osc.omega(x) == 0)
    xs = np.geomspace(1e-3, 1e4, 5001)
    assert np.max(np.abs(osc.partition_sum(xs) - 1)) < 1e-12
    assert osc.partition_check(xmax=1e3, npts=2001).ok


def test_inert_certification_outcomes():
    assert osc.certify_inert(osc.bump_family(1.0), grid=8).ok
    assert osc.certify_inert(osc.bump_family(64.0), grid=8).ok
    assert osc.certify_inert(osc.bump_family(10.0, modulation=lambda x: np.cos(10 * x)), grid=8).ok is False
    log_mod = osc.bump_family(7.0, modulation=lambda x: np.cos(np.log(x)))
    assert osc.certify_inert(log_mod, grid=8).ok


def test_fourier_decay():
    fam = osc.bump_family(1.0)
    assert osc.fourier_truncation_check(fam).ok
    prof = osc.fourier_decay_profile(fam)
    # the order-8 smoothstep bump is C^8, so the envelope falls like t^-9
    assert prof["tail_slope"] < -8


def test_knee_scales_with_X():
    # with the e(xt) convention the knee of an X-inert family on [1, 2] sits near X / (2 pi)
    X = 128.0
    fam = osc.bump_family(1.0, modulation=lambda x: np.cos(X * np.log(x)), X=X)
    knee = osc.fourier_decay_profile(fam, t_factor=5.0, npts=8001)["knee"]
    assert 0.5 <= knee / (X / (2 * math.pi)) <= 2


def test_mellin_decay():
    fam = osc.bump_family(1.0)
    r = [osc.mellin_decay(fam, t_cut_factor=t)["ratio"] for t in (100.0, 300.0)]
    assert r[0] > r[1] and r[1] < 1e-9


def test_no_critical_point():
    assert osc.no_critical_point_check(1e4).ok


def test_single_stationary_point_magnitude():
    fam = osc.bump_family(1.0)
    res = osc.stationary_phase_eval(fam, osc.quadratic_phase(1e4))
    w0 = float(fam(np.array([1.5]))[0])
    assert res.t0 == pytest.approx(1.5)
    assert abs(abs(res.value) * 100 - math.sqrt(math.pi) * w0) <= 3e-4 * math.sqrt(math.pi) * w0


def test_boundary_critical_point_flagged():
    fam = osc.bump_family(1.0)
    res = osc.stationary_phase_eval(fam, osc.quadratic_phase(1e3, t0=1.001))
    assert any("inconclusive" in f for f in res.flags)


def test_poisson_phase_scaling():
    assert osc.poisson_phase_check().ok
