"""Inert weight functions, their Fourier/Mellin decay, and stationary phase.

The fixed dyadic bump is built from the order-8 polynomial smoothstep S
(S = 0 for t <= 0, S = 1 for t >= 1, eight continuous derivatives):

    omega(x) = S(t) - S(t - 1),   t = 2 log2(x),

supported on [1, 2].  Shifting t by integers telescopes, so
sum_k omega(2^{-k/2} x) = 1 for every x > 0.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq
from scipy.special import betainc

from .report import Case, SuiteReport

SMOOTHSTEP_ORDER = 8


@lru_cache(maxsize=None)
def _smoothstep_coeffs(N: int) -> np.ndarray:
    """Monomial coefficients (ascending) of the order-N smoothstep on [0, 1]."""
    c = np.zeros(2 * N + 2)
    for n in range(N + 1):
        c[N + 1 + n] = math.comb(N + n, n) * math.comb(2 * N + 1, N - n) * (-1) ** n
    return c


def smoothstep(t, order: int = SMOOTHSTEP_ORDER):
    """The order-N smoothstep equals the regularized incomplete beta I_t(N+1, N+1);
    betainc avoids the cancellation of the monomial form and gives S(1) = 1 exactly."""
    t = np.asarray(t, dtype=float)
    return betainc(order + 1, order + 1, np.clip(t, 0.0, 1.0))


def omega(x, order: int = SMOOTHSTEP_ORDER):
    """The dyadic bump on [1, 2]; zero elsewhere (including x <= 0)."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    m = x > 0
    t = 2 * np.log2(x[m])
    out[m] = smoothstep(t, order) - smoothstep(t - 1, order)
    return out


def partition_sum(x) -> np.ndarray:
    """sum over k of omega(2^{-k/2} x), summing every k whose term can be nonzero."""
    x = np.asarray(x, dtype=float)
    t = 2 * np.log2(x)
    kmin = int(np.floor(np.min(t))) - 3
    kmax = int(np.ceil(np.max(t))) + 3
    tot = np.zeros_like(x)
    for k in range(kmin, kmax + 1):
        tot += omega(2.0 ** (-k / 2) * x)
    return tot


def partition_check(xmax: float = 1e4, npts: int = 20001, tol: float = 1e-12) -> SuiteReport:
    xs = np.geomspace(1.0, xmax, npts)
    err = np.abs(partition_sum(xs) - 1)
    i = int(np.argmax(err))
    rep = SuiteReport("oscillatory.partition", {"xmax": xmax, "npts": npts, "tol": tol})
    rep.add(Case({"worst_x": float(xs[i])}, float(1 + err[i]), 1.0, float(err[i]), tol))
    return rep


# --------------------------------------------------------------- families

@dataclass
class InertFamily:
    """One member of an inert family.

    evaluator(*xs) must broadcast over numpy arrays; support is a list of
    (lo, hi) boxes, one per variable (it need not be exactly dyadic).
    """

    evaluator: Callable
    support: Sequence
    X: float = 1.0
    max_order: int = 4
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.support)

    def __call__(self, *xs):
        return self.evaluator(*xs)


def bump_family(N: float = 1.0, modulation: Callable | None = None, X: float = 1.0, name: str = "") -> InertFamily:
    """omega(x/N), optionally times modulation(x)."""
    if modulation is None:
        f = lambda x: omega(np.asarray(x) / N)
    else:
        f = lambda x: omega(np.asarray(x) / N) * modulation(np.asarray(x))
    return InertFamily(f, [(N, 2 * N)], X, 4, name or f"omega(x/{N:g})")


# ------------------------------------------------------- finite differences

_STENCIL = np.arange(-3, 4)


@lru_cache(maxsize=None)
def _fd_weights(order: int) -> np.ndarray:
    """Central 7-point weights for the order-th derivative (unit spacing)."""
    n = len(_STENCIL)
    A = np.vander(_STENCIL.astype(float), n, increasing=True).T
    rhs = np.zeros(n)
    rhs[order] = math.factorial(order)
    return np.linalg.solve(A, rhs)


@lru_cache(maxsize=None)
def _stirling1(j: int) -> tuple:
    """Signed Stirling numbers s(j, n), n = 0..j: (D)_j = sum_n s(j,n) D^n."""
    poly = np.array([1.0])
    for i in range(j):
        poly = np.convolve(poly, np.array([-float(i), 1.0]))
    return tuple(poly)


def _multi_indices(d: int, max_order: int) -> list:
    return [j for j in itertools.product(range(max_order + 1), repeat=d) if 0 < sum(j) <= max_order]


def _scaled_derivatives(family: InertFamily, point: np.ndarray, h: float, mis: list) -> dict:
    """x^j d^j w at one point for each multi-index j, via log-coordinate stencils.

    With v = log x, x^j d^j/dx^j equals the falling factorial
    D(D-1)...(D-j+1) of D = d/dv, so only v-derivatives are needed.
    """
    d = len(point)
    axes = [point[i] * np.exp(h * _STENCIL) for i in range(d)]
    grids = np.meshgrid(*axes, indexing="ij")
    vals = np.asarray(family(*grids), dtype=complex)
    cache = {}

    def dv(alpha):
        if alpha not in cache:
            arr = vals
            for ax in range(d - 1, -1, -1):
                wts = _fd_weights(alpha[ax]) / h ** alpha[ax]
                arr = np.tensordot(arr, wts, axes=([ax], [0]))
            cache[alpha] = complex(arr)
        return cache[alpha]

    out = {}
    for j in mis:
        tot = 0j
        coeff_lists = [_stirling1(ji) for ji in j]
        for alpha in itertools.product(*[range(ji + 1) for ji in j]):
            c = 1.0
            for ci, a in zip(coeff_lists, alpha):
                c *= ci[a]
            if c:
                tot += c * dv(alpha)
        out[j] = tot
    return out


def _grid_points(support, grid: int) -> list:
    axes = [np.geomspace(lo, hi, grid) for lo, hi in support]
    return [np.array(p) for p in itertools.product(*axes)]


def measure_inert_constants(family: InertFamily, grid: int = 16, h: float = 0.004, max_order: int | None = None) -> tuple:
    """Return ({j: sup |x^j d^j w| / X^|j|}, {j: relative step-halving change}, sup|w|)."""
    mo = family.max_order if max_order is None else max_order
    mis = _multi_indices(family.dim, mo)
    sup = {j: 0.0 for j in mis}
    sup_half = {j: 0.0 for j in mis}
    wmax = 0.0
    for p in _grid_points(family.support, grid):
        wmax = max(wmax, float(np.max(np.abs(family(*[np.array([v]) for v in p])))))
        a = _scaled_derivatives(family, p, h, mis)
        b = _scaled_derivatives(family, p, h / 2, mis)
        for j in mis:
            scale = family.X ** sum(j)
            sup[j] = max(sup[j], abs(a[j]) / scale)
            sup_half[j] = max(sup_half[j], abs(b[j]) / scale)
    drift = {j: abs(sup[j] - sup_half[j]) / max(sup_half[j], 1e-12) for j in mis}
    return sup, drift, wmax


# Reference constants: the measured constants of omega itself (X = 1,
# 16-point grid, rounded up), frozen so certification is a fixed test.
INERT_REFERENCE_1D = {1: 9.3, 2: 141.0, 3: 4820.0, 4: 170500.0}
INERT_SAFETY = 10.0
SMOOTHNESS_DRIFT_TOL = 1e-2


def inert_bound(j: tuple, wmax: float, reference: dict | None = None) -> float:
    ref = INERT_REFERENCE_1D if reference is None else reference
    c = INERT_SAFETY * max(wmax, 1e-300)
    for ji in j:
        if ji:
            c *= ref[ji]
    return c


def certify_inert(family: InertFamily, orders: int = 4, grid: int = 16, h: float = 0.004,
                  reference: dict | None = None) -> SuiteReport:
    """Finite-difference certificate of X-inertness.

    For each multi-index j with |j| <= orders, the sup over a grid^d log
    grid of |x^j d^j w| / X^|j| must not exceed C(j) = 10 * sup|w| *
    prod_i R(j_i), where R are the frozen constants of the reference bump.
    A case also fails when halving the step changes an estimate by more than
    1% (finite-difference blowup, i.e. unresolved oscillation).
    """
    if orders > 4:
        raise ValueError("certification is implemented for orders <= 4")
    sup, drift, wmax = measure_inert_constants(family, grid, h, orders)
    rep = SuiteReport("oscillatory.certify_inert", {"family": family.name, "X": family.X, "grid": grid, "h": h, "orders": orders})
    for j in sorted(sup):
        bound = inert_bound(j, wmax, reference)
        ok_smooth = drift[j] <= SMOOTHNESS_DRIFT_TOL or sup[j] < 1e-9 * max(wmax, 1e-300)
        note = "" if ok_smooth else f"finite-difference drift {drift[j]:.2e}"
        err = max(0.0, sup[j] - bound) if ok_smooth else math.inf
        rep.add(Case({"j": list(j)}, sup[j], bound, err, 0.0, note))
    return rep


# ---------------------------------------------------- Fourier and Mellin

def _gl(lo: float, hi: float, panels: int, order: int = 32) -> tuple:
    xg, wg = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(lo, hi, panels + 1)
    mid = (edges[1:] + edges[:-1]) / 2
    half = (edges[1:] - edges[:-1]) / 2
    return (mid[:, None] + half[:, None] * xg).ravel(), (half[:, None] * wg).ravel()


def fourier_transform(family: InertFamily, ts, panels: int | None = None) -> np.ndarray:
    """w^(t) = int w(x) e(-x t) dx for a 1-d family."""
    lo, hi = family.support[0]
    ts = np.asarray(ts, dtype=float)
    tmax = float(np.max(np.abs(ts))) if ts.size else 0.0
    if panels is None:
        panels = int(64 + 2 * tmax * (hi - lo))
    x, w = _gl(lo, hi, panels)
    fx = np.asarray(family(x), dtype=complex) * w
    out = np.empty(ts.shape, dtype=complex)
    for i in range(0, ts.size, 256):
        out.flat[i:i + 256] = np.exp(-2j * np.pi * np.outer(ts.flat[i:i + 256], x)) @ fx
    return out


def mellin_transform(family: InertFamily, ss, panels: int | None = None) -> np.ndarray:
    """w~(s) = int w(x) x^{s-1} dx for a 1-d family."""
    lo, hi = family.support[0]
    ss = np.asarray(ss, dtype=complex)
    tmax = float(np.max(np.abs(ss.imag))) if ss.size else 0.0
    if panels is None:
        panels = int(64 + tmax * math.log(hi / lo))
    v, w = _gl(math.log(lo), math.log(hi), panels)
    x = np.exp(v)
    fx = np.asarray(family(x), dtype=complex) * w
    out = np.empty(ss.shape, dtype=complex)
    for i in range(0, ss.size, 256):
        out.flat[i:i + 256] = np.exp(np.outer(ss.flat[i:i + 256], v)) @ fx
    return out


def _deriv_l1(family: InertFamily, A: int, npts: int = 20001) -> float:
    """||w^(A)||_1 by repeated spectral-free finite differences on a fine grid."""
    lo, hi = family.support[0]
    pad = 0.05 * (hi - lo)
    x = np.linspace(lo - pad, hi + pad, npts)
    dx = x[1] - x[0]
    f = np.asarray(family(x), dtype=complex)
    for _ in range(A):
        f = np.gradient(f, dx, edge_order=2)
    return float(np.sum(np.abs(f)) * dx)


def decay_knee(ts: np.ndarray, vals: np.ndarray, level: float = 1e-3) -> float:
    """Smallest grid t beyond which |vals| stays below level * max|vals|."""
    a = np.abs(vals)
    thr = level * np.max(a)
    above = np.nonzero(a > thr)[0]
    return float(ts[min(above[-1] + 1, len(ts) - 1)]) if above.size else float(ts[0])


def fourier_truncation_check(family: InertFamily, X1: float | None = None, As=(2, 4, 8),
                             t_factor: float = 40.0, npts: int = 4001) -> SuiteReport:
    """|w^(t)| <= K_A X1 (1 + |t| X1 / X)^(-A), with K_A bounded by the
    integration-by-parts constant 2^A max(||w||_1, (X1/(2 pi X))^A ||w^(A)||_1) / X1."""
    lo, hi = family.support[0]
    X1 = lo if X1 is None else X1
    X = family.X
    ts = np.linspace(0, t_factor * X / X1, npts)
    wh = fourier_transform(family, ts)
    rep = SuiteReport("oscillatory.fourier_truncation", {"family": family.name, "X": X, "X1": X1, "A": list(As)})
    l1 = _deriv_l1(family, 0)
    for A in As:
        K = float(np.max(np.abs(wh) * (1 + ts * X1 / X) ** A) / X1)
        bound = 2**A * max(l1, (X1 / (2 * math.pi * X)) ** A * _deriv_l1(family, A)) / X1
        rep.add(Case({"A": A}, K, bound, max(0.0, K - bound), 0.0, "sup_t |w^(t)|(1+|t|X1/X)^A / X1 vs integration-by-parts constant"))
    return rep


def fourier_decay_profile(family: InertFamily, X1: float | None = None, t_factor: float = 40.0, npts: int = 4001) -> dict:
    lo, _ = family.support[0]
    X1 = lo if X1 is None else X1
    ts = np.linspace(0, t_factor * family.X / X1, npts)
    wh = fourier_transform(family, ts)
    a = np.abs(wh)
    # tail slope from the envelope on the last decade of the grid
    tail = ts > ts[-1] / 10
    env_t, env_a = [], []
    blocks = np.array_split(np.nonzero(tail)[0], 20)
    for b in blocks:
        k = b[np.argmax(a[b])]
        env_t.append(ts[k])
        env_a.append(max(a[k], 1e-300))
    slope = float(np.polyfit(np.log(env_t), np.log(env_a), 1)[0])
    return {"knee": decay_knee(ts, wh), "tail_slope": slope, "max": float(a.max()), "tail_max": float(a[tail].max())}


def mellin_decay(family: InertFamily, sigma: float = 0.5, t_cut_factor: float = 30.0, eps: float = 0.1, npts: int = 2001) -> dict:
    """Ratio of |w~(sigma+it)| beyond t = t_cut_factor * X^(1+eps) to its value at t = 0."""
    X = family.X
    tcut = t_cut_factor * X ** (1 + eps)
    ts = np.linspace(tcut, 4 * tcut, npts)
    vals = np.abs(mellin_transform(family, sigma + 1j * ts))
    v0 = abs(mellin_transform(family, np.array([sigma + 0j]))[0])
    return {"t_cut": tcut, "ratio": float(vals.max() / v0)}


# ------------------------------------------------------- stationary phase

@dataclass
class PhaseSpec:
    """Phase phi(t) (in radians) with derivative(s), size Y and support scale Z."""

    phi: Callable
    dphi: Callable
    d2phi: Callable
    Y: float
    Z: float
    X_scales: tuple = field(default_factory=tuple)


@dataclass
class StationaryPhaseResult:
    value: complex
    t0: float | None
    flags: tuple
    report: SuiteReport


def oscillatory_integral(w: Callable, phi: Callable, lo: float, hi: float, Y: float, nodes_per_radian: float = 1.0) -> complex:
    """int_lo^hi w(t) e^{i phi(t)} dt by composite Gauss-Legendre, resolving the phase."""
    total_phase = abs(Y) * 4 + 200
    panels = int(64 + nodes_per_radian * total_phase / 8)
    t, wt = _gl(lo, hi, panels)
    return complex(np.sum(np.asarray(w(t)) * np.exp(1j * np.asarray(phi(t))) * wt))


def stationary_phase_eval(w: InertFamily, phase: PhaseSpec, very_small: float | None = None) -> StationaryPhaseResult:
    """Quadrature value of I = int w(t) e^{i phi(t)} dt with the stationary-phase size checks.

    With an interior critical point, |I| <= 10 Z / sqrt(Y) is asserted; with no
    critical point in the support, |I| <= Y^-3 sup|w|.  A critical point
    within 1% of the support edge is reported as inconclusive.
    """
    lo, hi = w.support[0]
    Y, Z = phase.Y, phase.Z
    rep = SuiteReport("oscillatory.stationary_phase", {"Y": Y, "Z": Z, "X": w.X, "family": w.name})
    flags = []
    if Y / w.X**2 < 10:
        flags.append("Y/X^2 < 10")
    ts = np.linspace(lo, hi, 4001)
    d1 = np.asarray(phase.dphi(ts), dtype=float)
    t0 = None
    sgn = np.sign(d1)
    ch = np.nonzero(sgn[:-1] * sgn[1:] <= 0)[0]
    if ch.size:
        i = ch[0]
        t0 = ts[i] if d1[i] == 0 else brentq(phase.dphi, ts[i], ts[i + 1])
    I = oscillatory_integral(w, phase.phi, lo, hi, Y)
    wmax = float(np.max(np.abs(w(ts))))
    if t0 is not None:
        if min(t0 - lo, hi - t0) < 0.01 * (hi - lo):
            flags.append("inconclusive: critical point at the support boundary")
        d2 = np.abs(np.asarray(phase.d2phi(ts), dtype=float))
        if d2.min() < 0.01 * Y / Z**2:
            flags.append("second derivative lower bound not met")
        bound = 10 * Z / math.sqrt(Y)
        rep.add(Case({"t0": t0}, abs(I), bound, max(0.0, abs(I) - bound), 0.0, "stationary: |I| <= 10 Z/sqrt(Y)"))
    else:
        bound = (Y ** -3 if very_small is None else very_small) * wmax
        rep.add(Case({"t0": None}, abs(I), bound, max(0.0, abs(I) - bound), 0.0, "no critical point: |I| <= Y^-3 sup|w|"))
    return StationaryPhaseResult(I, t0, tuple(flags), rep)


def quadratic_phase(Y: float, t0: float = 1.5) -> PhaseSpec:
    return PhaseSpec(lambda t: Y * (t - t0) ** 2, lambda t: 2 * Y * (t - t0), lambda t: 2 * Y + 0 * t, Y, 1.0)


def linear_phase(Y: float) -> PhaseSpec:
    return PhaseSpec(lambda t: Y * t, lambda t: Y + 0 * t, lambda t: 0 * t, Y, 1.0)


def stationary_phase_scaling(Ys=(1e2, 1e3, 1e4), t0: float = 1.5, family: InertFamily | None = None) -> SuiteReport:
    """Relative error of I against the leading term sqrt(pi/Y) e^{i pi/4} w(t0)
    for phi = Y (t - t0)^2 and w = omega (or another weight on [1, 2]); its
    log-log slope in Y must be -1 +- 0.2."""
    fam = bump_family(1.0) if family is None else family
    w0 = float(np.real(fam(np.array([t0]))[0]))
    errs = []
    rep = SuiteReport("oscillatory.stationary_scaling", {"Ys": list(Ys), "t0": t0, "weight": fam.name})
    for Y in Ys:
        res = stationary_phase_eval(fam, quadratic_phase(Y, t0))
        lead = math.sqrt(math.pi / Y) * np.exp(0.25j * math.pi) * w0
        rel = abs(res.value / lead - 1)
        errs.append(rel)
        rep.extend(res.report)
        rep.add(Case({"Y": Y, "quantity": "|I| sqrt(Y)"}, abs(res.value) * math.sqrt(Y), math.sqrt(math.pi) * w0,
                     abs(abs(res.value) * math.sqrt(Y) - math.sqrt(math.pi) * w0), 3 / Y * math.sqrt(math.pi) * w0,
                     "relative error of |I| sqrt(Y) at most 3/Y"))
    slope = float(np.polyfit(np.log(Ys), np.log(errs), 1)[0])
    rep.add(Case({"quantity": "log-log slope of relative error"}, slope, -1.0, abs(slope + 1), 0.2))
    rep.config["relative_errors"] = errs
    return rep


def no_critical_point_check(Y: float = 1e4, bound: float = 1e-8) -> SuiteReport:
    fam = bump_family(1.0)
    res = stationary_phase_eval(fam, linear_phase(Y))
    rep = res.report
    rep.add(Case({"Y": Y}, abs(res.value), bound, max(0.0, abs(res.value) - bound), 0.0, "|I| <= 1e-8"))
    return rep


def poisson_phase_check(scales=((10, 100, 1), (40, 400, 2), (160, 1600, 4))) -> SuiteReport:
    """The Poisson-step phase -k t/c + 2 sqrt(t m1 n a)/c (in units of 2 pi).

    For each (M1, N, C) with M2 = M1, a = 1 we put m1 = M1, n = N, c = C and
    choose k so that t0 = m1 n a / k^2 = 1.5 M2 is interior.  The integral of
    omega(t/M2) e(phase) is compared with C^{1/2} M2 / (a M N)^{1/4}, M = M1 M2:
    the ratios at all scales must agree within a factor 2.
    """
    rep = SuiteReport("oscillatory.poisson_phase", {"scales": [list(s) for s in scales]})
    ratios = []
    for M1, N, C in scales:
        a = 1
        M2 = float(M1)
        m1, n, c = float(M1), float(N), float(C)
        t0 = 1.5 * M2
        k = math.sqrt(m1 * n * a / t0)
        f = lambda t: 2 * math.pi * (-k * t / c + 2 * np.sqrt(t * m1 * n * a) / c)
        Yscale = 2 * math.pi * k * t0 / c
        # integrate in x = t/M2 over [1, 2]
        I = M2 * oscillatory_integral(lambda x: omega(x), lambda x: f(M2 * x), 1.0, 2.0, Yscale)
        pred = math.sqrt(C) * M2 / (a * M1 * M2 * N) ** 0.25
        ratios.append(abs(I) / pred)
        rep.add(Case({"M1": M1, "N": N, "C": C, "k": k, "Y": Yscale}, abs(I), pred, 0.0, 0.0, "recorded"))
    spread = max(ratios) / min(ratios)
    rep.add(Case({"quantity": "max/min of |I|/prediction"}, spread, 2.0, max(0.0, spread - 2.0), 0.0))
    rep.config["ratios"] = ratios
    return rep
