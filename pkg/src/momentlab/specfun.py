"""Complex gamma, Bessel-kernel Mellin transforms, the Kuznetsov kernels and
the Hankel-Bessel integrals behind the H kernel.

Bessel functions come from scipy (real order) and mpmath (complex order);
the gamma function used in every closed form is our own Lanczos code.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import mpmath
import numpy as np
from scipy.special import jv, kv

from .report import Case, SuiteReport, compare


class PoleError(ValueError):
    """Raised when a gamma factor is evaluated at (or numerically on) a pole."""


class DomainError(ValueError):
    pass


class QuadratureError(RuntimeError):
    pass


# ------------------------------------------------------------------- gamma

_LANCZOS_G = 7.0
_LANCZOS_P = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


def _is_pole(z: complex) -> bool:
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def _log_sin_pi(z: complex) -> complex:
    """log(sin(pi z)) without overflow for large |Im z| (branch immaterial)."""
    w = math.pi * z
    if w.imag > 0:
        # sin w = e^{-iw}(e^{2iw} - 1)/(2i)... written to keep exponents small
        return -1j * w + cmath.log(1 - cmath.exp(2j * w)) - cmath.log(-2j)
    return 1j * w + cmath.log(1 - cmath.exp(-2j * w)) - cmath.log(2j)


def loggamma_complex(z: complex) -> complex:
    """log Gamma(z) by the g=7 Lanczos series, with reflection for Re z < 1/2.

    The imaginary part is only determined mod 2 pi; exp() of the result is Gamma.
    """
    z = complex(z)
    if _is_pole(z):
        raise PoleError(f"Gamma has a pole at {z}")
    if z.real < 0.5:
        return math.log(math.pi) - _log_sin_pi(z) - loggamma_complex(1 - z)
    z -= 1
    acc = _LANCZOS_P[0]
    for i in range(1, 9):
        acc += _LANCZOS_P[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def gamma_complex(z: complex) -> complex:
    """Gamma(z); relative error about 1e-14 for |z| <= 50."""
    z = complex(z)
    if _is_pole(z):
        raise PoleError(f"Gamma has a pole at {z}")
    if z.real < 0.5:
        # direct reflection keeps full accuracy near the negative real axis
        return math.pi / (cmath.sin(math.pi * z) * gamma_complex(1 - z))
    return cmath.exp(loggamma_complex(z))


def rgamma_complex(z: complex) -> complex:
    """1/Gamma(z), zero at the poles."""
    z = complex(z)
    if _is_pole(z):
        return 0j
    return 1 / gamma_complex(z)


# ------------------------------------------------------- Mellin transforms

@dataclass(frozen=True)
class MellinPoint:
    s: complex
    value: complex
    method: str
    est_error: float = 0.0


def mellin_J_closed(s: complex, nu: complex) -> complex:
    """int_0^oo J_nu(x) x^{s-1} dx = 2^{s-1} Gamma((s+nu)/2) / Gamma((nu-s)/2+1)."""
    s, nu = complex(s), complex(nu)
    a = (s + nu) / 2
    if _is_pole(a):
        raise PoleError(f"Gamma((s+nu)/2) has a pole at s={s}, nu={nu}")
    return 2 ** (s - 1) * gamma_complex(a) * rgamma_complex((nu - s) / 2 + 1)


def mellin_K_closed(s: complex, t: float) -> complex:
    """int_0^oo K_{2it}(x) x^{s-1} dx = 2^{s-2} Gamma(s/2+it) Gamma(s/2-it)."""
    s = complex(s)
    for a in (s / 2 + 1j * t, s / 2 - 1j * t):
        if _is_pole(a):
            raise PoleError(f"pole at s={s}, t={t}")
    return 2 ** (s - 2) * gamma_complex(s / 2 + 1j * t) * gamma_complex(s / 2 - 1j * t)


def _near_zero(f, power: float):
    """int_0^1 f(x) dx for f ~ x^{power-1} at 0 (times logs): the substitution
    x = y^m with m * power >= 2 removes the endpoint singularity."""
    m = max(1, math.ceil(2 / float(power)))
    return mpmath.quad(lambda y: f(y**m) * m * y ** (m - 1), [0, 0.5, 1])


def mellin_J_quad(s: complex, nu: complex, x_split: float = 50.0, dps: int = 20) -> MellinPoint:
    """Quadrature oracle for the J-Mellin transform.

    The head [0, x_split] is integrated on the real line.  Beyond x_split,
    J = (H1 + H2)/2 and each Hankel function is integrated along the ray on
    which it decays exponentially.
    """
    with mpmath.workdps(dps):
        s_, nu_ = mpmath.mpmathify(complex(s)), mpmath.mpmathify(complex(nu))
        X = mpmath.mpf(x_split)
        f = lambda x: mpmath.besselj(nu_, x) * x ** (s_ - 1)
        head = _near_zero(f, (s_ + nu_).real) + mpmath.quad(f, mpmath.linspace(1, X, 26))
        t1 = mpmath.quad(lambda y: mpmath.hankel1(nu_, X + 1j * y) * (X + 1j * y) ** (s_ - 1) * 1j, [0, mpmath.inf])
        t2 = mpmath.quad(lambda y: mpmath.hankel2(nu_, X - 1j * y) * (X - 1j * y) ** (s_ - 1) * (-1j), [0, mpmath.inf])
        val = complex(head + (t1 + t2) / 2)
    return MellinPoint(complex(s), val, "quadrature", 10.0 ** (-dps + 6))


def mellin_K_quad(s: complex, t: float, dps: int = 20) -> MellinPoint:
    with mpmath.workdps(dps):
        s_ = mpmath.mpmathify(complex(s))
        nu = mpmath.mpc(0, 2 * t)
        f = lambda x: mpmath.besselk(nu, x) * x ** (s_ - 1)
        val = _near_zero(f, s_.real) + mpmath.quad(f, [1, 2, 10, 40, mpmath.inf])
    return MellinPoint(complex(s), complex(val), "quadrature", 10.0 ** (-dps + 6))


# ------------------------------------------------------- Kuznetsov kernels

@dataclass(frozen=True)
class Spectral:
    """A spectral parameter: kind 'holomorphic' (param = weight k) or
    'plus' / 'minus' (param = Maass parameter t)."""

    kind: str
    param: float

    def __post_init__(self):
        if self.kind not in ("holomorphic", "plus", "minus"):
            raise ValueError(f"unknown spectral kind {self.kind!r}")
        if self.kind == "holomorphic" and (self.param != int(self.param) or self.param < 2):
            raise ValueError("holomorphic weight must be an integer >= 2")

    @property
    def line(self) -> float:
        """Abscissa of the Mellin contour."""
        return 1.0 if self.kind == "holomorphic" else 2.0


def _log_cos(z: complex) -> complex:
    if z.imag > 0:
        return -1j * z + cmath.log(1 + cmath.exp(2j * z)) - math.log(2)
    return 1j * z + cmath.log(1 + cmath.exp(-2j * z)) - math.log(2)


def _log_cosh_pi(t: float) -> float:
    a = abs(math.pi * t)
    return a + math.log1p(math.exp(-2 * a)) - math.log(2)


def log_kuznetsov_kernel(s: complex, spectral: Spectral) -> complex:
    """log of h(s,k), h+(s,t) or h-(s,t); safe for large |Im s|."""
    s = complex(s)
    if spectral.kind == "holomorphic":
        k = spectral.param
        return (s - 1) * math.log(2) + loggamma_complex((s + k - 1) / 2) - loggamma_complex((k + 1 - s) / 2)
    t = spectral.param
    base = -math.log(math.pi) + (s - 1) * math.log(2) + loggamma_complex(s / 2 + 1j * t) + loggamma_complex(s / 2 - 1j * t)
    if spectral.kind == "plus":
        return base + _log_cos(math.pi * s / 2)
    return base + _log_cosh_pi(t)


def kuznetsov_kernels(s: complex, spectral: Spectral) -> complex:
    """h(s,k) = 2^{s-1} Gamma((s+k-1)/2)/Gamma((k+1-s)/2), or
    h+-(s,t) = pi^{-1} 2^{s-1} {cos(pi s/2) | cosh(pi t)} Gamma(s/2+it) Gamma(s/2-it)."""
    s = complex(s)
    if spectral.kind == "holomorphic":
        k = spectral.param
        if _is_pole((s + k - 1) / 2):
            raise PoleError(f"h(s,k) has a pole at s={s}")
        return 2 ** (s - 1) * gamma_complex((s + k - 1) / 2) * rgamma_complex((k + 1 - s) / 2)
    t = spectral.param
    for a in (s / 2 + 1j * t, s / 2 - 1j * t):
        if _is_pole(a):
            raise PoleError(f"h+-(s,t) has a pole at s={s}")
    g = gamma_complex(s / 2 + 1j * t) * gamma_complex(s / 2 - 1j * t) * 2 ** (s - 1) / math.pi
    if spectral.kind == "plus":
        return g * cmath.cos(math.pi * s / 2)
    return g * math.cosh(math.pi * t)


def stirling_slope(sigma: float, k: int, ims) -> float:
    """Log-log slope of |h(sigma + i y, k)| against max(k, |y|) over the given y."""
    xs = [math.log(max(k, abs(y))) for y in ims]
    ys = [math.log(abs(kuznetsov_kernels(sigma + 1j * y, Spectral("holomorphic", k)))) for y in ims]
    return float(np.polyfit(xs, ys, 1)[0])


# -------------------------------------------------- test weights, transforms

class BumpWeight:
    """A C-infinity bump exp(-1/(1-u^2)) on [a, b] (u the affine coordinate),
    optionally times y^power.  Used as a Kuznetsov test function."""

    def __init__(self, a: float = 1.0, b: float = 2.0, power: float = 0.0, name: str = ""):
        if not 0 < a < b:
            raise ValueError("need 0 < a < b")
        self.support = (float(a), float(b))
        self.power = float(power)
        self.name = name or f"bump[{a},{b}]" + (f"*y^{power}" if power else "")

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        a, b = self.support
        u = (2 * y - a - b) / (b - a)
        out = np.zeros_like(y)
        m = np.abs(u) < 1
        out[m] = np.exp(-1 / (1 - u[m] ** 2)) * y[m] ** self.power
        return out


def _gl_nodes(lo: float, hi: float, panels: int, order: int = 24) -> tuple:
    xg, wg = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(lo, hi, panels + 1)
    mids = (edges[1:] + edges[:-1]) / 2
    half = (edges[1:] - edges[:-1]) / 2
    x = (mids[:, None] + half[:, None] * xg[None, :]).ravel()
    w = (half[:, None] * wg[None, :]).ravel()
    return x, w


def mellin_of_weight(phi, ws: np.ndarray) -> np.ndarray:
    """phi~(w) = int phi(y) y^{w-1} dy at each w in ws (vectorized).

    With y = e^v this is int phi(e^v) e^{w v} dv, a smooth compactly supported
    integrand, so the trapezoid rule converges faster than any power once the
    grid resolves the oscillation e^{i Im(w) v}.
    """
    a, b = phi.support
    ws = np.asarray(ws, dtype=complex)
    la, lb = math.log(a), math.log(b)
    wmax = float(np.max(np.abs(ws.imag))) if ws.size else 0.0
    nv = int(200 + 1.5 * (lb - la) * wmax / math.pi)
    v = np.linspace(la, lb, nv + 1)
    dv = (lb - la) / nv
    g = phi(np.exp(v)) * dv
    out = np.empty(ws.size, dtype=complex)
    flat = ws.ravel()
    chunk = max(1, 2_000_000 // (nv + 1))
    for i in range(0, flat.size, chunk):
        out[i:i + chunk] = np.exp(np.outer(flat[i:i + chunk], v)) @ g
    return out.reshape(ws.shape)


def _bessel_kernel(spectral: Spectral, x: np.ndarray) -> np.ndarray:
    """B(x): J_{k-1}, i(J_{2it} - J_{-2it})/(2 sinh pi t), or (2/pi) cosh(pi t) K_{2it}."""
    if spectral.kind == "holomorphic":
        return jv(spectral.param - 1, x).astype(complex)
    t = spectral.param
    if spectral.kind == "plus":
        if t == 0:
            raise DomainError("the plus kernel needs t != 0")
        nu = mpmath.mpc(0, 2 * t)
        vals = [complex(mpmath.besselj(nu, xi) - mpmath.besselj(-nu, xi)) for xi in x]
        return 1j * np.array(vals) / (2 * math.sinh(math.pi * t))
    if 2 * t == int(2 * t) and t == 0:
        return (2 / math.pi) * kv(0, x).astype(complex)
    nu = mpmath.mpc(0, 2 * t)
    vals = [complex(mpmath.besselk(nu, xi)) for xi in x]
    return (2 / math.pi) * math.cosh(math.pi * t) * np.array(vals)


def transform_direct(phi, spectral: Spectral, X: float, panels: int = 12) -> complex:
    """int_0^oo B(x) (X/x) phi(X/x) dx/x, computed as int B(X/y) phi(y) dy."""
    a, b = phi.support
    y, w = _gl_nodes(a, b, panels)
    return complex(np.sum(_bessel_kernel(spectral, X / y) * phi(y) * w))


def transform_mellin(phi, spectral: Spectral, X: float, T: float | None = None, step: float = 0.1) -> tuple:
    """(1/2 pi i) int_(c) h(s) phi~(s+1) X^{-s} ds on c = 1 (holomorphic) or 2.

    The truncation height doubles until the integrand is below 1e-11 of its
    peak (the Mellin transform of a C-infinity bump decays like exp(-c sqrt(T))).  Returns (value, T used, relative size of the integrand at T).
    """
    c = spectral.line
    T = 40.0 if T is None else float(T)
    while True:
        tau = np.arange(-T, T + step / 2, step)
        s = c + 1j * tau
        logh = np.array([log_kuznetsov_kernel(si, spectral) for si in s])
        mt = mellin_of_weight(phi, s + 1)
        with np.errstate(over="ignore", invalid="ignore"):
            f = np.exp(logh - s * math.log(X)) * mt
        peak = np.max(np.abs(f))
        edge = max(abs(f[0]), abs(f[-1])) / peak
        if edge < 1e-11 or T >= 5000:
            break
        T *= 2
    # the integrand is smooth and negligible at both ends: trapezoid is spectral
    val = complex(np.sum(f) - (f[0] + f[-1]) / 2) * step / (2 * math.pi)
    return val, T, float(edge)


def default_test_weights() -> list:
    return [
        BumpWeight(1.0, 2.0, name="bump[1,2]"),
        BumpWeight(0.5, 3.0, power=1.0, name="y*bump[0.5,3]"),
        BumpWeight(1.0, 4.0, power=-0.5, name="bump[1,4]/sqrt(y)"),
    ]


DEFAULT_SPECTRA = (
    Spectral("holomorphic", 2),
    Spectral("holomorphic", 4),
    Spectral("holomorphic", 6),
    Spectral("plus", 0.5),
    Spectral("plus", 3.0),
    Spectral("minus", 0.0),
    Spectral("minus", 1.3),
)


def kuznetsov_transform_consistency(phi=None, spectral=None, X=(1.0, 4 * math.pi), rel_tol: float = 1e-6) -> SuiteReport:
    """Direct Bessel convolution versus Mellin contour, relative agreement.

    phi, spectral and X may each be a single item or a sequence.
    """
    phis = default_test_weights() if phi is None else (phi if isinstance(phi, (list, tuple)) else [phi])
    specs = DEFAULT_SPECTRA if spectral is None else (spectral if isinstance(spectral, (list, tuple)) else [spectral])
    Xs = X if isinstance(X, (list, tuple)) else [X]
    rep = SuiteReport("specfun.kuznetsov", {"X": list(Xs), "rel_tol": rel_tol, "weights": [getattr(p, "name", repr(p)) for p in phis]})
    for p in phis:
        for sp in specs:
            for x in Xs:
                d = transform_direct(p, sp, x)
                m, T, edge = transform_mellin(p, sp, x)
                scale = max(abs(d), 1e-300)
                rep.add(Case(
                    {"weight": getattr(p, "name", ""), "kind": sp.kind, "param": sp.param, "X": x},
                    d, m, abs(d - m) / scale, rel_tol, f"relative; contour height {T:g}",
                ))
    return rep


# -------------------------------------------------------------- H kernel

@dataclass(frozen=True)
class HKernelArgs:
    s: complex
    w: complex
    u: complex
    kappa: int

    def check(self) -> None:
        k = self.kappa
        if k < 2 or k % 2:
            raise DomainError("kappa must be an even integer >= 2")
        su = complex(self.s + self.w + self.u)
        if not (complex(self.s).real < k / 2 and complex(self.w + self.u).real < k / 2 and su.real > 0):
            raise DomainError("outside Re s, Re(w+u) < kappa/2, Re(s+w+u) > 0")


def script_H(s: complex, w: complex, u: complex, kappa: int) -> complex:
    """(-1)^{kappa/2} (2 pi)^{S-1} Gamma(S) Gamma(kappa/2-w-u) Gamma(kappa/2-s)
    / (Gamma(kappa/2+s) Gamma(kappa/2+w+u)),  S = s+w+u."""
    HKernelArgs(s, w, u, kappa).check()
    s, wu = complex(s), complex(w) + complex(u)
    S = s + wu
    h = kappa / 2
    num = gamma_complex(S) * gamma_complex(h - wu) * gamma_complex(h - s)
    den = gamma_complex(h + s) * gamma_complex(h + wu)
    return (-1) ** (kappa // 2) * (2 * math.pi) ** (S - 1) * num / den


def script_H_growth(kappa: int, w: complex, u: complex, sigma: float, ims) -> float:
    """Smallest A with |H(sigma+iy)| <= |H(sigma)| (1+y)^A over the sampled y.

    A finite, moderate A on a long range of y is the numerical face of
    polynomial growth in the imaginary direction.
    """
    h0 = abs(script_H(sigma, w, u, kappa))
    best = -math.inf
    for y in ims:
        if y <= 0:
            continue
        r = math.log(abs(script_H(sigma + 1j * y, w, u, kappa)) / h0) / math.log1p(y)
        best = max(best, r)
    return best


# ------------------------------------------------------- Hankel-J integral

def hankel_J_closed(nu: complex, mu: complex, lam: complex) -> complex:
    nu, mu, lam = complex(nu), complex(mu), complex(lam)
    num = 1j * 2 ** (lam - 1) * gamma_complex(1 - lam) * gamma_complex((nu + mu + lam) / 2) * gamma_complex((mu - nu + lam) / 2)
    den = math.pi * gamma_complex((nu + mu - lam) / 2 + 1) * gamma_complex((mu - nu - lam) / 2 + 1)
    return num / den * cmath.exp(-0.5j * math.pi * (mu - nu + lam))


def hankel_J_quad(nu: complex, mu: complex, lam: complex, x_split: float = 40.0, dps: int = 20) -> complex:
    """int_0^oo H2_nu(x) J_mu(x) x^{lam-1} dx.

    Head on the real line; past x_split, J = (H1+H2)/2.  H2*H2 decays on the
    ray x_split - i y, while H2*H1 is non-oscillatory and decays on the real
    axis like x^{lam-2}.
    """
    with mpmath.workdps(dps):
        nu_, mu_, lam_ = (mpmath.mpmathify(complex(v)) for v in (nu, mu, lam))
        X = mpmath.mpf(x_split)
        f = lambda x: mpmath.hankel2(nu_, x) * mpmath.besselj(mu_, x) * x ** (lam_ - 1)
        head = mpmath.quad(f, mpmath.linspace(0, X, 41))
        g22 = lambda y: mpmath.hankel2(nu_, X - 1j * y) * mpmath.hankel2(mu_, X - 1j * y) * (X - 1j * y) ** (lam_ - 1) * (-1j)
        g21 = lambda x: mpmath.hankel2(nu_, x) * mpmath.hankel1(mu_, x) * x ** (lam_ - 1)
        tail = (mpmath.quad(g22, [0, mpmath.inf]) + mpmath.quad(g21, [X, mpmath.inf])) / 2
        return complex(head + tail)


HANKEL_TRIPLES = (
    (0, 1, 0.5),
    (0.3j, 3, 0.4),
    (0.5, 2, 0.2 + 0.3j),
    (1.2, 2.5, -0.3),
    (0.2 + 0.1j, 1, 0.7),
)


def hankel_J_mellin_check(triples=HANKEL_TRIPLES, rel_tol: float = 1e-5) -> SuiteReport:
    rep = SuiteReport("specfun.hankel_J", {"rel_tol": rel_tol})
    for nu, mu, lam in triples:
        nu, mu, lam = complex(nu), complex(mu), complex(lam)
        if not (max((nu - mu).real, (-nu - mu).real) < lam.real < 1):
            raise DomainError(f"({nu}, {mu}, {lam}) is outside Re(+-nu - mu) < Re(lam) < 1")
        a = hankel_J_closed(nu, mu, lam)
        b = hankel_J_quad(nu, mu, lam)
        rep.add(Case({"nu": nu, "mu": mu, "lambda": lam}, b, a, abs(a - b) / abs(a), rel_tol, "relative"))
    return rep


# --------------------------------------------- the double integral I

def _inner_t_integral(z: float, A: float, c: float, k: float, nu: complex) -> complex:
    """int_0^oo e(-A z/(c k t)) e(-k t/c) t^nu dt/t along a steepest-descent path.

    With t = e^x the phase is alpha e^{-x} + beta e^{x}; the contour
    x = x0 + a - i gd(a) (gd the Gudermannian) turns both exponentials into
    decaying ones, so a trapezoid rule in a converges geometrically.
    """
    alpha = 2 * math.pi * A * z / (c * k)
    beta = 2 * math.pi * k / c
    R = math.sqrt(alpha * beta)
    x0 = 0.5 * math.log(alpha / beta)
    L = math.asinh(60.0 / R + 1) + 3
    h = min(0.02, 0.1 / math.sqrt(R))
    a = np.arange(-L, L + h / 2, h)
    gd = 2 * np.arctan(np.tanh(a / 2))
    x = x0 + a - 1j * gd
    f = np.exp(-1j * alpha * np.exp(-x) - 1j * beta * np.exp(x) + nu * x) * (1 - 1j / np.cosh(a))
    return complex(np.sum(f) - (f[0] + f[-1]) / 2) * h


def script_I_numeric(s: complex, w: complex, u: complex, kappa: int, A: float, c: float, k: float,
                     x_max: float = 250.0, panels: int = 2500, order: int = 20) -> complex:
    """I = int_0^oo J_{kappa-1}(4 pi sqrt(A z)/c) z^{-s} (inner t-integral) dz/sqrt(z), A = a m1.

    The outer integral is taken in x = 4 pi sqrt(A z)/c up to x_max; for
    Re(s+w+u) comfortably above 1 the truncated tail is below 1e-5.
    """
    nu = complex(s) - complex(w) - complex(u)
    x, wts = _gl_nodes(0.0, x_max, panels, order)
    z = (c * x / (4 * math.pi)) ** 2 / A
    inner = np.array([_inner_t_integral(zi, A, c, k, nu) for zi in z])
    # dz/sqrt(z) * z^{-s} = z^{1/2 - s} dz/z, and dz/z = 2 dx/x
    f = jv(kappa - 1, x) * z ** (0.5 - complex(s)) * inner * 2 / x
    return complex(np.sum(f * wts))


def script_I_predicted(s, w, u, kappa, A, c, k, with_phase: bool = True) -> complex:
    """H(s,w,u,kappa) k^{-(s-w-u)} A^{s-1/2} c^{1-s-w-u}, optionally times e^{i pi (s+w+u)/2}."""
    s, w, u = complex(s), complex(w), complex(u)
    S = s + w + u
    val = script_H(s, w, u, kappa) * k ** (-(s - w - u)) * A ** (s - 0.5) * c ** (1 - S)
    if with_phase:
        val *= cmath.exp(0.5j * math.pi * S)
    return val


SCRIPT_I_PARAMS = {"s": 1.1, "w": 0.6, "u": 0.7, "kappa": 4, "A": 2.0, "c": 3.0, "k": 1.0}


def script_I_check(params: dict | None = None, rel_tol: float = 1e-4) -> SuiteReport:
    """Compare the numeric double integral with the H factorization.

    Two cases: the factorization including the phase e^{i pi (s+w+u)/2}
    produced by the Hankel-J evaluation, and the factorization without it.
    """
    p = dict(SCRIPT_I_PARAMS if params is None else params)
    rep = SuiteReport("specfun.script_I", {"params": p, "rel_tol": rel_tol})
    num = script_I_numeric(p["s"], p["w"], p["u"], p["kappa"], p["A"], p["c"], p["k"])
    for phase in (True, False):
        pred = script_I_predicted(p["s"], p["w"], p["u"], p["kappa"], p["A"], p["c"], p["k"], with_phase=phase)
        rep.add(Case(dict(p, variant="with_phase" if phase else "printed"), num, pred,
                     abs(num - pred) / abs(pred), rel_tol, "relative"))
    return rep


# --------------------------------------------------------- Mellin grids

MELLIN_J_GRID = tuple((complex(s), nu) for s, nu in [
    (0.7, 3), (1.0, 0), (1.0, 1), (0.5, 0), (1.2, 0.5), (0.3 + 0.5j, 1), (1.4, 2), (0.8 - 1j, 0.3),
    (0.2, 0.5), (1.1 + 2j, 4), (0.6, 1.5), (1.3, 0), (0.9 + 0.4j, 2.5), (-0.5, 1), (-1.5, 3),
    (0.5 + 3j, 2), (1.45, 1), (0.1, 0.2), (1.0 + 1j, 0.5j), (0.7, 1 + 0.5j),
])

MELLIN_K_GRID = tuple((complex(s), t) for s, t in [
    (1.3, 0.7), (1.0, 0.0), (2.0, 0.0), (0.5, 0.3), (3.0, 1.0), (1.5 + 1j, 0.2), (2.5, 2.0), (0.8, 1.5),
    (4.0, 0.0), (1.0 + 2j, 0.5), (0.3, 0.0), (2.2 - 0.7j, 0.8), (1.7, 3.0), (5.0, 0.4), (0.9 + 0.3j, 1.1),
    (2.0, 2.5), (1.2, 0.05), (3.5 + 1.5j, 0.6), (0.6, 0.9), (2.8, 1.7),
])


def mellin_check(rel_tol: float = 1e-6) -> SuiteReport:
    """Closed forms against quadrature on the two 20-point grids."""
    rep = SuiteReport("specfun.mellin", {"rel_tol": rel_tol})
    for s, nu in MELLIN_J_GRID:
        a = mellin_J_closed(s, nu)
        b = mellin_J_quad(s, nu).value
        rep.add(Case({"kind": "J", "s": s, "nu": nu}, b, a, abs(a - b) / max(abs(a), 1e-300), rel_tol, "relative"))
    for s, t in MELLIN_K_GRID:
        a = mellin_K_closed(s, t)
        b = mellin_K_quad(s, t).value
        rep.add(Case({"kind": "K", "s": s, "t": t}, b, a, abs(a - b) / max(abs(a), 1e-300), rel_tol, "relative"))
    return rep
