"""Fourier coefficients phi_{a c}(n, u) of Eisenstein series for Gamma_0(N),
with a = 1/r an Atkin-Lehner cusp and c = v/f arbitrary.

Two routes are provided:

* ``phi_series`` sums the defining Kloosterman-type series up to a cutoff and
  attaches a rigorous bound for the discarded tail.
* ``phi_closed`` evaluates the Dirichlet-character closed form.  The default
  ``variant="corrected"`` is the form that agrees with the series; the
  ``"printed"`` variant is the uncorrected display as originally stated and is kept
  for comparison (it agrees whenever s0*f0 = 1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import coprime_part, divisors, euler_phi, factorize, inverse_mod, mobius
from .characters import L_periodic, character_group, gauss_sum, DomainError
from .cusps import CuspRep, all_cusps, atkin_lehner_matrix, cusp_class_table, _egcd
from .expsums import ramanujan_int

OMEGA_CONST = 4.862  # max over d of 2^omega(d) / d^(1/4), attained near d = 30030


@dataclass(frozen=True)
class EisParams:
    N: int
    r: int
    cusp: CuspRep

    def __post_init__(self):
        if self.N % self.r or math.gcd(self.r, self.N // self.r) != 1:
            raise ValueError("need N = r*s with gcd(r, s) = 1")
        if self.cusp.N != self.N:
            raise ValueError("cusp level mismatch")

    @property
    def s(self) -> int:
        return self.N // self.r

    @property
    def f(self) -> int:
        return self.cusp.f

    @property
    def v(self) -> int:
        return self.cusp.v

    @property
    def width(self) -> int:
        """N'' = (N/f) / (f, N/f), the width of the cusp c."""
        Np = self.N // self.f
        return Np // math.gcd(self.f, Np)

    def derived(self) -> dict:
        f, r, s = self.f, self.r, self.s
        fr, fs = math.gcd(f, r), math.gcd(f, s)
        rp, sp = r // fr, s // fs
        frp = coprime_part(fr, rp)
        f0 = fr // frp
        sfp = coprime_part(sp, fs)
        s0 = sp // sfp
        return {
            "f_r": fr, "f_s": fs, "r'": rp, "s'": sp,
            "f_r'": frp, "f_0": f0, "s_f'": sfp, "s_0": s0,
            "g_r": math.gcd(frp, rp), "g_s": math.gcd(sfp, fs),
        }


def eis_params(N: int, r: int, v: int, f: int) -> EisParams:
    return EisParams(N, r, CuspRep(N, v, f))


def all_params(N: int) -> list:
    out = []
    for r in divisors(N):
        if math.gcd(r, N // r) == 1:
            for c in all_cusps(N):
                out.append(EisParams(N, r, c))
    return out


# ------------------------------------------------------------------ series

@dataclass
class SeriesResult:
    values: dict  # (n, u) -> complex
    tail: dict  # (n, u) -> float
    X_max: int

    def value(self, n: int, u: complex) -> complex:
        return self.values[(n, complex(u))]


@lru_cache(maxsize=64)
def _spf(limit: int) -> np.ndarray:
    spf = np.arange(limit + 1)
    for p in range(2, int(limit**0.5) + 1):
        if spf[p] == p:
            block = spf[p * p :: p]
            mask = block == np.arange(p * p, limit + 1, p)
            block[mask] = p
    return spf


def _prime_divisors(X: int, spf: np.ndarray) -> list:
    ps = []
    while X > 1:
        p = int(spf[X])
        ps.append(p)
        while X % p == 0:
            X //= p
    return ps


def _residue_sets(params: EisParams) -> list:
    """For each X mod N: (P, allowed residues rho mod P) for the cusp condition."""
    N, r, s = params.N, params.r, params.s
    tab = cusp_class_table(N)
    target = all_cusps(N).index(params.cusp)
    out = []
    for Xm in range(N):
        P = math.gcd(N, s * Xm)
        rows = []
        for rho in range(P):
            if math.gcd(math.gcd(rho, Xm), N) != 1:
                continue
            a = (-rho) % N
            c = (Xm - rho * r) % N
            if tab[a, c] == target:
                rows.append(rho)
        out.append((P, rows))
    return out


def series_terms(params: EisParams, ns, X_max: int) -> dict:
    """S_X(n) for 1 <= X <= X_max, where the series is sum_X S_X(n) (w s X^2)^(-u).

    S_X(n) = e(nb/s) * sum over y mod sX, (y, X) = 1, with the cusp
    -y/(X - y r) equivalent to c, of e(n y / (sX)).  The sum is evaluated
    exactly: Moebius over d | X and an arithmetic-progression collapse.
    """
    N, s = params.N, params.s
    W = atkin_lehner_matrix(N, params.r, s)
    b = W.b
    ns = list(ns)
    nmax = max(abs(n) for n in ns)
    spf = _spf(max(X_max, 2))
    rsets = _residue_sets(params)
    out = {n: np.zeros(X_max + 1, dtype=complex) for n in ns}
    for X in range(1, X_max + 1):
        P, rows = rsets[X % N]
        if not rows:
            continue
        sX = s * X
        ps = _prime_divisors(X, spf)
        sq = [(1, 1)]
        for p in ps:
            sq += [(d * p, -mu) for d, mu in sq]
        acc = {n: 0j for n in ns}
        for d, mu in sq:
            g = math.gcd(P, d)
            Q = P * d // g
            m = sX // Q
            if m > nmax:
                continue
            live = [n for n in ns if n % m == 0]
            if not live:
                continue
            Pg, dg = P // g, d // g
            inv = pow(dg, -1, Pg) if Pg > 1 else 0
            for rho in rows:
                if rho % g:
                    continue
                t = (rho // g) * inv % Pg if Pg > 1 else 0
                y0 = d * t % Q
                for n in live:
                    acc[n] += mu * m * cmath.exp(2j * math.pi * (n * y0 % sX) / sX)
        for n in ns:
            if acc[n] != 0:
                out[n][X] = acc[n] * cmath.exp(2j * math.pi * (n * b % s) / s)
    return out


def omega_bound(d: float) -> float:
    return OMEGA_CONST * d**0.25


def tail_bound(params: EisParams, n: int, u: complex, X_max: int) -> float:
    """Rigorous bound for sum_{X > X_max} |S_X(n)| (w s X^2)^(-Re u).

    Uses |S_X| <= 2^omega(X) |n| |R| with |R| <= N, and the fact that a
    nonzero S_X forces X = d e with e | nN.
    """
    sig = complex(u).real
    N, s, w = params.N, params.s, params.width
    a = 2 * sig - 0.25
    if a <= 1:
        return math.inf
    tot = 0.0
    for e_ in divisors(abs(n) * N):
        D = X_max / e_
        m = math.floor(D) + 1
        tail_d = m ** (-a) + m ** (1 - a) / (a - 1)
        om_e = 2 ** len(factorize(e_).factors)
        tot += om_e * e_ ** (-2 * sig) * OMEGA_CONST * tail_d
    return (w * s) ** (-sig) * abs(n) * N * tot


def phi_series_many(params: EisParams, ns, us, X_max: int = 20000) -> SeriesResult:
    for u in us:
        if complex(u).real < 1.1:
            raise DomainError("phi_series needs Re(u) >= 1.1")
    terms = series_terms(params, ns, X_max)
    w, s = params.width, params.s
    X = np.arange(1, X_max + 1, dtype=float)
    vals, tails = {}, {}
    for u in us:
        u = complex(u)
        weight = np.exp(-u * np.log(w * s * X * X))
        for n in ns:
            vals[(n, u)] = complex(np.sum(terms[n][1:] * weight))
            tails[(n, u)] = tail_bound(params, n, u, X_max)
    return SeriesResult(vals, tails, X_max)


def phi_series(params: EisParams, n: int, u: complex, gamma_max: float | None = None, X_max: int | None = None) -> tuple:
    """Truncated defining series; returns (value, tail_bound, X_max).

    The modulus attached to X is gamma = X sqrt(w s).  If gamma_max is not
    given the cutoff grows geometrically until the tail bound drops below
    1e-6 |partial sum| or the cap of 10^6 terms is reached.
    """
    if X_max is None and gamma_max is not None:
        X_max = max(1, int(gamma_max / math.sqrt(params.width * params.s)))
    if X_max is not None:
        res = phi_series_many(params, [n], [u], X_max)
        return res.value(n, u), res.tail[(n, complex(u))], X_max
    X_max = 1000
    while True:
        res = phi_series_many(params, [n], [u], X_max)
        val, tb = res.value(n, u), res.tail[(n, complex(u))]
        if tb < 1e-6 * abs(val) or X_max >= 10**6:
            return val, tb, X_max
        X_max = min(10**6, X_max * 4)


def phi_term_enumerated(params: EisParams, n: int, L: int, entry_bound: int | None = None) -> complex:
    """S_{c a}(0, n; L sqrt(w/s)) by searching matrices rho in SL2(Z).

    Elements of sigma_c^{-1} Gamma sigma_a correspond to rho = g_c^{-1} gamma
    with gamma in Gamma_0(N); with M = sqrt(s) W_s the lower row of rho M is
    (L, D').  Double cosets are labelled by D' mod L.
    """
    N, s = params.N, params.s
    W = atkin_lehner_matrix(N, params.r, s)
    vc, beta, fc, delta = params.cusp.matrix()
    B = entry_bound if entry_bound is not None else 4 * L * N + 8
    seen = set()
    for p21 in range(-B, B + 1):
        rest = L - W.a * p21
        if rest % W.c:
            continue
        p22 = rest // W.c
        if math.gcd(p21, p22) != 1:
            continue
        x, y, _ = _egcd(p22, -p21)  # p11*p22 - p12*p21 = 1
        p11 = x
        # need (g_c rho)_{21} = f*p11' + delta*p21 = 0 mod N for some p11' = p11 + t p21
        if not any((fc * (p11 + t * p21) + delta * p21) % N == 0 for t in range(N)):
            continue
        Dp = p21 * W.b + p22 * W.d
        seen.add(Dp % L)
    return complex(sum(cmath.exp(2j * math.pi * n * D / L) for D in seen))


# ------------------------------------------------------------- closed form

def _ramanujan_tail(l: int, q: int, u: complex) -> complex:
    """sum over m | q^infinity of S(l, 0; q m) m^(-2u), an Euler product over p | q."""
    tot = 1 + 0j
    for p, a in factorize(q).factors:
        b = 0
        t = abs(l)
        while t and t % p == 0:
            t //= p
            b += 1
        loc = 0j
        for j in range(0, b + 2):
            loc += ramanujan_int(l, p ** (a + j)) * p ** (-2 * u * j)
        tot *= loc
    return tot


@lru_cache(maxsize=4096)
def _closed_cached(N, r, v, f, n, u, variant):
    params = eis_params(N, r, v, f)
    dv = params.derived()
    s = params.s
    frp, rp, sfp, fs = dv["f_r'"], dv["r'"], dv["s_f'"], dv["f_s"]
    f0, s0, fr = dv["f_0"], dv["s_0"], dv["f_r"]
    g1, g2 = dv["g_r"], dv["g_s"]
    A_ = frp // g1
    B_ = sfp // g2
    if n % (A_ * B_):
        return 0j
    k = n // (A_ * B_)
    kr, ks = math.gcd(k, g1), math.gcd(k, g2)
    ell = k // (kr * ks)
    m1, m2 = g1 // kr, g2 // ks
    M = m1 * m2
    if variant == "corrected":
        ram = _ramanujan_tail(ell, s0 * f0, u)
        dmod = N
        Lmod = N
    elif variant == "printed":
        ram = complex(ramanujan_int(ell, s0 * f0))
        dmod = fs * rp
        Lmod = fs * rp
    else:
        raise ValueError(f"unknown variant {variant!r}")
    pre = ram * A_ * B_ / (params.width * s * fr * fr) ** u
    if pre == 0:
        return 0j
    ds = [d for d in divisors(abs(k)) if math.gcd(d, dmod) == 1]
    big = M * Lmod // math.gcd(M, Lmod)
    xs = np.arange(big)
    principal = np.array([math.gcd(int(x), Lmod) == 1 for x in xs])
    chis = character_group(m1)
    psis = character_group(m2)
    w_chi = inverse_mod(g2, m1)
    w_psi = inverse_mod(g1, m2)
    tot = 0j
    for chi in chis:
        tchi = gauss_sum(chi.conj())
        for psi in psis:
            cp_l = chi(ell) * psi(ell)
            if cp_l == 0:
                continue
            tab = np.conj(chi.values[xs % m1] * psi.values[xs % m2]) ** 2 * principal
            Lval = L_periodic(2 * u, tab)
            base = cp_l * tchi * gauss_sum(psi.conj()) / Lval
            base *= chi(-ks * w_chi) * psi(kr * w_psi)
            inner = 0j
            for d in ds:
                ib = inverse_mod(s0 * f0 * d * d, M) if M > 1 else 0
                inner += d ** (1 - 2 * u) * chi(ib * v) * psi(ib * v)
            tot += base * inner
    return pre * tot / (euler_phi(m1) * euler_phi(m2))


def phi_closed(params: EisParams, n: int, u: complex, variant: str = "corrected") -> complex:
    if n == 0:
        raise ValueError("phi_closed needs n != 0")
    if complex(u).real < 1.1:
        raise DomainError("phi_closed needs Re(u) >= 1.1")
    if params.N > 10**4:
        raise ValueError("character-group modulus exceeds capacity")
    return _closed_cached(params.N, params.r, params.v, params.f, int(n), complex(u), variant)


def classical_phi(n: int, u: complex) -> complex:
    """Level one: sum_c S(n,0;c) c^(-2u) = sigma_{1-2u}(n) / zeta(2u)."""
    import mpmath

    sig = sum(d ** (1 - 2 * u) for d in divisors(abs(n)))
    return complex(sig / complex(mpmath.zeta(2 * complex(u))))
