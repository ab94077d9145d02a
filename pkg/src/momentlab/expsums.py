"""Complete exponential sums: Kloosterman, Ramanujan, the Poisson-step sum H
and the triple sum A, each with a brute-force and a closed-form route."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import ck_factorize, divisors, id_star_phi, inverse_mod, mobius

TWO_PI_I = 2j * math.pi


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class ExpSumValue:
    value: complex
    modulus: int
    term_count: int
    method: str = ""
    flags: tuple = ()

    def __complex__(self) -> complex:
        return complex(self.value)

    def __abs__(self) -> float:
        return abs(self.value)

    @property
    def real(self) -> float:
        return self.value.real

    @property
    def imag(self) -> float:
        return self.value.imag


def e(x) -> complex:
    return np.exp(TWO_PI_I * x)


def _unit_residues(c: int) -> np.ndarray:
    return np.array([x for x in range(c) if math.gcd(x, c) == 1], dtype=np.int64)


@lru_cache(maxsize=4096)
def _units_and_inverses(c: int) -> tuple:
    xs = _unit_residues(c)
    inv = np.array([pow(int(x), -1, c) if c > 1 else 0 for x in xs], dtype=np.int64)
    return xs, inv


# ---------------------------------------------------------------- exact mode

@lru_cache(maxsize=512)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients (constant term first) of the n-th cyclotomic polynomial."""
    num = [1]
    den = [1]
    for d in divisors(n):
        mu = mobius(n // d)
        xd = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _pmul(num, xd)
        elif mu == -1:
            den = _pmul(den, xd)
    q, r = _pdivmod(num, den)
    assert all(v == 0 for v in r)
    return tuple(q)


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pdivmod(a, b):
    """Division by a monic integer polynomial b."""
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [0], a
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        coef = a[i]
        if coef:
            q[i - db] = coef
            for j in range(db + 1):
                a[i - db + j] -= coef * b[j]
    return q, a[:db] if db else [0]


def exact_root_sum(residues, c: int) -> tuple:
    """Canonical form of sum_j e(r_j / c) in Z[zeta_c].

    The multiset of exponents is reduced modulo the c-th cyclotomic
    polynomial, so two sums are equal iff their canonical tuples are equal.
    """
    c = int(c)
    coeffs = [0] * c
    for r in residues:
        coeffs[int(r) % c] += 1
    if c == 1:
        return (coeffs[0],)
    _, rem = _pdivmod(coeffs, list(cyclotomic_poly(c)))
    deg = len(cyclotomic_poly(c)) - 1
    rem = list(rem) + [0] * (deg - len(rem))
    return tuple(rem[:deg])


def exact_value(canon: tuple, c: int) -> complex:
    return complex(sum(a * e(j / c) for j, a in enumerate(canon)))


# ------------------------------------------------------------- Kloosterman

def kloosterman(m: int, n: int, c: int, exact: bool = False):
    """S(m,n;c) by direct summation over units mod c.

    With exact=True the canonical cyclotomic form is returned instead.
    """
    if c < 1:
        raise PreconditionError("modulus must be positive")
    xs, inv = _units_and_inverses(c)
    phases = (m * xs + n * inv) % c
    if exact:
        return exact_root_sum(phases.tolist(), c)
    val = complex(np.sum(e(phases / c)))
    return ExpSumValue(val, c, len(xs), "brute")


@lru_cache(maxsize=200_000)
def _kloost_cached(m: int, n: int, c: int) -> complex:
    return kloosterman(m, n, c).value


def kloosterman_value(m: int, n: int, c: int) -> complex:
    """Cached scalar S(m,n;c); arguments are reduced mod c first."""
    return _kloost_cached(m % c, n % c, c)


def ramanujan(n: int, c: int, method: str = "divisor") -> ExpSumValue:
    if method == "divisor":
        g = math.gcd(n, c)
        val = sum(d * mobius(c // d) for d in divisors(g))
        return ExpSumValue(complex(val), c, len(_units_and_inverses(c)[0]), "divisor")
    if method == "brute":
        xs, _ = _units_and_inverses(c)
        val = complex(np.sum(e((n * xs % c) / c)))
        return ExpSumValue(val, c, len(xs), "brute")
    raise ValueError(f"unknown method {method!r}")


def ramanujan_int(n: int, c: int) -> int:
    return sum(d * mobius(c // d) for d in divisors(math.gcd(n, c)))


# ---------------------------------------------------------------------- H

def H_bruteforce(k: int, m1: int, na: int, c: int) -> ExpSumValue:
    """H = sum_x S(m1 x, na; c) e(kx/c), via the collapsed single sum
    c * sum*_u [m1 u = -k mod c] e(na u^-1 / c)."""
    if c > 2000:
        raise PreconditionError("H_bruteforce is limited to c <= 2000")
    xs, inv = _units_and_inverses(c)
    mask = (m1 * xs + k) % c == 0
    val = c * complex(np.sum(e((na * inv[mask] % c) / c)))
    return ExpSumValue(val, c, c * len(xs), "brute")


def H_full_bruteforce(k: int, m1: int, na: int, c: int) -> complex:
    """The uncollapsed double sum over x and the Kloosterman units (O(c^2))."""
    xs, inv = _units_and_inverses(c)
    x = np.arange(c)[:, None]
    ph = (m1 * x * xs[None, :] + na * inv[None, :] + k * x) % c
    return complex(np.sum(e(ph / c)))


def H_closed(k: int, m1: int, na: int, c: int) -> ExpSumValue:
    """Closed evaluation through the c/k factorization."""
    if c < 1:
        raise PreconditionError("modulus must be positive")
    if k == 0:
        # every prime has nu_p(k) >= nu_p(c): c2 = c, c0 = k1 = 1
        if m1 % c:
            return ExpSumValue(0j, c, 0, "closed", ("c does not divide m1",))
        return ExpSumValue(complex(c * ramanujan_int(na, c)), c, 0, "closed")
    sign = 1 if k > 0 else -1
    ck = ck_factorize(c, abs(k))
    c0, c2, k1 = ck.c0, ck.c2, ck.k1
    k0 = sign * ck.k0
    if m1 % (k1 * c2):
        return ExpSumValue(0j, c, 0, "closed", ("k1*c2 does not divide m1",))
    m1p = m1 // (k1 * c2)
    if math.gcd(m1p, c0) != 1:
        return ExpSumValue(0j, c, 0, "closed", ("(m1', c0) > 1",))
    if na % k1:
        return ExpSumValue(0j, c, 0, "closed", ("k1 does not divide na",))
    k0bar = inverse_mod(k0, c0)
    phase = e((-na * m1p * k0bar % c0) / c0) if c0 > 1 else 1.0
    val = c * phase * ramanujan_int(na, c2) * k1
    return ExpSumValue(complex(val), c, 0, "closed")


# ---------------------------------------------------------------------- A

def _check_alpha(alpha: int, k: int) -> None:
    if k < 1:
        raise PreconditionError("k must be positive")
    if math.gcd(alpha, k) != 1:
        raise PreconditionError(f"alpha={alpha} is not coprime to k={k}")


@lru_cache(maxsize=256)
def A_table(alpha: int, k: int) -> np.ndarray:
    """All A(p; alpha; k) for p in (Z/k)^3 from one 3-d DFT of e(x1 x2 x3 alpha / k)."""
    _check_alpha(alpha, k)
    x = np.arange(k)
    prod = (x[:, None, None] * x[None, :, None] * x[None, None, :] * alpha) % k
    table = np.fft.fftn(e(prod / k))
    table.setflags(write=False)
    return table


def A_bruteforce(p1: int, p2: int, p3: int, alpha: int, k: int) -> ExpSumValue:
    """Full triple sum over (Z/k)^3.  Uses a DFT table for k >= 8 and a
    literal loop below that; both are the defining sum."""
    _check_alpha(alpha, k)
    if k > 300:
        raise PreconditionError("A_bruteforce is limited to k <= 300")
    if k < 8:
        x = np.arange(k)
        X1, X2, X3 = np.meshgrid(x, x, x, indexing="ij")
        ph = (X1 * X2 * X3 * alpha - X1 * p1 - X2 * p2 - X3 * p3) % k
        val = complex(np.sum(e(ph / k)))
    else:
        val = complex(A_table(alpha % k, k)[p1 % k, p2 % k, p3 % k])
    return ExpSumValue(val, k, k**3, "brute")


def A_reduced(p1: int, p2: int, p3: int, alpha: int, k: int) -> complex:
    """Sum over x3 done first: k * sum over x1 x2 alpha = p3 of e(-(x1 p1 + x2 p2)/k)."""
    x = np.arange(k)
    X1, X2 = np.meshgrid(x, x, indexing="ij")
    mask = (X1 * X2 * alpha - p3) % k == 0
    ph = (X1[mask] * p1 + X2[mask] * p2) % k
    return k * complex(np.sum(e(-ph / k)))


def A_closed(p1: int, p2: int, p3: int, alpha: int, k: int) -> ExpSumValue:
    _check_alpha(alpha, k)
    if p1 == 0 and p2 == 0 and p3 == 0:
        return ExpSumValue(complex(k * id_star_phi(k)), k, 0, "zero")
    if p1 == 0 or p2 == 0 or p3 == 0:
        return ExpSumValue(A_reduced(p1, p2, p3, alpha, k), k, k * k, "mixed_zero_reduced")
    abar = inverse_mod(alpha, k)
    g = math.gcd(math.gcd(p2, p3), k)
    tot = 0j
    for f in divisors(g):
        kf = k // f
        tot += f * kloosterman_value(p1 * abar, (p2 * p3) // (f * f), kf)
    return ExpSumValue(k * tot, k, 0, "closed")
