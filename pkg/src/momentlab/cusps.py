"""Cusps of Gamma_0(N), Atkin-Lehner scaling matrices, allowed moduli and
Kloosterman sums attached to the pair (infinity, 1/r) by matrix enumeration."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import divisors, euler_phi
from .expsums import ExpSumValue, PreconditionError, e, kloosterman
from .report import SuiteReport, compare


def _egcd(a: int, b: int) -> tuple:
    if b == 0:
        return (1 if a >= 0 else -1), 0, abs(a)
    x, y, g = _egcd(b, a % b)
    return y, x - (a // b) * y, g


def _inv_or_one(a: int, c: int) -> int:
    """An s with a*s = 1 mod c; c = 0 encodes the cusp infinity = 1/0."""
    if c == 0:
        return 1 if a == 1 else -1
    if c == 1:
        return 0
    return pow(a % c, -1, c)


def cusps_equivalent(a1: int, c1: int, a2: int, c2: int, N: int) -> bool:
    """Cremona's test: a1/c1 ~ a2/c2 iff s1 c2 = s2 c1 mod gcd(c1 c2, N)."""
    if c1 < 0:
        a1, c1 = -a1, -c1
    if c2 < 0:
        a2, c2 = -a2, -c2
    s1 = _inv_or_one(a1, c1)
    s2 = _inv_or_one(a2, c2)
    g = math.gcd(c1 * c2, N)
    return (s1 * c2 - s2 * c1) % g == 0


@dataclass(frozen=True)
class CuspRep:
    N: int
    v: int
    f: int

    @property
    def g(self) -> int:
        return math.gcd(self.f, self.N // self.f)

    @property
    def width(self) -> int:
        return self.N // math.gcd(self.f * self.f, self.N)

    @property
    def label(self) -> tuple:
        return (self.f, self.v % self.g)

    def is_infinity(self) -> bool:
        return self.f == self.N

    def matrix(self) -> tuple:
        """An SL2(Z) matrix (v, beta; f, delta) sending infinity to v/f."""
        x, y, _ = _egcd(self.v, self.f)
        # v*x + f*y = 1  ->  delta = x, beta = -y
        return (self.v, -y, self.f, x)

    def __str__(self) -> str:
        return f"{self.v}/{self.f}"


def normalize_cusp(N: int, numerator: int, denominator: int) -> CuspRep:
    """Canonical representative v/f with f | N, gcd(v,f)=1 and v minimal."""
    if denominator < 0:
        numerator, denominator = -numerator, -denominator
    if numerator == 0 and denominator == 0:
        raise ValueError("0/0 is not a cusp")
    g = math.gcd(numerator, denominator)
    a, c = numerator // g, denominator // g
    f = N if c == 0 else math.gcd(c, N)
    v = 1
    while True:
        if math.gcd(v, f) == 1 and cusps_equivalent(v, f, a, c, N):
            return CuspRep(N, v, f)
        v += 1


@lru_cache(maxsize=None)
def all_cusps(N: int) -> tuple:
    out = []
    for f in divisors(N):
        reps = []
        v = 1
        target = euler_phi(math.gcd(f, N // f))
        while len(reps) < target:
            if math.gcd(v, f) == 1 and not any(cusps_equivalent(v, f, w, f, N) for w in reps):
                reps.append(v)
            v += 1
        out.extend(CuspRep(N, v, f) for v in reps)
    return tuple(out)


@lru_cache(maxsize=None)
def cusp_class_table(N: int) -> np.ndarray:
    """Index into all_cusps(N) of the cusp a/c, tabulated by (a mod N, c mod N).

    Cusp classes of Gamma_0(N) are unions of Gamma(N) classes, and the latter
    are determined by +-(a, c) mod N, so this table is exact.  Entries with
    gcd(a, c, N) > 1 are -1.
    """
    cs = all_cusps(N)
    tab = np.full((N, N), -1, dtype=np.int64)
    for a0 in range(N):
        for c0 in range(N):
            if math.gcd(math.gcd(a0, c0), N) != 1:
                continue
            a, c = _coprime_lift(a0, c0, N)
            for i, cu in enumerate(cs):
                if cusps_equivalent(a, c, cu.v, cu.f, N):
                    tab[a0, c0] = i
                    break
    if N == 1:
        tab[0, 0] = 0
    return tab


def _coprime_lift(a0: int, c0: int, N: int) -> tuple:
    """Integers a = a0, c = c0 (mod N) with gcd(a, c) = 1."""
    for j in range(0, 10 * N + 10):
        for a in (a0 + j * N,):
            if a == 0 and c0 % N == 0:
                continue
            for i in range(0, 10 * N + 10):
                c = c0 + i * N
                if math.gcd(a, c) == 1:
                    return a, c
    raise RuntimeError("no coprime lift found")


# ----------------------------------------------------- Atkin-Lehner scaling

@dataclass(frozen=True)
class ScalingMatrix:
    """(a, b; c, d) / sqrt(scale) with integer entries; det = 1."""

    a: int
    b: int
    c: int
    d: int
    scale: int
    tag: str

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float) / math.sqrt(self.scale)

    def det(self) -> float:
        return (self.a * self.d - self.b * self.c) / self.scale


def _check_rs(N: int, r: int, s: int) -> None:
    if r * s != N or math.gcd(r, s) != 1:
        raise PreconditionError(f"need N = r*s with gcd(r,s)=1, got N={N}, r={r}, s={s}")


def atkin_lehner_matrix(N: int, r: int, s: int) -> ScalingMatrix:
    """W_s = (s, b; N, s d)/sqrt(s) with s d - r b = 1, sending infinity to 1/r."""
    _check_rs(N, r, s)
    x, y, _ = _egcd(s, r)  # s x + r y = 1
    d, b = x, -y
    return ScalingMatrix(s, b, N, s * d, s, "atkin_lehner")


def allowed_moduli(N: int, r: int, s: int, bound: float) -> list:
    _check_rs(N, r, s)
    out = []
    c = r
    while c * math.sqrt(s) <= bound + 1e-12:
        if math.gcd(c, s) == 1:
            out.append(c * math.sqrt(s))
        c += r
    return out


def _gamma0_bottom_rows(N: int, bound: int):
    """Bottom rows (N*g, delta) of elements of Gamma_0(N), |g|, |delta| <= bound."""
    for g in range(-bound, bound + 1):
        for dl in range(-bound, bound + 1):
            if math.gcd(N * g, dl) == 1:
                yield g, dl


def enumerate_lower_left(N: int, r: int, s: int, bound: float, entry_bound: int | None = None) -> list:
    """Lower-left entries (>0, <= bound) of Gamma_0(N) W_s found by brute-force search."""
    W = atkin_lehner_matrix(N, r, s)
    cmax = int(bound / math.sqrt(s)) + 1
    B = entry_bound if entry_bound is not None else 4 * cmax * N
    found = set()
    # lower-left of gamma*W (times sqrt s) is N*g*W.a + delta*W.c
    for g in range(-B, B + 1):
        # delta ranges so the product stays in the window
        lo = (-cmax * s - N * g * W.a) // W.c - 1
        hi = (cmax * s - N * g * W.a) // W.c + 1
        for dl in range(max(lo, -B), min(hi, B) + 1):
            if math.gcd(N * g, dl) != 1:
                continue
            ll = N * g * W.a + dl * W.c
            if ll > 0:
                val = ll / math.sqrt(s)
                if val <= bound + 1e-9:
                    found.add(round(val, 9))
    return sorted(found)


@lru_cache(maxsize=4096)
def doublecoset_representatives(N: int, r: int, s: int, c: int, order: str = "ascending") -> tuple:
    """Double cosets of Gamma_inf \\ Gamma_0(N) W_s / Gamma_inf with lower-left c*sqrt(s).

    Each gamma = (alpha, beta; N g, delta) gives gamma*W_s; the double coset is
    identified by (A/C mod 1, D/C mod 1), read off as exact fractions.
    """
    W = atkin_lehner_matrix(N, r, s)
    target = c * s  # lower-left of gamma * (integer matrix of W), i.e. C*sqrt(s)
    B = 4 * c * N
    seen = set()
    gs = range(-B, B + 1) if order == "ascending" else range(B, -B - 1, -1)
    for g in gs:
        rest = target - N * g * W.a
        if rest % W.c:
            continue
        dl = rest // W.c
        if math.gcd(N * g, dl) != 1:
            continue
        x, y, _ = _egcd(dl, -N * g)  # alpha*delta - beta*N g = 1
        alpha, beta = x, y
        if order != "ascending":
            # another representative of the same left coset
            alpha, beta = alpha + 7 * N * g, beta + 7 * dl
        A = alpha * W.a + beta * W.c
        D = N * g * W.b + dl * W.d
        seen.add((Fraction(A, target) % 1, Fraction(D, target) % 1))
    return tuple(sorted(seen))


def doublecoset_kloosterman(N: int, r: int, s: int, m: int, n: int, c: int, order: str = "ascending") -> ExpSumValue:
    """S_{infinity,1/r}(m, n; c sqrt(s)) summed over explicitly enumerated double cosets."""
    _check_rs(N, r, s)
    if c < 1 or c % r or math.gcd(c, s) != 1:
        return ExpSumValue(0j, c, 0, "doublecoset", ("modulus not allowed",))
    if c > 500:
        raise PreconditionError("doublecoset_kloosterman is limited to c <= 500")
    reps = doublecoset_representatives(N, r, s, c, order)
    val = sum(e(float((m * fa + n * fd) % 1)) for fa, fd in reps)
    return ExpSumValue(complex(val), c, len(reps), "doublecoset")


def verify_atkin_lehner_identity(N: int, r: int, s: int, cmax: int = 40, mmax: int = 6, nmax: int = 6, tol: float = 1e-9) -> SuiteReport:
    _check_rs(N, r, s)
    rep = SuiteReport("cusps.atkin_lehner", {"N": N, "r": r, "s": s, "cmax": cmax, "mmax": mmax, "nmax": nmax, "tol": tol})
    for c in range(r, cmax + 1, r):
        if math.gcd(c, s) != 1:
            continue
        sbar = pow(s, -1, c) if c > 1 else 0
        for m in range(1, mmax + 1):
            for n in range(1, nmax + 1):
                lhs = doublecoset_kloosterman(N, r, s, m, n, c).value
                rhs = kloosterman(sbar * m, n, c).value
                rep.add(compare({"N": N, "r": r, "s": s, "m": m, "n": n, "c": c}, lhs, rhs, tol))
    return rep


def atkin_lehner_pairs(N: int) -> list:
    out = []
    for r in divisors(N):
        s = N // r
        if math.gcd(r, s) == 1:
            out.append((r, s))
    return out


def stabilizer_generator(N: int, r: int, s: int) -> np.ndarray:
    """W_s T W_s^{-1}, which must lie in Gamma_0(N) and fix 1/r."""
    W = atkin_lehner_matrix(N, r, s).as_array()
    T = np.array([[1.0, 1.0], [0.0, 1.0]])
    return W @ T @ np.linalg.inv(W)
