"""Summation rearrangements used before and after the triple Poisson step,
each checked against brute force, plus the bookkeeping of the delta
parameters that those rearrangements introduce."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import divisors, floorroot, mobius
from .expsums import A_table, H_closed, kloosterman_value
from .oscillatory import bump_family, fourier_transform
from .report import Case, SuiteReport


# ---------------------------------------------------------- delta ledger

class LedgerError(ValueError):
    """An input combination violates a named ledger constraint."""

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        super().__init__(f"{invariant}: {detail}" if detail else invariant)


def _squarefree(n: int) -> bool:
    return mobius(n) != 0


def delta1(a: int, k1: int, d: int) -> int:
    return k1 * d // math.gcd(a, k1 * d)


def delta2(h: int, a: int, m1p: int, g0: int) -> int:
    if (h * a * m1p) % g0:
        raise LedgerError("g0 | h a m1'", f"g0={g0}, h a m1'={h * a * m1p}")
    return h * a * m1p // g0


@dataclass
class ParameterLedger:
    a: int
    d: int
    c2: int
    k1: int
    m1p: int
    g0: int
    e1: int = 1
    e2: int = 1
    r: tuple = ()
    f: int = 1
    delta4: int = 1
    q: int = 1_000_003
    delta1: int = 0
    delta2: int = 0
    delta3: int = 0
    delta5: int = 0
    h: int = 0
    m1: int = 0
    flags: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


def build_ledger(a: int, d: int, c2: int, k1: int, m1p: int, g0: int, e1: int = 1, e2: int = 1,
                 r: tuple | None = None, f: int = 1, delta4: int = 1, q: int = 1_000_003) -> ParameterLedger:
    """Derive delta1..delta5, h and m1 from the primary variables and assert
    every recorded constraint, raising LedgerError on the first failure."""
    for name, v in (("a", a), ("d", d), ("c2", c2), ("k1", k1), ("m1'", m1p), ("g0", g0),
                    ("e1", e1), ("e2", e2), ("f", f), ("delta4", delta4)):
        if v < 1:
            raise LedgerError(f"{name} >= 1", str(v))
    if not _squarefree(a):
        raise LedgerError("a squarefree", str(a))
    if a % q == 0:
        raise LedgerError("(a, q) = 1")
    if c2 % d:
        raise LedgerError("d | c2", f"d={d}, c2={c2}")
    if math.gcd(d, k1) != 1:
        raise LedgerError("(d, k1) = 1", f"d={d}, k1={k1}")
    if k1 % q == 0:
        raise LedgerError("(k1, q) = 1")
    d1 = delta1(a, k1, d)
    if r is None:
        r = (d1, 1, 1)
    r = tuple(int(x) for x in r)
    if len(r) != 3 or r[0] * r[1] * r[2] != d1:
        raise LedgerError("r1 r2 r3 = delta1", f"r={r}, delta1={d1}")
    if (r[1] * r[2]) % e1 or not _squarefree(e1):
        raise LedgerError("e1 | r2 r3, squarefree", f"e1={e1}")
    if r[2] % e2 or not _squarefree(e2):
        raise LedgerError("e2 | r3, squarefree", f"e2={e2}")
    h = e1 * e2 * d1
    if g0 % d:
        raise LedgerError("d | g0", f"d={d}, g0={g0}")
    if math.gcd(g0, q * k1) != 1:
        raise LedgerError("(g0, q k1) = 1", f"g0={g0}")
    d2 = delta2(h, a, m1p, g0)
    if d2 % k1:
        raise LedgerError("k1 | delta2", f"delta2={d2}, k1={k1}")
    c2p = c2 // math.gcd(g0, c2)
    d3 = c2p // math.gcd(f, c2p)
    if not _squarefree(delta4):
        raise LedgerError("delta4 squarefree (Mobius variable)", str(delta4))
    d5 = d3 * delta4 // math.gcd(d3, delta4)
    empty = math.gcd(d2, d5) != 1
    flags = {"empty": empty}
    if not empty and math.gcd(delta4, k1) != 1:
        raise LedgerError("(delta4, k1) = 1", f"delta4={delta4}, k1={k1}")
    if all(v % q for v in (e1, e2, d1, a, m1p)) and d2 % q == 0:
        raise LedgerError("(delta2, q) = 1", f"delta2={d2}")
    if math.gcd(d3, delta4) == 1:
        if floorroot(d5) != floorroot(d3):
            raise LedgerError("floorroot(delta5) = floorroot(delta3)", f"delta3={d3}, delta4={delta4}")
        flags["floorroot_reduces"] = True
    ledger = ParameterLedger(a, d, c2, k1, m1p, g0, e1, e2, r, f, delta4, q,
                             d1, d2, d3, d5, h, k1 * c2 * m1p, flags)
    return ledger


def random_ledger_inputs(rng: np.random.Generator, q: int = 1_000_003) -> dict:
    """One admissible input tuple (every constraint satisfiable by construction)."""
    sqf = [n for n in range(1, 31) if _squarefree(n)]
    a = int(rng.choice(sqf))
    c2 = int(rng.integers(1, 61))
    d = int(rng.choice(divisors(c2)))
    k1 = int(rng.integers(1, 31))
    while math.gcd(k1, d) != 1:
        k1 = int(rng.integers(1, 31))
    m1p = int(rng.integers(1, 31))
    d1 = delta1(a, k1, d)
    r1 = int(rng.choice(divisors(d1)))
    r2 = int(rng.choice(divisors(d1 // r1)))
    r3 = d1 // (r1 * r2)
    e1 = int(rng.choice([x for x in divisors(r2 * r3) if _squarefree(x)]))
    e2 = int(rng.choice([x for x in divisors(r3) if _squarefree(x)]))
    base = e1 * e2 * (a // math.gcd(a, d)) * m1p
    t = int(rng.choice([x for x in divisors(base) if math.gcd(x, k1) == 1]))
    f = int(rng.integers(1, 13))
    delta4 = int(rng.choice([x for x in range(1, 31) if _squarefree(x)]))
    return dict(a=a, d=d, c2=c2, k1=k1, m1p=m1p, g0=d * t, e1=e1, e2=e2, r=(r1, r2, r3), f=f, delta4=delta4, q=q)


def ledger_check(n: int = 10_000, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("combinatorics.ledger", {"n": n, "seed": seed})
    rng = np.random.default_rng(seed)
    violations = 0
    for i in range(n):
        inp = random_ledger_inputs(rng)
        try:
            build_ledger(**inp)
        except LedgerError as exc:
            violations += 1
            rep.add(Case(dict(inp, r=list(inp["r"])), 1, 0, 1, 0, str(exc)))
    rep.add(Case({"tuples": n}, violations, 0, violations, 0, "violations"))
    return rep


# ------------------------------------------------- tau3 and congruence

def tau3_direct(r: int, B: int) -> int:
    """#{(m1, m2, m3) in [1, B]^3 : r | m1 m2 m3}."""
    m = np.arange(1, B + 1, dtype=np.int64)
    prod = (m[:, None, None] * m[None, :, None] % r) * m[None, None, :] % r
    return int(np.count_nonzero(prod == 0))


def tau3_coprime_form(r: int, B: int) -> int:
    """sum over r1 r2 r3 = r of #{m1' : (m1', r2 r3) = 1} #{m2' : (m2', r3) = 1} #{m3'} in the box."""
    tot = 0
    for r1 in divisors(r):
        for r2 in divisors(r // r1):
            r3 = r // (r1 * r2)
            c1 = sum(1 for x in range(1, B // r1 + 1) if math.gcd(x, r2 * r3) == 1)
            c2 = sum(1 for x in range(1, B // r2 + 1) if math.gcd(x, r3) == 1)
            tot += c1 * c2 * (B // r3)
    return tot


def tau3_mobius_form(r: int, B: int) -> int:
    """sum over r1 r2 r3 = r, e1 | r2 r3, e2 | r3 of mu(e1) mu(e2) times the box count of n."""
    tot = 0
    for r1 in divisors(r):
        for r2 in divisors(r // r1):
            r3 = r // (r1 * r2)
            for e1 in divisors(r2 * r3):
                mu1 = mobius(e1)
                if not mu1:
                    continue
                for e2 in divisors(r3):
                    mu2 = mobius(e2)
                    if mu2:
                        tot += mu1 * mu2 * (B // (r1 * e1)) * (B // (r2 * e2)) * (B // r3)
    return tot


def tau3_decompose_check(r: int, box: int) -> SuiteReport:
    if r > 200 or box > 50:
        raise ValueError("need r <= 200 and box <= 50")
    rep = SuiteReport("combinatorics.tau3", {"r": r, "box": box})
    lhs = tau3_direct(r, box)
    for form, rhs in (("coprime", tau3_coprime_form(r, box)), ("mobius", tau3_mobius_form(r, box))):
        rep.add(Case({"r": r, "box": box, "form": form}, lhs, rhs, abs(lhs - rhs), 0))
    return rep


def congruence_direct(D: int, B: int) -> int:
    m = np.arange(1, B + 1, dtype=np.int64)
    return int(np.count_nonzero((m[:, None] * m[None, :]) % D == 0))


def congruence_mobius_form(D: int, B: int) -> int:
    """sum over C A B' = D of mu(C) #{(m, n) : C A m <= B, C B' n <= B}."""
    tot = 0
    for C in divisors(D):
        mu = mobius(C)
        if not mu:
            continue
        for A in divisors(D // C):
            Bp = D // (C * A)
            tot += mu * (B // (C * A)) * (B // (C * Bp))
    return tot


def congruence_decompose_check(D: int, box: int) -> SuiteReport:
    if D > 500:
        raise ValueError("need D <= 500")
    rep = SuiteReport("combinatorics.congruence", {"D": D, "box": box})
    lhs, rhs = congruence_direct(D, box), congruence_mobius_form(D, box)
    rep.add(Case({"D": D, "box": box}, lhs, rhs, abs(lhs - rhs), 0))
    return rep


def tau3_sweep(rmax: int = 30, box: int = 20) -> SuiteReport:
    rep = SuiteReport("combinatorics.tau3_sweep", {"rmax": rmax, "box": box})
    for r in range(1, rmax + 1):
        rep.extend(tau3_decompose_check(r, box))
    return rep


def congruence_sweep(Dmax: int = 100, box: int = 30) -> SuiteReport:
    rep = SuiteReport("combinatorics.congruence_sweep", {"Dmax": Dmax, "box": box})
    for D in range(1, Dmax + 1):
        rep.extend(congruence_decompose_check(D, box))
    return rep


# ----------------------------------------------------- Poisson identities

def _bump_hat(N: float, xis: np.ndarray) -> np.ndarray:
    """int omega(t/N) e(-xi t) dt."""
    return fourier_transform(bump_family(N), xis)


def _tail_mass(N: float, k: int, P: int) -> tuple:
    """(sum over |p| <= P, sum over all p) of |bhat(p/k)|, the latter with
    the terms past 8P bounded by a |p|^-9 power law from the last value."""
    ps = np.arange(-8 * P, 8 * P + 1)
    vals = np.abs(_bump_hat(N, ps / k))
    inner = float(np.sum(vals[np.abs(ps) <= P]))
    last = float(max(vals[0], vals[-1]))
    far = 2 * last * (8 * P) / 8  # sum_{p > X} (p/X)^-9 <= X/8
    return inner, float(np.sum(vals)) + far


def triple_poisson_check(k: int, alpha: int = 1, dual_truncation: int = 64, N: float = 12.0,
                         tol: float = 1e-6) -> SuiteReport:
    """sum_n e(n1 n2 n3 alpha/k) J(n) against k^-3 sum_p A(p; alpha; k) B(p; k)
    for the separable J(t) = omega(t1/N) omega(t2/N) omega(t3/N)."""
    if math.gcd(alpha, k) != 1 or k > 60:
        raise ValueError("need (alpha, k) = 1 and k <= 60")
    P = dual_truncation
    rep = SuiteReport("combinatorics.triple_poisson", {"k": k, "alpha": alpha, "P": P, "N": N, "tol": tol})
    n = np.arange(int(math.floor(N)), int(math.ceil(2 * N)) + 1)
    b = bump_family(N)(n.astype(float))
    ph = ((n[:, None, None] * n[None, :, None] % k) * n[None, None, :] * alpha) % k
    lhs = complex(np.einsum("i,j,k,ijk->", b, b, b, np.exp(2j * np.pi * ph / k)))
    ps = np.arange(-P, P + 1)
    bh = _bump_hat(N, -ps / k)  # B uses e(+p t/k)
    A = A_table(alpha % k, k)
    Ap = A[np.ix_(ps % k, ps % k, ps % k)]
    rhs = complex(np.einsum("i,j,k,ijk->", bh, bh, bh, Ap)) / k**3
    inner, total = _tail_mass(N, k, P)
    tail = float(np.max(np.abs(A))) / k**3 * (total**3 - inner**3)
    err = abs(lhs - rhs)
    note = f"tail bound {tail:.2e}"
    if tail > tol:
        note += f"; inconclusive, try dual_truncation {2 * P}"
    rep.add(Case({"k": k, "alpha": alpha, "P": P}, [lhs.real, lhs.imag], [rhs.real, rhs.imag], err,
                 max(tol, 0.0), note))
    rep.config["tail_bound"] = tail
    return rep


def triple_poisson_suite(ks=(1, 2, 3, 6, 10, 12), dual_truncation: int = 64, tol: float = 1e-6) -> SuiteReport:
    rep = SuiteReport("combinatorics.triple_poisson", {"ks": list(ks), "P": dual_truncation, "tol": tol})
    for k in ks:
        alphas = [1] + ([k - 1] if k > 2 else [])
        for al in alphas:
            rep.extend(triple_poisson_check(k, al, dual_truncation, tol=tol))
    return rep


def poisson_H_step_check(m1: int, na: int, c: int, N: float = 10.0, dual_truncation: int | None = None,
                         tol: float = 1e-6) -> SuiteReport:
    """sum_{m2} S(m1 m2, na; c) g(m2) against c^-1 sum_k H(k, m1, na; c) ghat(k/c),
    g(t) = omega(t/N)."""
    if c > 300:
        raise ValueError("need c <= 300")
    K = dual_truncation if dual_truncation is not None else 5 * c
    rep = SuiteReport("combinatorics.poisson_H", {"m1": m1, "na": na, "c": c, "N": N, "K": K, "tol": tol})
    m2 = np.arange(int(math.floor(N)), int(math.ceil(2 * N)) + 1)
    g = bump_family(N)(m2.astype(float))
    lhs = sum(kloosterman_value(int(m1 * x), na, c) * gv for x, gv in zip(m2, g))
    ks = np.arange(-K, K + 1)
    gh = _bump_hat(N, ks / c)
    Hs = np.array([complex(H_closed(int(k), m1, na, c)) for k in ks])
    rhs = complex(np.sum(Hs * gh)) / c
    err = abs(lhs - rhs)
    rep.add(Case({"m1": m1, "na": na, "c": c}, [lhs.real, lhs.imag], [rhs.real, rhs.imag], err, tol))
    return rep


def poisson_H_sweep(cs=range(4, 61), m1s=(1, 6), nas=(1, 5), tol: float = 1e-6) -> SuiteReport:
    rep = SuiteReport("combinatorics.poisson_H_sweep", {"c": [min(cs), max(cs)], "m1": list(m1s), "na": list(nas), "tol": tol})
    for c in cs:
        for m1 in m1s:
            for na in nas:
                rep.extend(poisson_H_step_check(m1, na, c, tol=tol))
    return rep
