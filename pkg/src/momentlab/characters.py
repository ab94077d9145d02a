"""Dirichlet characters, Gauss sums and L-values for Re(s) >= 1.1."""

from __future__ import annotations

import cmath
import math
from functools import lru_cache
from itertools import product

import mpmath
import numpy as np

from .arith import factorize

CHAR_MODULUS_MAX = 10**4


class CharacterCapacityError(ValueError):
    pass


class DomainError(ValueError):
    pass


def _primitive_root(p: int) -> int:
    phi = p - 1
    qs = [q for q, _ in factorize(phi).factors]
    for g in range(2, p):
        if all(pow(g, phi // q, p) != 1 for q in qs):
            return g
    return 1  # p == 2


def _components(n: int) -> list:
    """Cyclic decomposition of (Z/n)^x as (prime_power, generator, order) triples.

    Generators are lifted to residues mod n by CRT.  For 2^e with e >= 3 the
    group is <-1> x <5>.
    """
    comps = []
    for p, e in factorize(n).factors:
        q = p**e
        if p == 2:
            if e == 1:
                continue
            comps.append((q, q - 1, 2))
            if e >= 3:
                comps.append((q, 5, 2 ** (e - 2)))
        else:
            g = _primitive_root(p)
            # a primitive root mod p^2 is one mod every p^e
            if e >= 2 and pow(g, p - 1, p * p) == 1:
                g += p
            comps.append((q, g, (p - 1) * p ** (e - 1)))
    return comps


@lru_cache(maxsize=256)
def _log_tables(n: int) -> tuple:
    """For each cyclic component, an array giving the discrete log of x mod n
    (or -1 when gcd(x, n) > 1)."""
    comps = _components(n)
    units = np.array([math.gcd(x, n) == 1 for x in range(n)])
    tables = []
    for idx, (q, g, order) in enumerate(comps):
        log_q = np.full(q, -1, dtype=np.int64)
        if q % 2 == 0 and q >= 8:
            # 2-power part: x = (-1)^a 5^b mod q
            five = np.full(q, -1, dtype=np.int64)
            y = 1
            for b in range(q // 4):
                five[y] = b
                five[(-y) % q] = b
                y = y * 5 % q
            if g == q - 1:
                for x in range(1, q, 2):
                    log_q[x] = 0 if x % 4 == 1 else 1
            else:
                log_q = five
        else:
            y = 1
            for a in range(order):
                log_q[y] = a
                y = y * g % q
        tab = np.where(units, log_q[np.arange(n) % q], -1)
        tables.append(tab)
    return tuple(comps), tuple(tables), units


class DirichletCharacter:
    """A character mod n given by exponents on the cyclic generators."""

    def __init__(self, modulus: int, exponents: tuple):
        self.modulus = int(modulus)
        comps, tables, units = _log_tables(self.modulus) if self.modulus > 1 else ((), (), np.array([True]))
        if len(exponents) != len(comps):
            raise ValueError("one exponent per cyclic factor is required")
        self.generator_exponents = tuple(int(a) % o for a, (_, _, o) in zip(exponents, comps))
        self.orders = tuple(o for _, _, o in comps)
        phase = np.zeros(self.modulus)
        for a, (_, _, o), tab in zip(self.generator_exponents, comps, tables):
            phase = phase + a * np.where(tab >= 0, tab, 0) / o
        vals = np.exp(2j * np.pi * phase)
        vals[~units] = 0
        self.values = vals

    def __call__(self, x: int) -> complex:
        return complex(self.values[int(x) % self.modulus])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DirichletCharacter)
            and self.modulus == other.modulus
            and self.generator_exponents == other.generator_exponents
        )

    def __hash__(self) -> int:
        return hash((self.modulus, self.generator_exponents))

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.modulus != self.modulus:
            raise ValueError("characters must share a modulus")
        return DirichletCharacter(self.modulus, tuple(a + b for a, b in zip(self.generator_exponents, other.generator_exponents)))

    def conj(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(-a for a in self.generator_exponents))

    def __pow__(self, k: int) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, tuple(k * a for a in self.generator_exponents))

    def is_principal(self) -> bool:
        return all(a == 0 for a in self.generator_exponents)

    def conductor(self) -> int:
        n = self.modulus
        for d in sorted(_divisors(n)):
            # chi factors through mod d iff chi(x) = 1 for all units x = 1 mod d
            if all(abs(self.values[x] - 1) < 1e-9 for x in range(1, n, d) if math.gcd(x, n) == 1):
                return d
        return n

    def is_primitive(self) -> bool:
        return self.conductor() == self.modulus

    def __repr__(self) -> str:
        return f"DirichletCharacter({self.modulus}, {self.generator_exponents})"


def _divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


def character_group(n: int) -> list:
    """All phi(n) characters mod n; index 0 is principal."""
    n = int(n)
    if n < 1:
        raise ValueError("modulus must be positive")
    if n > CHAR_MODULUS_MAX:
        raise CharacterCapacityError(f"modulus {n} exceeds {CHAR_MODULUS_MAX}")
    if n == 1:
        return [DirichletCharacter(1, ())]
    comps = _components(n)
    return [DirichletCharacter(n, ex) for ex in product(*[range(o) for _, _, o in comps])]


def lift(chi: DirichletCharacter, m: int) -> DirichletCharacter:
    """The character mod m (a multiple of chi's modulus) induced by chi."""
    if m % chi.modulus:
        raise ValueError("target modulus must be a multiple")
    target = np.array([chi.values[x % chi.modulus] if math.gcd(x, m) == 1 else 0 for x in range(m)])
    for cand in character_group(m):
        if np.allclose(cand.values, target, atol=1e-9):
            return cand
    raise RuntimeError("no induced character found")


def gauss_sum(chi: DirichletCharacter) -> complex:
    n = chi.modulus
    x = np.arange(n)
    return complex(np.sum(chi.values * np.exp(2j * np.pi * x / n)))


def dirichlet_L(s: complex, chi: DirichletCharacter) -> complex:
    """L(s, chi) for Re(s) >= 1.1.

    Uses the exact periodic decomposition L = q^{-s} sum_a chi(a) zeta(s, a/q)
    with mpmath's Hurwitz zeta, so there is no truncation error.
    """
    s = complex(s)
    if s.real < 1.1:
        raise DomainError("dirichlet_L is restricted to Re(s) >= 1.1")
    return L_periodic(s, chi.values)


def L_partial_sum(s: complex, chi: DirichletCharacter, terms: int) -> complex:
    """Plain partial sum of the Dirichlet series (an oracle for dirichlet_L)."""
    n = np.arange(1, terms + 1, dtype=np.float64)
    vals = chi.values[np.arange(1, terms + 1) % chi.modulus]
    return complex(np.sum(vals * np.exp(-complex(s) * np.log(n))))


def e(x: float) -> complex:
    return cmath.exp(2j * math.pi * x)


def L_periodic(s: complex, values) -> complex:
    """L(s, a) for a periodic coefficient table a(1..q) given mod q, Re(s) >= 1.1."""
    s = complex(s)
    if s.real < 1.1:
        raise DomainError("L-values are restricted to Re(s) >= 1.1")
    vals = tuple(complex(round(v.real, 13), round(v.imag, 13)) for v in np.asarray(values, dtype=complex))
    return _L_table_cached(s, vals)


@lru_cache(maxsize=8192)
def _L_table_cached(s: complex, vals: tuple) -> complex:
    q = len(vals)
    ms = mpmath.mpc(s.real, s.imag)
    tot = mpmath.mpc(0)
    for a in range(1, q + 1):
        v = vals[a % q]
        if v == 0:
            continue
        tot += mpmath.mpc(v.real, v.imag) * mpmath.zeta(ms, mpmath.mpf(a) / q)
    return complex(tot * mpmath.power(q, -ms))
