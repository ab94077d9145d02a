"""Registry of verification suites run by the command line.

Each suite has full-size defaults and a reduced ``small`` grid (used by
``--quick`` / ``grid = "small"``). Runners take (params, jobs, seed) and
return a SuiteReport whose case order does not depend on ``jobs``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Callable

import numpy as np

from . import afe, arith, combinatorics, cusps, eisenstein, expsums, oscillatory, specfun
from .report import Case, SuiteReport, compare


def pmap(func: Callable, items, jobs: int = 1) -> list:
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(func, items))


# ------------------------------------------------------------- sweeps

MAX_LISTED_FAILURES = 50


def _H_for_modulus(c: int, kmax: int, m1max: int, namax: int) -> tuple:
    worst, fails, count = 0.0, [], 0
    for k in range(0, kmax + 1):
        for m1 in range(1, m1max + 1):
            for na in range(1, namax + 1):
                a = expsums.H_closed(k, m1, na, c).value
                b = expsums.H_bruteforce(k, m1, na, c).value
                err = abs(a - b)
                count += 1
                worst = max(worst, err)
                if err > 1e-9 * c and len(fails) < MAX_LISTED_FAILURES:
                    fails.append(Case({"k": k, "m1": m1, "na": na, "c": c}, a, b, err, 1e-9 * c))
    return c, worst, count, fails


def run_expsums_H(p: dict, jobs: int, seed: int) -> SuiteReport:
    rep = SuiteReport("expsums.H", dict(p))
    parts = pmap(partial(_H_for_modulus, kmax=p["kmax"], m1max=p["m1max"], namax=p["namax"]),
                 range(1, p["cmax"] + 1), jobs)
    for c, worst, count, fails in parts:
        for f in fails:
            rep.add(f)
        rep.add(Case({"c": c, "cases": count}, worst, 0.0, worst, 1e-9 * c, "max |H_closed - H_brute| over (k, m1, na)"))
    return rep


def _A_for_modulus(k: int, pmax: int) -> tuple:
    worst, fails, count = 0.0, [], 0
    tol = 1e-9 * k**3
    rng = range(-pmax, pmax + 1)
    for alpha in range(1, k + 1):
        if math.gcd(alpha, k) != 1:
            continue
        for p1 in rng:
            for p2 in rng:
                for p3 in rng:
                    a = expsums.A_closed(p1, p2, p3, alpha % k, k).value
                    b = expsums.A_bruteforce(p1, p2, p3, alpha % k, k).value
                    err = abs(a - b)
                    count += 1
                    worst = max(worst, err)
                    if err > tol and len(fails) < MAX_LISTED_FAILURES:
                        fails.append(Case({"p": [p1, p2, p3], "alpha": alpha, "k": k}, a, b, err, tol))
    return k, worst, count, fails


def run_expsums_A(p: dict, jobs: int, seed: int) -> SuiteReport:
    rep = SuiteReport("expsums.A", dict(p))
    for k, worst, count, fails in pmap(partial(_A_for_modulus, pmax=p["pmax"]), range(1, p["kmax"] + 1), jobs):
        for f in fails:
            rep.add(f)
        rep.add(Case({"k": k, "cases": count}, worst, 0.0, worst, 1e-9 * k**3, "max |A_closed - A_brute| over (p, alpha)"))
    return rep


def _al_for_level(N: int, cmax: int, mmax: int, nmax: int) -> list:
    out = []
    for r, s in cusps.atkin_lehner_pairs(N):
        out.extend(cusps.verify_atkin_lehner_identity(N, r, s, cmax, mmax, nmax).cases)
    return out


def run_cusps_al(p: dict, jobs: int, seed: int) -> SuiteReport:
    rep = SuiteReport("cusps.atkin_lehner", dict(p))
    for cases in pmap(partial(_al_for_level, cmax=p["cmax"], mmax=p["mmax"], nmax=p["nmax"]), range(1, p["Nmax"] + 1), jobs):
        rep.cases.extend(cases)
    return rep


def _eis_for_level(N: int, nmax: int, us: tuple, variant: str, X_max: int) -> list:
    out = []
    ns = list(range(1, nmax + 1))
    for P in eisenstein.all_params(N):
        res = eisenstein.phi_series_many(P, ns, us, X_max=X_max)
        for n in ns:
            for u in us:
                ser = res.value(n, u)
                tb = res.tail[(n, complex(u))]
                clo = eisenstein.phi_closed(P, n, u, variant)
                out.append(Case({"N": N, "r": P.r, "cusp": [P.v, P.f], "n": n, "u": complex(u)},
                                clo, ser, abs(clo - ser), tb + 1e-8, "tol = tail bound + 1e-8"))
    return out


def _eis_runner(variant: str):
    def run(p: dict, jobs: int, seed: int) -> SuiteReport:
        name = "eisenstein.closed_vs_series" if variant == "corrected" else "eisenstein.printed_form"
        rep = SuiteReport(name, dict(p, variant=variant))
        us = tuple(complex(u[0], u[1]) if isinstance(u, list) else complex(u) for u in p["us"])
        for cases in pmap(partial(_eis_for_level, nmax=p["nmax"], us=us, variant=variant, X_max=p["X_max"]),
                          range(1, p["Nmax"] + 1), jobs):
            rep.cases.extend(cases)
        return rep
    return run


def run_divisor_bounds(p: dict, jobs: int, seed: int) -> SuiteReport:
    return arith.check_divisor_bounds(p["Nmax"])


def run_mellin(p: dict, jobs: int, seed: int) -> SuiteReport:
    return specfun.mellin_check(p["rel_tol"])


def run_kuznetsov(p: dict, jobs: int, seed: int) -> SuiteReport:
    specs = [s for s in specfun.DEFAULT_SPECTRA if f"{s.kind}:{s.param:g}" in p["spectra"]]
    return specfun.kuznetsov_transform_consistency(spectral=specs, X=tuple(float(x) for x in p["X"]), rel_tol=p["rel_tol"])


def run_hankel(p: dict, jobs: int, seed: int) -> SuiteReport:
    return specfun.hankel_J_mellin_check(rel_tol=p["rel_tol"])


def _script_I_runner(variant: str):
    def run(p: dict, jobs: int, seed: int) -> SuiteReport:
        full = specfun.script_I_check(rel_tol=p["rel_tol"])
        rep = SuiteReport("specfun.script_I" + ("" if variant == "with_phase" else "_printed"), full.config)
        rep.cases = [c for c in full.cases if c.inputs["variant"] == variant]
        return rep
    return run


def run_specfun_identities(p: dict, jobs: int, seed: int) -> SuiteReport:
    """Gamma recurrence, H-kernel symmetry and special value, Stirling slope."""
    rep = SuiteReport("specfun.identities", dict(p))
    for z in (0.3 + 0.2j, -2.5 + 1j, 7.1 - 3j, 0.5 + 20j):
        lhs = specfun.gamma_complex(z + 1)
        rhs = z * specfun.gamma_complex(z)
        rep.add(Case({"z": z, "identity": "Gamma(z+1) = z Gamma(z)"}, lhs, rhs, abs(lhs - rhs) / abs(rhs), 1e-12, "relative"))
    v = specfun.script_H(0.5, 0.25, 0.25, 4)
    rep.add(compare({"s": 0.5, "w": 0.25, "u": 0.25, "kappa": 4}, v, 4 / 9, 1e-12, "H special value 4/9"))
    for s, w, u in ((0.7, 0.3 + 0.1j, 0.45), (1.1, 0.6, 0.7)):
        a, b = specfun.script_H(s, w, u, 4), specfun.script_H(s, u, w, 4)
        rep.add(compare({"s": s, "w": w, "u": u, "identity": "w <-> u"}, a, b, 1e-12 * max(1.0, abs(a))))
    slope = specfun.stirling_slope(1.5, 4, (10.0, 100.0))
    rep.add(Case({"sigma": 1.5, "kappa": 4, "quantity": "Stirling slope"}, slope, 0.5, abs(slope - 0.5), 0.1))
    return rep


def run_partition(p: dict, jobs: int, seed: int) -> SuiteReport:
    return oscillatory.partition_check(tol=p["tol"])


def run_stationary(p: dict, jobs: int, seed: int) -> SuiteReport:
    rep = oscillatory.stationary_phase_scaling(tuple(float(y) for y in p["Ys"]))
    rep.name = "oscillatory.stationary_phase"
    rep.extend(oscillatory.no_critical_point_check(Y=float(p["Y_nocrit"])))
    return rep


def run_stationary_classical(p: dict, jobs: int, seed: int) -> SuiteReport:
    fam = oscillatory.InertFamily(specfun.BumpWeight(1.0, 2.0), [(1.0, 2.0)], 1.0, 4, "exp(-1/(1-u^2)) on [1,2]")
    rep = oscillatory.stationary_phase_scaling(tuple(float(y) for y in p["Ys"]), family=fam)
    rep.name = "oscillatory.stationary_phase_classical"
    return rep


def run_poisson_phase(p: dict, jobs: int, seed: int) -> SuiteReport:
    return oscillatory.poisson_phase_check()


def run_inert(p: dict, jobs: int, seed: int) -> SuiteReport:
    rep = SuiteReport("oscillatory.inert", dict(p))
    fams = [
        (oscillatory.bump_family(1.0), True),
        (oscillatory.bump_family(7.0, lambda x: np.cos(np.log(x)), 1.0, "omega(x/7) cos(log x)"), True),
        (oscillatory.bump_family(10.0, lambda x: np.cos(10 * x), 1.0, "omega(x/10) cos(10x)"), False),
    ]
    for fam, expect in fams:
        sub = oscillatory.certify_inert(fam, grid=p["grid"])
        rep.add(Case({"family": fam.name, "expected": "inert" if expect else "not inert"},
                     sub.ok, expect, 0.0 if sub.ok == expect else 1.0, 0.0, "certification outcome"))
    return rep


def run_V(p: dict, jobs: int, seed: int) -> SuiteReport:
    rep = afe.V_consistency_check(q=p["q"], kappa=p["kappa"], m=p["m"])
    rep.name = "afe.V"
    rep.extend(afe.V_limits_check(p["kappa"], p["m"]))
    return rep


def run_V_positive(p: dict, jobs: int, seed: int) -> SuiteReport:
    return afe.V_positivity_check(p["q"], p["kappa"], p["m"])


def run_decay_claims(p: dict, jobs: int, seed: int) -> SuiteReport:
    return afe.decay_claims_check(p["q"], p["kappa"], p["m"])


def run_F_a(p: dict, jobs: int, seed: int) -> SuiteReport:
    return afe.F_a_check(q=p["q"])


def run_F_a_inert(p: dict, jobs: int, seed: int) -> SuiteReport:
    return afe.F_a_inertness_check(a=p["a"], q=p["q"], X=float(p["X"]), grid=p["grid"])


def _hecke_one(args: tuple) -> list:
    q, i, Nmax, seed = args
    model = afe.SatakeModel(level=q, seed=seed * 1000 + 17 * q + i)
    out = []
    for kind in ("square", "cube"):
        for c in afe.hecke_identity_check(kind, model, q, Nmax).cases:
            c.inputs = dict(c.inputs, kind=kind, q=q, model=i)
            out.append(c)
    for c in afe.hecke_relation_check(model, nmax=200).cases:
        c.inputs = dict(c.inputs, kind="relation", q=q, model=i)
        out.append(c)
    return out


def run_hecke(p: dict, jobs: int, seed: int) -> SuiteReport:
    rep = SuiteReport("afe.hecke", dict(p, seed=seed))
    tasks = [(int(q), i, p["Nmax"], seed) for q in p["qs"] for i in range(p["models"])]
    for cases in pmap(_hecke_one, tasks, jobs):
        rep.cases.extend(cases)
    return rep


def run_ledger(p: dict, jobs: int, seed: int) -> SuiteReport:
    rep = combinatorics.ledger_check(p["n"], seed)
    led = combinatorics.build_ledger(a=2, d=3, c2=3, k1=2, m1p=5, g0=3)
    rep.add(Case({"example": "a=2,d=3,k1=2,m1'=5,g0=3", "quantity": "delta1"}, led.delta1, 3, abs(led.delta1 - 3), 0))
    rep.add(Case({"example": "h=6,a=2,m1'=5,g0=3", "quantity": "delta2"}, combinatorics.delta2(6, 2, 5, 3), 20,
                 abs(combinatorics.delta2(6, 2, 5, 3) - 20), 0))
    return rep


def run_tau3(p: dict, jobs: int, seed: int) -> SuiteReport:
    rep = combinatorics.tau3_sweep(p["rmax"], p["box"])
    rep.name = "combinatorics.tau3"
    return rep


def run_congruence(p: dict, jobs: int, seed: int) -> SuiteReport:
    rep = combinatorics.congruence_sweep(p["Dmax"], p["box"])
    rep.name = "combinatorics.congruence"
    return rep


def run_triple_poisson(p: dict, jobs: int, seed: int) -> SuiteReport:
    return combinatorics.triple_poisson_suite(tuple(p["ks"]), p["P"], p["tol"])


def run_poisson_H(p: dict, jobs: int, seed: int) -> SuiteReport:
    rep = combinatorics.poisson_H_sweep(range(p["cmin"], p["cmax"] + 1), tuple(p["m1s"]), tuple(p["nas"]), p["tol"])
    rep.name = "combinatorics.poisson_H"
    rep.extend(combinatorics.poisson_H_step_check(1, 1, 5, tol=1e-8))
    return rep


# ------------------------------------------------------------ registry

@dataclass(frozen=True)
class Suite:
    name: str
    runner: Callable
    defaults: dict
    small: dict = field(default_factory=dict)
    criterion: int | None = None
    in_all: bool = True
    aliases: dict = field(default_factory=dict)
    description: str = ""

    def params(self, grid: str = "full", overrides: dict | None = None) -> dict:
        p = dict(self.defaults)
        if grid == "small":
            p.update(self.small)
        for k, v in (overrides or {}).items():
            k = self.aliases.get(k, k)
            if k not in p:
                raise KeyError(f"suite {self.name} has no parameter {k!r} (known: {', '.join(sorted(p))})")
            p[k] = v
        return p


_AFE = {"q": 11, "kappa": afe.DEFAULT_KAPPA, "m": afe.DEFAULT_G_DEGREE}
_ALL_SPECTRA = [f"{s.kind}:{s.param:g}" for s in specfun.DEFAULT_SPECTRA]

SUITES = {s.name: s for s in [
    Suite("arith.divisor_bounds", run_divisor_bounds, {"Nmax": 10**4}, {"Nmax": 2000}, 8,
          description="five divisor-sum bounds with frozen constants"),
    Suite("expsums.H", run_expsums_H, {"cmax": 200, "kmax": 50, "m1max": 20, "namax": 20},
          {"cmax": 40, "kmax": 12, "m1max": 6, "namax": 6}, 1, description="H closed form vs brute force"),
    Suite("expsums.A", run_expsums_A, {"kmax": 60, "pmax": 5}, {"kmax": 14, "pmax": 3}, 1,
          description="A closed form vs brute force"),
    Suite("cusps.atkin_lehner", run_cusps_al, {"Nmax": 30, "cmax": 60, "mmax": 6, "nmax": 6},
          {"Nmax": 12, "cmax": 24, "mmax": 3, "nmax": 3}, 3, description="double-coset Kloosterman sums at Atkin-Lehner cusps"),
    Suite("eisenstein.closed_vs_series", _eis_runner("corrected"),
          {"Nmax": 24, "nmax": 12, "us": [1.25, [1.25, 0.5]], "X_max": 20000},
          {"Nmax": 8, "nmax": 4, "X_max": 5000}, 4, aliases={"N": "Nmax"},
          description="closed Fourier coefficient vs truncated series"),
    Suite("eisenstein.printed_form", _eis_runner("printed"),
          {"Nmax": 24, "nmax": 12, "us": [1.25, [1.25, 0.5]], "X_max": 20000},
          {"Nmax": 8, "nmax": 4, "X_max": 5000}, None, False, {"N": "Nmax"},
          "the uncorrected closed form, kept for reference (fails)"),
    Suite("specfun.identities", run_specfun_identities, {}, {}, 5, description="gamma and H-kernel identities"),
    Suite("specfun.mellin", run_mellin, {"rel_tol": 1e-6}, {}, 5, description="Mellin J/K closed forms vs quadrature"),
    Suite("specfun.kuznetsov", run_kuznetsov, {"rel_tol": 1e-6, "X": [1.0, 4 * math.pi], "spectra": _ALL_SPECTRA},
          {"X": [1.0], "spectra": ["holomorphic:4", "plus:0.5", "minus:0"]}, 5,
          description="Kuznetsov transforms, direct vs Mellin"),
    Suite("specfun.hankel_J", run_hankel, {"rel_tol": 1e-5}, {}, 5, description="Hankel-J Mellin identity"),
    Suite("specfun.script_I", _script_I_runner("with_phase"), {"rel_tol": 1e-4}, {}, 5,
          description="double integral vs H factorization"),
    Suite("specfun.script_I_printed", _script_I_runner("printed"), {"rel_tol": 1e-4}, {}, None, False,
          description="factorization without the Hankel phase, kept for reference (fails)"),
    Suite("oscillatory.partition", run_partition, {"tol": 1e-12}, {}, None, description="dyadic partition of unity"),
    Suite("oscillatory.inert", run_inert, {"grid": 16}, {"grid": 8}, None, description="inert certification outcomes"),
    Suite("oscillatory.stationary_phase", run_stationary, {"Ys": [100.0, 1000.0, 10000.0], "Y_nocrit": 10000.0}, {}, 6,
          description="stationary-phase error slope and non-stationary decay"),
    Suite("oscillatory.stationary_phase_classical", run_stationary_classical, {"Ys": [100.0, 1000.0, 10000.0]}, {},
          None, False, description="the same slope with exp(-1/(1-u^2)), supplementary"),
    Suite("oscillatory.poisson_phase", run_poisson_phase, {}, {}, None, description="Poisson-step integral scaling"),
    Suite("afe.V", run_V, dict(_AFE), {}, 9, description="V e-sum vs contour, V2 near 0"),
    Suite("afe.V_positive", run_V_positive, dict(_AFE), {}, None, description="V > 0 on [1e-4, 1] (empirical)"),
    Suite("afe.decay_claims", run_decay_claims, {"q": 101, "kappa": afe.DEFAULT_KAPPA, "m": afe.DEFAULT_G_DEGREE}, {},
          None, description="stated large-x sizes of V1 and F_a (fail)"),
    Suite("afe.F_a", run_F_a, {"q": 101}, {}, None, description="F_a e-sum vs triple contour, symmetry"),
    Suite("afe.F_a_inert", run_F_a_inert, {"a": 1, "q": 101, "X": 3.0, "grid": 8}, {"grid": 4}, 9,
          description="F_a inertness certificate"),
    Suite("afe.hecke", run_hecke, {"qs": [3, 7], "models": 5, "Nmax": 2000}, {"models": 2, "Nmax": 300}, 7,
          description="square and cube coefficient identities"),
    Suite("combinatorics.ledger", run_ledger, {"n": 10_000}, {"n": 1000}, 8, description="delta-parameter invariants"),
    Suite("combinatorics.tau3", run_tau3, {"rmax": 30, "box": 20}, {"rmax": 12, "box": 10}, 8,
          description="tau3 decomposition counts"),
    Suite("combinatorics.congruence", run_congruence, {"Dmax": 100, "box": 30}, {"Dmax": 30, "box": 15}, 8,
          description="congruence decomposition counts"),
    Suite("combinatorics.triple_poisson", run_triple_poisson, {"ks": [1, 2, 3, 6, 10, 12], "P": 64, "tol": 1e-6},
          {"ks": [1, 2, 6]}, 2, description="triple Poisson with the A table"),
    Suite("combinatorics.poisson_H", run_poisson_H, {"cmin": 4, "cmax": 60, "m1s": [1, 6], "nas": [1, 5], "tol": 1e-6},
          {"cmax": 16, "m1s": [1], "nas": [1]}, 2, description="Poisson step in m2 with H"),
]}


def suites_for_criterion(n: int) -> list:
    return [s for s in SUITES.values() if s.criterion == n]
