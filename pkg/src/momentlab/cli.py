"""momentlab command line.

    momentlab run <suite|all> [--config PATH] [--jobs N] [--out PATH] [--quick] [--grid small|full] [--<param> VALUE ...]
    momentlab compute <object> <args...>
    momentlab list

Exit codes: 0 all cases pass, 1 numeric failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .config import ConfigError, load_config, parse_value
from .report import SuiteReport, _jsonable

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ run

def _parse_overrides(extra: list) -> tuple:
    """Turn leftover ``--key value`` / ``--flag`` tokens into a dict."""
    out, i = {}, 0
    while i < len(extra):
        tok = extra[i]
        if not tok.startswith("--") or len(tok) < 3:
            raise UsageError(f"unexpected argument {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, val = key.split("=", 1)
            out[key] = parse_value(val)
            i += 1
        elif i + 1 < len(extra) and not extra[i + 1].startswith("--"):
            out[key] = parse_value(extra[i + 1])
            i += 2
        else:
            out[key] = True
            i += 1
    return out


def _resolve(suite_id: str, cfg: dict, cli: dict) -> tuple:
    from .suites import SUITES

    glob = dict(cfg.get("global", {}))
    sections = cfg.get("sections", {})
    opts = {"seed": 0, "jobs": 1, "grid": "full"}
    for src in (glob, cli):
        for k in ("seed", "jobs", "grid"):
            if k in src:
                opts[k] = src[k]
        if src.get("quick"):
            opts["grid"] = "small"
    if "MOMENTLAB_SEED" in os.environ:
        try:
            opts["seed"] = int(os.environ["MOMENTLAB_SEED"])
        except ValueError:
            raise UsageError("MOMENTLAB_SEED must be an integer") from None
    if opts["grid"] not in ("small", "full"):
        raise UsageError("grid must be 'small' or 'full'")
    if suite_id == "all":
        names = [n for n, s in SUITES.items() if s.in_all]
    elif suite_id in SUITES:
        names = [suite_id]
    else:
        raise UsageError(f"unknown suite {suite_id!r}; try 'momentlab list'")
    reserved = {"seed", "jobs", "grid", "quick", "config", "out"}
    cli_params = {k: v for k, v in cli.items() if k not in reserved}
    plan = []
    for n in names:
        s = SUITES[n]
        overrides = dict(sections.get(n, {}))
        if suite_id != "all" or cli_params:
            overrides.update(cli_params)
        try:
            plan.append((s, s.params(opts["grid"], overrides)))
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    return plan, opts


def run_suites(suite_id: str, cfg: dict | None = None, cli: dict | None = None) -> tuple:
    """Run a suite (or all) and return (report dict, all_passed, reports)."""
    plan, opts = _resolve(suite_id, cfg or {}, cli or {})
    reports = []
    for suite, params in plan:
        t0 = time.perf_counter()
        rep = suite.runner(params, int(opts["jobs"]), int(opts["seed"]))
        rep.wall_time = time.perf_counter() - t0
        rep.config = dict(rep.config, params=params, seed=opts["seed"], grid=opts["grid"])
        reports.append(rep)
    ok = all(r.ok for r in reports)
    if len(reports) == 1 and suite_id != "all":
        doc = reports[0].to_dict(include_timing=False)
    else:
        doc = {
            "schema": 1,
            "suite": suite_id,
            "config": {"seed": opts["seed"], "grid": opts["grid"]},
            "suites": [r.to_dict(include_timing=False) for r in reports],
            "summary": {
                "total": sum(r.total for r in reports),
                "passed": sum(r.passed for r in reports),
                "max_err": max((r.max_err for r in reports), default=0.0),
                "failed_suites": [r.name for r in reports if not r.ok],
            },
        }
    return _jsonable(doc), ok, reports


def cmd_run(args, extra) -> int:
    cli = _parse_overrides(extra)
    if args.quick:
        cli["quick"] = True
    if args.jobs is not None:
        cli["jobs"] = args.jobs
    cfg = {}
    if args.config:
        try:
            cfg = load_config(args.config)
        except (OSError, ConfigError) as exc:
            raise UsageError(f"config: {exc}") from None
    doc, ok, reports = run_suites(args.suite, cfg, cli)
    out = args.out or f"{args.suite}.report.json"
    text = json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=1) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    for r in reports:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status} {r.name}: {r.passed}/{r.total} passed, max_err={r.max_err:.3g}, {r.wall_time:.1f}s",
              file=sys.stderr)
        for c in r.failures[:5]:
            print(f"    failed {json.dumps(_jsonable(c.inputs), sort_keys=True)}: abs_err={float(c.abs_err):.3g} "
                  f"tol={float(c.tol):.3g} {c.note}", file=sys.stderr)
    if out != "-":
        print(f"report written to {out}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_list(args, extra) -> int:
    from .suites import SUITES

    for name, s in SUITES.items():
        tag = f"[criterion {s.criterion}]" if s.criterion else ""
        ref = "" if s.in_all else " (not in 'all')"
        print(f"{name:42s} {tag:15s} {s.description}{ref}")
    return EXIT_OK


# -------------------------------------------------------------- compute

def _fmt(v) -> str:
    v = complex(v)
    if abs(v.imag) <= 1e-12 * max(1.0, abs(v.real)):
        r = v.real
        if abs(r - round(r)) <= 1e-9 * max(1.0, abs(r)) and abs(r) < 1e15:
            return str(int(round(r)))
        return f"{r:.12g}"
    return f"{v.real:.12g}{v.imag:+.12g} i"


def _ints(args, n, names):
    if len(args) != n:
        raise UsageError(f"expected {n} arguments: {' '.join(names)}")
    try:
        return [int(a) for a in args]
    except ValueError:
        raise UsageError(f"arguments must be integers: {' '.join(names)}") from None


def _nums(args, lo, hi, names):
    if not lo <= len(args) <= hi:
        raise UsageError(f"expected arguments: {' '.join(names)}")
    try:
        return [complex(a.replace("i", "j")) if ("j" in a or "i" in a) else float(a) for a in args]
    except ValueError:
        raise UsageError(f"bad number in {args}") from None


def compute_object(obj: str, args: list) -> tuple:
    """Return (value, provenance) for one named object."""
    from . import afe, arith, combinatorics, eisenstein, expsums, specfun

    if obj == "kloosterman":
        m, n, c = _ints(args, 3, ["m", "n", "c"])
        if c < 1:
            raise UsageError("modulus must be positive")
        canon = expsums.kloosterman(m, n, c, exact=True)
        return expsums.exact_value(canon, c), f"method: exact cyclotomic reduction over the units mod {c}"
    if obj == "ramanujan":
        n, c = _ints(args, 2, ["n", "c"])
        v = expsums.ramanujan(n, c)
        return v.value, f"method: {v.method}"
    if obj == "H":
        k, m1, na, c = _ints(args, 4, ["k", "m1", "na", "c"])
        v = expsums.H_closed(k, m1, na, c)
        return v.value, "method: closed form" + (f" ({'; '.join(v.flags)})" if v.flags else "")
    if obj == "A":
        p1, p2, p3, alpha, k = _ints(args, 5, ["p1", "p2", "p3", "alpha", "k"])
        v = expsums.A_closed(p1, p2, p3, alpha, k)
        return v.value, f"method: {v.method or 'closed form'}"
    if obj == "phi_eis":
        if len(args) not in (6, 7):
            raise UsageError("expected: N r v f n Re(u) [Im(u)]")
        N, r, v_, f, n = _ints(args[:5], 5, ["N", "r", "v", "f", "n"])
        u = complex(float(args[5]), float(args[6]) if len(args) == 7 else 0.0)
        P = eisenstein.eis_params(N, r, v_, f)
        return eisenstein.phi_closed(P, n, u), "method: corrected closed form"
    if obj == "scriptH":
        s, w, u, kappa = _nums(args, 4, 4, ["s", "w", "u", "kappa"])
        return specfun.script_H(s, w, u, int(kappa.real if isinstance(kappa, complex) else kappa)), "method: gamma ratio (Lanczos)"
    if obj == "gamma":
        (z,) = _nums(args, 1, 1, ["z"])
        return specfun.gamma_complex(z), "method: Lanczos g=7 with reflection"
    if obj == "V":
        if len(args) < 2:
            raise UsageError("expected: V1|V2|V x [kappa] [q]")
        kind = args[0]
        x = float(args[1])
        kappa = int(args[2]) if len(args) > 2 else afe.DEFAULT_KAPPA
        q = int(args[3]) if len(args) > 3 else 11
        try:
            val = float(afe.V_weight(kind, x, kappa, q)[0])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        how = "contour at Re(u)=1" if kind != "V" else "e-sum of V2"
        return val, f"method: {how}; kappa={kappa}" + (f", q={q}" if kind == "V" else "")
    if obj == "F_a":
        if len(args) not in (3, 4, 5):
            raise UsageError("expected: x1 x2 x3 [a] [q]")
        x1, x2, x3 = (float(a) for a in args[:3])
        a = int(args[3]) if len(args) > 3 else 1
        q = int(args[4]) if len(args) > 4 else 101
        return afe.F_a(x1, x2, x3, a, q), f"method: triple e-sum of V1 (level {afe.F_A_LEVEL:g}); a={a}, q={q}"
    if obj == "floorroot":
        (n,) = _ints(args, 1, ["n"])
        return arith.floorroot(n), "method: multiplicative p^a -> p^floor(a/2)"
    if obj == "tau" and len(args) == 2:
        n, k = _ints(args, 2, ["n", "k"])
        return arith.tau_k(n, k), "method: factorization"
    if obj in ("mobius", "euler_phi", "tau", "radical"):
        (n,) = _ints(args, 1, ["n"])
        fn = {"mobius": arith.mobius, "euler_phi": arith.euler_phi, "tau": arith.tau_k, "radical": arith.radical}[obj]
        return fn(n), "method: factorization"
    if obj == "delta2":
        h, a, m1p, g0 = _ints(args, 4, ["h", "a", "m1'", "g0"])
        return combinatorics.delta2(h, a, m1p, g0), "method: h a m1'/g0"
    raise UsageError(f"unknown object {obj!r}")


COMPUTE_OBJECTS = ("kloosterman", "ramanujan", "H", "A", "phi_eis", "scriptH", "gamma", "V", "F_a", "floorroot",
                   "mobius", "euler_phi", "tau", "radical", "delta2")


def cmd_compute(args, extra) -> int:
    if extra:
        raise UsageError(f"unexpected options {extra}")
    try:
        val, prov = compute_object(args.object, args.args)
    except UsageError:
        raise
    except (ValueError, ArithmeticError) as exc:
        raise UsageError(f"{args.object}: {exc}") from None
    print(_fmt(val))
    print(prov, file=sys.stderr)
    return EXIT_OK


# ----------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="momentlab", description="Verification harness for the moment computation identities.")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run a verification suite")
    r.add_argument("suite")
    r.add_argument("--config")
    r.add_argument("--jobs", type=int)
    r.add_argument("--out", help="report path, '-' for stdout (default <suite>.report.json)")
    r.add_argument("--quick", action="store_true", help="use the small grid")
    r.set_defaults(func=cmd_run)
    c = sub.add_parser("compute", help="evaluate one object")
    c.add_argument("object", help=", ".join(COMPUTE_OBJECTS))
    c.add_argument("args", nargs=argparse.REMAINDER)
    c.set_defaults(func=cmd_compute)
    ls = sub.add_parser("list", help="list suites")
    ls.set_defaults(func=cmd_list)
    return p


def main(argv: list | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args, extra = parser.parse_known_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, extra)
    except UsageError as exc:
        print(f"momentlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
