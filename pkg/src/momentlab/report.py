"""Verification cases and suite reports shared by every checker."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any


def _jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        if math.isnan(x) or math.isinf(x):
            return repr(x)
        return x
    if isinstance(x, complex):
        return [_jsonable(x.real), _jsonable(x.imag)]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    # numpy scalars, mpmath numbers, Fractions
    if hasattr(x, "imag") and hasattr(x, "real"):
        try:
            c = complex(x)
        except TypeError:
            return str(x)
        if c.imag == 0 and not isinstance(x, complex) and not type(x).__name__.startswith("mpc"):
            return _jsonable(float(c.real)) if not isinstance(x, int) else int(x)
        return _jsonable(c)
    return str(x)


@dataclass
class Case:
    """One formula-versus-oracle comparison."""

    inputs: dict
    lhs: Any
    rhs: Any
    abs_err: float
    tol: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.abs_err <= self.tol)

    def to_dict(self) -> dict:
        d = {
            "inputs": _jsonable(self.inputs),
            "lhs": _jsonable(self.lhs),
            "rhs": _jsonable(self.rhs),
            "abs_err": _jsonable(float(self.abs_err)),
            "tol": _jsonable(float(self.tol)),
            "pass": self.passed,
        }
        if self.note:
            d["note"] = self.note
        return d


def compare(inputs: dict, lhs, rhs, tol: float, note: str = "") -> Case:
    err = abs(complex(lhs) - complex(rhs))
    if math.isnan(err):
        err = math.inf
    return Case(inputs, lhs, rhs, err, tol, note)


@dataclass
class SuiteReport:
    name: str
    config: dict = field(default_factory=dict)
    cases: list = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, case: Case) -> Case:
        self.cases.append(case)
        return case

    def extend(self, other: "SuiteReport") -> None:
        self.cases.extend(other.cases)

    @property
    def total(self) -> int:
        return len(self.cases)

    @property
    def passed(self) -> int:
        return sum(1 for c in self.cases if c.passed)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    @property
    def failures(self) -> list:
        return [c for c in self.cases if not c.passed]

    @property
    def max_err(self) -> float:
        return max((float(c.abs_err) for c in self.cases), default=0.0)

    def summary(self) -> dict:
        return {
            "total": self.total,
            "passed": self.passed,
            "max_err": self.max_err,
            "wall_time": round(self.wall_time, 3),
        }

    def to_dict(self, include_timing: bool = True) -> dict:
        summ = self.summary()
        if not include_timing:
            summ.pop("wall_time")
        return {
            "schema": 1,
            "suite": self.name,
            "config": _jsonable(self.config),
            "cases": [c.to_dict() for c in self.cases],
            "summary": _jsonable(summ),
        }

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, ensure_ascii=False, indent=1)

    def __repr__(self) -> str:
        return f"SuiteReport({self.name!r}, {self.passed}/{self.total} passed, max_err={self.max_err:.3g})"
