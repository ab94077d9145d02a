"""Reader for the small key/value configuration files used by the CLI.

Format::

    # comment
    seed = 3
    jobs = 2
    grid = "small"

    [expsums.H]
    cmax = 50
    tol_scale = 1e-9
    ks = [1, 2, 3]

Top-level keys are global options; a ``[name]`` section holds the
parameters of the suite with that name (dots are part of the name, there
is no nesting). Values are integers, floats, booleans, quoted strings or
flat arrays of those.
"""

from __future__ import annotations

import re
from typing import Any

_KEY = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-]*$")


class ConfigError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def _strip_comment(line: str) -> str:
    out, quote = [], None
    for ch in line:
        if quote:
            out.append(ch)
            if ch == quote:
                quote = None
        elif ch in "\"'":
            quote = ch
            out.append(ch)
        elif ch == "#":
            break
        else:
            out.append(ch)
    return "".join(out).strip()


def _split_array(body: str) -> list:
    items, cur, quote = [], [], None
    for ch in body:
        if quote:
            cur.append(ch)
            if ch == quote:
                quote = None
        elif ch in "\"'":
            quote = ch
            cur.append(ch)
        elif ch == ",":
            items.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail:
        items.append(tail)
    return items


def parse_value(text: str) -> Any:
    """Parse one scalar or flat array; bare words fall back to strings."""
    t = text.strip()
    if not t:
        raise ConfigError("empty value")
    if t[0] == "[":
        if t[-1] != "]":
            raise ConfigError(f"unterminated array {t!r}")
        return [parse_value(x) for x in _split_array(t[1:-1])]
    if t[0] in "\"'":
        if len(t) < 2 or t[-1] != t[0]:
            raise ConfigError(f"unterminated string {t!r}")
        return t[1:-1]
    low = t.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(t.replace("_", ""))
    except ValueError:
        pass
    try:
        return float(t.replace("_", ""))
    except ValueError:
        return t


def parse_config(text: str) -> dict:
    """Return {"global": {...}, "sections": {name: {...}}}."""
    glob: dict = {}
    sections: dict = {}
    current = glob
    for no, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError("bad section header", no)
            name = line[1:-1].strip()
            if not _KEY.match(name):
                raise ConfigError(f"bad section name {name!r}", no)
            current = sections.setdefault(name, {})
            continue
        if "=" not in line:
            raise ConfigError(f"expected key = value, got {line!r}", no)
        key, val = (x.strip() for x in line.split("=", 1))
        if not _KEY.match(key):
            raise ConfigError(f"bad key {key!r}", no)
        if key in current:
            raise ConfigError(f"duplicate key {key!r}", no)
        try:
            current[key] = parse_value(val)
        except ConfigError as exc:
            raise ConfigError(str(exc), no) from None
    return {"global": glob, "sections": sections}


def load_config(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
