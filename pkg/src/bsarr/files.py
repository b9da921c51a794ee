"""Arrangement files: JSON with exact rationals written as strings.

    {"n": 3, "forms": [["1", "0", "-1"], ["1/2", "1", "0"]], "name": "...", "pivot": 2}

Entries are integer strings or reduced ``p/q`` strings (JSON integers are
also accepted).  ``pivot`` is 1-based, like every index in the CLI.  Errors
carry the line and column of the offending value.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from bsarr.arrangement import Arrangement, parse_arrangement
from bsarr.errors import BsarrError, error

__all__ = ["ArrangementFile", "parse_rational", "loads_arrangement", "load_arrangement"]

_RATIONAL = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?")
_KNOWN_KEYS = {"n", "forms", "name", "pivot", "expect", "description"}


@dataclass(frozen=True)
class ArrangementFile:
    arrangement: Arrangement
    pivot: int | None = None  # 0-based
    meta: dict = field(default_factory=dict)


def parse_rational(text: str) -> Fraction:
    """Strict "p/q" or integer; the fraction must be reduced with q > 1."""
    if not isinstance(text, str) or not _RATIONAL.fullmatch(text):
        raise error("BAD_RATIONAL", f"not an integer or p/q rational: {text!r}")
    value = Fraction(text)
    if "/" in text:
        p, q = text.lstrip("-").split("/")
        if value.denominator != int(q) or q == "1":
            raise error("BAD_RATIONAL", f"rational {text!r} is not in lowest terms")
    return value


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _locate(text: str, path: tuple) -> int:
    """Character offset of the JSON value at ``path`` (keys and list indices)."""
    dec = json.JSONDecoder()
    ws = re.compile(r"[ \t\n\r]*")
    pos = ws.match(text, 0).end()
    for step in path:
        opener = text[pos]
        pos = ws.match(text, pos + 1).end()
        idx = 0
        while text[pos] not in "]}":
            if opener == "{":
                key, pos = dec.raw_decode(text, pos)
                pos = ws.match(text, pos).end() + 1  # ':'
                pos = ws.match(text, pos).end()
                hit = key == step
            else:
                hit = idx == step
            if hit:
                break
            _, pos = dec.raw_decode(text, pos)
            pos = ws.match(text, pos).end()
            if text[pos] == ",":
                pos = ws.match(text, pos + 1).end()
            idx += 1
        else:
            return pos
    return pos


def _fail(text: str, source: str, path: tuple, code: str, msg: str, **details):
    try:
        line, col = _position(text, _locate(text, path))
    except (IndexError, ValueError):
        line, col = 1, 1
    raise error(code, f"{source}:{line}:{col}: {msg}", line=line, column=col, **details)


def loads_arrangement(text: str, source: str = "<input>") -> ArrangementFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise error("BAD_JSON", f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}",
                    line=exc.lineno, column=exc.colno) from None
    if not isinstance(data, dict):
        _fail(text, source, (), "BAD_JSON", "top level must be an object")
    for key in data:
        if key not in _KNOWN_KEYS:
            _fail(text, source, (key,), "BAD_JSON", f"unknown key {key!r}")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        _fail(text, source, ("n",) if "n" in data else (), "WRONG_DIMENSION",
              f"'n' must be a positive integer, got {n!r}")
    forms = data.get("forms")
    if not isinstance(forms, list) or not forms:
        _fail(text, source, ("forms",) if "forms" in data else (), "ZERO_FORM",
              "'forms' must be a non-empty list")
    rows = []
    for i, row in enumerate(forms):
        if not isinstance(row, list):
            _fail(text, source, ("forms", i), "BAD_JSON", f"form {i + 1} must be a list")
        if len(row) != n:
            _fail(text, source, ("forms", i), "DIMENSION_MISMATCH",
                  f"form {i + 1} has {len(row)} coefficients, expected {n}")
        out = []
        for j, x in enumerate(row):
            if isinstance(x, int) and not isinstance(x, bool):
                out.append(Fraction(x))
                continue
            try:
                out.append(parse_rational(x))
            except BsarrError as exc:
                _fail(text, source, ("forms", i, j), "BAD_RATIONAL", exc.args[0])
        rows.append(out)
    name = data.get("name")
    try:
        arr = parse_arrangement(n, rows, name)
    except BsarrError as exc:
        idx = exc.details.get("index")
        path = ("forms", idx) if idx is not None else ("forms",)
        msg = exc.args[0]
        if idx is not None:
            msg = f"form {idx + 1}: {msg}"
        _fail(text, source, path, exc.code, msg)
    pivot = data.get("pivot")
    if pivot is not None:
        if not isinstance(pivot, int) or isinstance(pivot, bool) or not 1 <= pivot <= arr.d:
            _fail(text, source, ("pivot",), "BAD_INDEX", f"pivot must be in 1..{arr.d}")
        pivot -= 1
    meta = {k: v for k, v in data.items() if k in ("expect", "description")}
    return ArrangementFile(arr, pivot, meta)


def load_arrangement(path) -> ArrangementFile:
    with open(path, encoding="utf-8") as fh:
        return loads_arrangement(fh.read(), str(path))
