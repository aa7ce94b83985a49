"""SetFile documents and the result cache.

A SetFile is UTF-8 JSON::

    {
      "k": 3,
      "points": [{"x": "0/1", "r": "0/1"}, {"x": "1/2", "r": "1/2"}, ...],
      "metadata": {"n": 3, "diameter": 1, "position": "general", "provenance": "..."}
    }

Rationals are always written as ``"num/den"`` strings; the parser also takes
plain integers such as ``"3"`` or ``"-4"``.  ``metadata`` is optional.
"""

from __future__ import annotations

import csv
import json
import os
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import Point, PointSet


class SetFileError(ValueError):
    pass


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise SetFileError(f"rational must be a 'num/den' string, got {text!r}")
    try:
        num, sep, den = str(text).strip().partition("/")
        value = Fraction(int(num), int(den)) if sep else Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise SetFileError(f"bad rational {text!r}") from None
    return value


def to_document(S: PointSet, metadata: Optional[dict] = None) -> dict:
    doc = {
        "k": S.k,
        "points": [{"x": format_rational(P.x), "r": format_rational(P.r)} for P in S.points],
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def from_document(doc) -> tuple[PointSet, dict]:
    if not isinstance(doc, dict):
        raise SetFileError("top level must be an object")
    try:
        k = doc["k"]
        raw = doc["points"]
    except KeyError as exc:
        raise SetFileError(f"missing field {exc.args[0]!r}") from None
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise SetFileError(f"k must be a positive integer, got {k!r}")
    if not isinstance(raw, list):
        raise SetFileError("points must be a list")
    pts = []
    for item in raw:
        if not isinstance(item, dict) or "x" not in item or "r" not in item:
            raise SetFileError(f"bad point entry {item!r}; need both x and r")
        pts.append(Point(parse_rational(item["x"]), parse_rational(item["r"])))
    try:
        S = PointSet(k, tuple(pts))
    except ValueError as exc:
        raise SetFileError(str(exc)) from None
    return S, dict(doc.get("metadata") or {})


def dumps(S: PointSet, metadata: Optional[dict] = None) -> str:
    return json.dumps(to_document(S, metadata), indent=2) + "\n"


def loads(text: str) -> tuple[PointSet, dict]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SetFileError(f"not valid JSON: {exc}") from None
    return from_document(doc)


def write_setfile(path, S: PointSet, metadata: Optional[dict] = None):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(S, metadata))


def read_setfile(path) -> tuple[PointSet, dict]:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


CACHE_FIELDS = ["n", "constraint", "d", "witness", "exhausted_up_to", "timestamp"]


@dataclass
class CacheRow:
    n: int
    constraint: str
    d: Optional[int]
    witness: str
    exhausted_up_to: int
    timestamp: str = ""


def read_cache(path) -> list[CacheRow]:
    if not os.path.exists(path):
        return []
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        for rec in csv.DictReader(fh, delimiter="\t"):
            rows.append(
                CacheRow(
                    n=int(rec["n"]),
                    constraint=rec["constraint"],
                    d=int(rec["d"]) if rec["d"] not in ("", "-") else None,
                    witness=rec["witness"],
                    exhausted_up_to=int(rec["exhausted_up_to"]),
                    timestamp=rec["timestamp"],
                )
            )
    return rows


def cache_conflicts(rows: list[CacheRow], new: CacheRow) -> list[str]:
    """Ways in which ``new`` contradicts earlier rows for the same query."""
    out = []
    for old in rows:
        if (old.n, old.constraint) != (new.n, new.constraint):
            continue
        if old.d is not None and new.d is not None and old.d != new.d:
            out.append(f"minimal d {new.d} disagrees with cached {old.d}")
        if old.d is not None and new.d is None and new.exhausted_up_to >= old.d:
            out.append(f"no set up to {new.exhausted_up_to}, but cache has a witness at {old.d}")
        if new.d is not None and old.d is None and old.exhausted_up_to >= new.d:
            out.append(f"witness at {new.d}, but cache refuted up to {old.exhausted_up_to}")
    return out


def append_cache(path, row: CacheRow) -> list[str]:
    rows = read_cache(path)
    conflicts = cache_conflicts(rows, row)
    if not row.timestamp:
        row.timestamp = time.strftime("%Y-%m-%dT%H:%M:%S")
    fresh = not os.path.exists(path)
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    with open(path, "a", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        if fresh:
            writer.writerow(CACHE_FIELDS)
        writer.writerow(
            [row.n, row.constraint, "-" if row.d is None else row.d, row.witness, row.exhausted_up_to, row.timestamp]
        )
    return conflicts
