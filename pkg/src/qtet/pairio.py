"""Pair files: JSON with exact scalar literals, no numeric tolerance.

    { "field": {"mode": "symbolic"} | {"mode": "numeric", "q": "<rational>"},
      "dimension": n,
      "A": [["<scalar literal>", ...], ...],
      "Astar": [[...], ...],
      "meta": {...} }
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ParseError
from .linalg import MatrixE
from .scalars import FieldSpec
from .tdpair import TriPair

_TOP_KEYS = {"field", "dimension", "A", "Astar", "meta"}


def field_to_dict(field: FieldSpec) -> dict:
    if field.mode == "symbolic":
        return {"mode": "symbolic"}
    return {"mode": "numeric", "q": str(field.q_value)}


def field_from_dict(data) -> FieldSpec:
    if not isinstance(data, dict) or "mode" not in data:
        raise ParseError("field descriptor needs a mode", 0)
    mode = data["mode"]
    if mode == "symbolic":
        if set(data) != {"mode"}:
            raise ParseError("symbolic field takes no further keys", 0)
        return FieldSpec.symbolic()
    if mode == "numeric":
        if set(data) != {"mode", "q"}:
            raise ParseError("numeric field takes exactly mode and q", 0)
        try:
            value = Fraction(data["q"])
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ParseError(f"bad rational literal for q: {exc}", 0)
        return FieldSpec.specialized(value)
    raise ParseError(f"unknown field mode {mode!r}", 0)


def pair_to_dict(pair: TriPair, meta: dict | None = None) -> dict:
    return {
        "field": field_to_dict(pair.field),
        "dimension": pair.n,
        "A": [[str(e) for e in row] for row in pair.A.rows],
        "Astar": [[str(e) for e in row] for row in pair.Astar.rows],
        "meta": dict(meta or {}),
    }


def _parse_matrix(field: FieldSpec, name: str, data, n: int) -> MatrixE:
    if not isinstance(data, list) or len(data) != n:
        raise ParseError(f"{name} must be a {n}x{n} array", 0)
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"{name} row {i} must have {n} entries", 0)
        out = []
        for j, lit in enumerate(row):
            if not isinstance(lit, str):
                raise ParseError(
                    f"{name}[{i}][{j}] must be a scalar literal string", 0
                )
            try:
                out.append(field.parse(lit))
            except ParseError as exc:
                raise ParseError(f"{name}[{i}][{j}]: {exc}", exc.position)
        rows.append(out)
    return MatrixE(field, rows)


def pair_from_dict(data) -> tuple[TriPair, dict]:
    if not isinstance(data, dict):
        raise ParseError("pair file must be a JSON object", 0)
    missing = {"field", "dimension", "A", "Astar"} - set(data)
    if missing:
        raise ParseError(f"missing keys: {', '.join(sorted(missing))}", 0)
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ParseError(f"unknown keys: {', '.join(sorted(unknown))}", 0)
    field = field_from_dict(data["field"])
    n = data["dimension"]
    if not isinstance(n, int) or n < 1:
        raise ParseError("dimension must be a positive integer", 0)
    A = _parse_matrix(field, "A", data["A"], n)
    Astar = _parse_matrix(field, "Astar", data["Astar"], n)
    meta = data.get("meta", {})
    if not isinstance(meta, dict):
        raise ParseError("meta must be an object", 0)
    return TriPair(A, Astar), meta


def save_pair(path: str, pair: TriPair, meta: dict | None = None):
    with open(path, "w") as fh:
        json.dump(pair_to_dict(pair, meta), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_pair(path: str) -> tuple[TriPair, dict]:
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos)
    return pair_from_dict(data)
