"""JSON documents describing Lie algebras.

Format (UTF-8 JSON object)::

    {"name": "heisenberg", "dimension": 3, "basis": ["X1", "X2", "X3"],
     "brackets": [[1, 2, 3, "1"]], "weights": [1, 1, 2],
     "charts": [{"kind": "second"}]}

``brackets`` lists ``[i, j, k, "p/q"]`` records (1-based) meaning
``c_{ij}^k = p/q``.  A record whose mirror ``(j, i, k)`` is absent implies
``c_{ji}^k = -p/q``; when both are given they are kept verbatim, so
inconsistent tables reach validation intact.  Rationals are strings (plain
integers are accepted); JSON floats are refused.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .group import Chart
from .lie import LieAlgebra

__all__ = ["DocumentError", "load_algebra", "parse_algebra", "algebra_to_document", "dumps"]


class DocumentError(ValueError):
    pass


def _rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise DocumentError(f"{where}: rationals must be strings like \"p/q\", got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"{where}: cannot parse rational {value!r}") from None
    raise DocumentError(f"{where}: expected a rational string, got {type(value).__name__}")


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{where}: expected an integer, got {value!r}")
    return value


def parse_algebra(doc: Any) -> tuple[LieAlgebra, list[Chart]]:
    """Algebra and declared charts from a decoded document."""
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    unknown = set(doc) - {"name", "dimension", "basis", "brackets", "weights", "charts"}
    if unknown:
        raise DocumentError(f"unknown field(s): {', '.join(sorted(unknown))}")
    if "dimension" not in doc:
        raise DocumentError("missing field 'dimension'")
    n = _int(doc["dimension"], "dimension")
    if n < 1:
        raise DocumentError("dimension: must be positive")
    names = doc.get("basis") or [f"X{i + 1}" for i in range(n)]
    if not isinstance(names, list) or len(names) != n or not all(isinstance(s, str) for s in names):
        raise DocumentError(f"basis: expected {n} names")
    records = doc.get("brackets", [])
    if not isinstance(records, list):
        raise DocumentError("brackets: expected a list of [i, j, k, \"p/q\"] records")
    given: dict[tuple[int, int, int], Fraction] = {}
    for r, rec in enumerate(records):
        where = f"brackets[{r}]"
        if not isinstance(rec, list) or len(rec) != 4:
            raise DocumentError(f"{where}: expected [i, j, k, \"p/q\"]")
        i, j, k = (_int(rec[t], f"{where}[{t}]") for t in range(3))
        for t, idx in enumerate((i, j, k)):
            if not 1 <= idx <= n:
                raise DocumentError(f"{where}[{t}]: index {idx} outside 1..{n}")
        key = (i - 1, j - 1, k - 1)
        if key in given:
            raise DocumentError(f"{where}: duplicate record for ({i}, {j}, {k})")
        given[key] = _rational(rec[3], f"{where}[3]")
    constants = dict(given)
    for (i, j, k), c in given.items():
        if (j, i, k) not in given:
            constants[(j, i, k)] = -c
    weights = doc.get("weights")
    if weights is not None:
        if not isinstance(weights, list) or len(weights) != n:
            raise DocumentError(f"weights: expected {n} positive integers")
        weights = [_int(w, f"weights[{t}]") for t, w in enumerate(weights)]
        if min(weights) < 1:
            raise DocumentError("weights: must be positive")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("name: expected a string")
    A = LieAlgebra(n, constants, names=names, weights=weights, name=name)
    charts = []
    for c, spec in enumerate(doc.get("charts", []) or []):
        where = f"charts[{c}]"
        if not isinstance(spec, dict) or spec.get("kind") not in ("first", "second"):
            raise DocumentError(f"{where}: expected {{\"kind\": \"first\" | \"second\", \"basis\": ...}}")
        basis = spec.get("basis")
        if basis is not None:
            if spec["kind"] != "second":
                raise DocumentError(f"{where}: only second-kind charts take a basis")
            basis = [[_rational(v, f"{where}.basis[{a}][{b}]") for b, v in enumerate(row)] for a, row in enumerate(basis)]
        charts.append(Chart(spec["kind"], None if basis is None else tuple(tuple(r) for r in basis)))
    return A, charts


def load_algebra(path: str | Path) -> tuple[LieAlgebra, list[Chart]]:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return parse_algebra(doc)
    except DocumentError as exc:
        raise DocumentError(f"{path}: {exc}") from None


def _fmt(c: Fraction) -> str:
    return str(c)


def algebra_to_document(A: LieAlgebra) -> dict:
    records = [
        [i + 1, j + 1, k + 1, _fmt(c)]
        for (i, j, k), c in sorted(A.nonzero_constants().items())
        if i < j
    ]
    doc = {"name": A.name, "dimension": A.dim, "basis": list(A.names), "brackets": records}
    if A.weights is not None:
        doc["weights"] = list(A.weights)
    return doc


def dumps(obj: Any) -> str:
    """Deterministic JSON (sorted keys, fixed separators)."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
