"""JSON interchange for modules and Ext tables."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .algebra import GENERATORS
from .linalg import Matrix, format_rational, parse_rational
from .modules import FdModule

__all__ = ["SchemaError", "module_to_json", "module_from_json", "read_module", "write_text_atomic",
           "dumps_module", "ext_table_to_json"]


class SchemaError(ValueError):
    """Malformed module document; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _matrix_json(m: Matrix) -> list:
    return [[format_rational(v) for v in m.row(i)] for i in range(m.rows)]


def module_to_json(M: FdModule) -> dict:
    return {
        "dim": M.dim,
        "labels": list(M.labels),
        "generators": {t: _matrix_json(M.act(t)) for t in GENERATORS},
        "provenance": M.provenance,
    }


def dumps_module(M: FdModule) -> str:
    return json.dumps(module_to_json(M), indent=1)


def _parse_matrix(raw, dim: int, where: str) -> Matrix:
    if not isinstance(raw, list) or len(raw) != dim:
        raise SchemaError(where, f"expected {dim} rows")
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != dim:
            raise SchemaError(f"{where}[{i}]", f"expected {dim} entries")
        parsed = []
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (str, int)):
                raise SchemaError(f"{where}[{i}][{j}]", "entries must be rational strings")
            try:
                parsed.append(parse_rational(str(v)))
            except (ValueError, ZeroDivisionError):
                raise SchemaError(f"{where}[{i}][{j}]", f"not a rational: {v!r}") from None
        rows.append(parsed)
    return Matrix(dim, dim, [v for row in rows for v in row])


def module_from_json(data) -> FdModule:
    if not isinstance(data, dict):
        raise SchemaError("<root>", "expected a JSON object")
    dim = data.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise SchemaError("dim", "expected a nonnegative integer")
    labels = data.get("labels", [f"e{i}" for i in range(dim)])
    if not isinstance(labels, list) or len(labels) != dim or not all(isinstance(s, str) for s in labels):
        raise SchemaError("labels", f"expected {dim} strings")
    gens = data.get("generators")
    if not isinstance(gens, dict):
        raise SchemaError("generators", "expected an object keyed by x, y, g, xi, u, v")
    mats = {}
    for t in GENERATORS:
        if t not in gens:
            raise SchemaError(f"generators.{t}", "missing")
        mats[t] = _parse_matrix(gens[t], dim, f"generators.{t}")
    prov = data.get("provenance", {"kind": "custom"})
    if not isinstance(prov, dict):
        raise SchemaError("provenance", "expected an object")
    return FdModule(mats, labels, prov)


def read_module(path: str | os.PathLike) -> FdModule:
    """Load a module file; OSError and SchemaError propagate to the caller."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("<root>", f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return module_from_json(data)


def write_text_atomic(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def ext_table_to_json(table: dict) -> dict:
    """``{(n, m): dim}`` -> ``{"(n,m)": dim}``."""
    return {f"({n},{m})": d for (n, m), d in sorted(table.items())}
