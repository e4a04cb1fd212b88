"""JSON formats: matrix files for monad instances, and canonical report output."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict

from .construct import MonadInstance, MonadShape
from .field import FieldSpec
from .matrix import PolyMatrix
from .poly import Polynomial, PolyRing

SCHEMA_VERSION = 1


class MatrixFileError(ValueError):
    pass


def dumps(doc: Any) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _poly_terms(p: Polynomial):
    f = p.ring.field
    return [[f.format(c), list(mono)] for mono, c in p.sorted_terms()]


def matrix_to_json(M: PolyMatrix) -> dict:
    return {
        "rows": M.nrows,
        "cols": M.ncols,
        "row_twists": None if M.row_twists is None else list(M.row_twists),
        "col_twists": None if M.col_twists is None else list(M.col_twists),
        "entries": [[_poly_terms(p) for p in r] for r in M.entries],
    }


def instance_to_json(M: MonadInstance) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "field": M.field.to_json(),
        "num_vars": M.ring.nvars,
        "variables": list(M.ring.names),
        "matrices": {"A": matrix_to_json(M.A), "B": matrix_to_json(M.B)},
        "metadata": {
            "shape": dict(zip("abck", M.shape.as_tuple())),
            "provenance": M.provenance,
            "certified_beta_surjective": M.certified_beta_surjective,
        },
    }


def _need(d: dict, key: str, where: str):
    if not isinstance(d, dict) or key not in d:
        raise MatrixFileError(f"{where}: missing field '{key}'")
    return d[key]


def matrix_from_json(d: dict, ring: PolyRing, where: str) -> PolyMatrix:
    rows = _need(d, "rows", where)
    cols = _need(d, "cols", where)
    ents = _need(d, "entries", where)
    if not isinstance(ents, list) or len(ents) != rows:
        raise MatrixFileError(f"{where}.entries: expected {rows} rows")
    out = []
    for i, row in enumerate(ents):
        if not isinstance(row, list) or len(row) != cols:
            raise MatrixFileError(f"{where}.entries[{i}]: expected {cols} entries")
        prow = []
        for j, terms in enumerate(row):
            at = f"{where}.entries[{i}][{j}]"
            if not isinstance(terms, list):
                raise MatrixFileError(f"{at}: expected a list of [coefficient, exponents] terms")
            parsed = []
            for t, term in enumerate(terms):
                if not (isinstance(term, list) and len(term) == 2 and isinstance(term[1], list)):
                    raise MatrixFileError(f"{at}[{t}]: expected [coefficient-string, exponent-vector]")
                coef, exps = term
                if len(exps) != ring.nvars:
                    raise MatrixFileError(f"{at}[{t}]: exponent vector has {len(exps)} slots, num_vars is {ring.nvars}")
                if not all(isinstance(e, int) and e >= 0 for e in exps):
                    raise MatrixFileError(f"{at}[{t}]: exponents must be non-negative integers")
                try:
                    parsed.append((tuple(exps), ring.field.parse(coef)))
                except (ValueError, ZeroDivisionError) as exc:
                    raise MatrixFileError(f"{at}[{t}]: bad coefficient {coef!r}: {exc}") from None
            prow.append(Polynomial.from_terms(ring, parsed))
        out.append(prow)
    try:
        return PolyMatrix(ring, out, rows, cols, d.get("row_twists"), d.get("col_twists"))
    except ValueError as exc:
        raise MatrixFileError(f"{where}: {exc}") from None


def instance_from_json(doc: dict) -> MonadInstance:
    try:
        field = FieldSpec.from_json(_need(doc, "field", "file"))
    except ValueError as exc:
        raise MatrixFileError(f"file.field: {exc}") from None
    nvars = _need(doc, "num_vars", "file")
    if not isinstance(nvars, int) or nvars < 2:
        raise MatrixFileError("file.num_vars: expected an integer >= 2")
    names = doc.get("variables") or [f"z{i}" for i in range(nvars)]
    if len(names) != nvars:
        raise MatrixFileError("file.variables: length differs from num_vars")
    ring = PolyRing(field, tuple(names))
    mats = _need(doc, "matrices", "file")
    A = matrix_from_json(_need(mats, "A", "file.matrices"), ring, "matrices.A")
    B = matrix_from_json(_need(mats, "B", "file.matrices"), ring, "matrices.B")
    meta = doc.get("metadata", {})
    shp = meta.get("shape") or {"a": A.ncols, "b": A.nrows, "c": B.nrows, "k": nvars - 1}
    try:
        shape = MonadShape(shp["a"], shp["b"], shp["c"], shp["k"])
        return MonadInstance(shape, field, A, B, list(meta.get("provenance", [])),
                             bool(meta.get("certified_beta_surjective", False)))
    except (KeyError, ValueError) as exc:
        raise MatrixFileError(f"metadata: {exc}") from None


def write_instance(M: MonadInstance, path) -> None:
    Path(path).write_text(dumps(instance_to_json(M)))


def read_instance(path) -> MonadInstance:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return instance_from_json(doc)


def io_matrix(path, direction: str, instance: MonadInstance = None):
    if direction == "read":
        return read_instance(path)
    if direction == "write":
        if instance is None:
            raise ValueError("nothing to write")
        write_instance(instance, path)
        return None
    raise ValueError(f"direction must be 'read' or 'write', got {direction!r}")


def search_report_to_json(rep) -> Dict[str, Any]:
    out = {
        "shape": dict(zip("abck", rep.shape.as_tuple())),
        "q": rep.q,
        "trials": rep.trials,
        "trials_run": rep.trials_run,
        "seed": rep.seed,
        "accepted": rep.accepted,
        "rejection_stats": dict(sorted(rep.rejection_stats.items())),
        "witnesses": [instance_to_json(w) for w in rep.witnesses],
    }
    if rep.decision is not None:
        out["decision"] = rep.decision.to_json()
    out.update(rep.extra)
    return out
