"""JSON polynomial files, run reports, CSV helpers and their schemas."""

from __future__ import annotations

import csv
import io
import json
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .polycore import ComplexPoly, LaurentPoly

FORMAT_VERSION = 1

_PAIR = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}

POLYNOMIAL_FILE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "PolynomialFile",
    "type": "object",
    "required": ["format_version", "kind", "coeffs"],
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "kind": {"enum": ["polynomial", "laurent"]},
        "degree": {"type": "integer", "minimum": 0},
        "center_degree": {"type": "integer", "minimum": 0},
        "coeffs": {"type": "array", "items": _PAIR, "minItems": 1},
    },
    "oneOf": [
        {"properties": {"kind": {"const": "polynomial"}}, "required": ["degree"]},
        {"properties": {"kind": {"const": "laurent"}}, "required": ["center_degree"]},
    ],
}

RUN_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "RunReport",
    "type": "object",
    "required": ["format_version", "command", "inputs", "outputs", "tolerances", "timestamp"],
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "command": {"enum": ["extremal", "verify", "factor", "search", "constants", "transform"]},
        "inputs": {"type": "object"},
        "outputs": {"type": "object"},
        "tolerances": {"type": "object", "additionalProperties": {"type": "number"}},
        "timestamp": {"type": "string", "format": "date-time"},
    },
}

_ACTIVE_POINT = {
    "type": "object",
    "required": ["s", "theta", "family", "phase", "slack"],
    "properties": {
        "s": {"type": "number"},
        "theta": {"type": "number"},
        "family": {"enum": ["positivity", "growth"]},
        "phase": {"type": ["number", "null"]},
        "slack": {"type": "number"},
    },
}

SEARCH_RESULT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "SearchResult",
    "type": "object",
    "required": ["mode", "n", "optimal_value", "optimizer", "active_points", "iterations",
                 "converged", "final_violation", "trace"],
    "properties": {
        "mode": {"enum": ["real", "complex"]},
        "n": {"type": "integer", "minimum": 1},
        "optimal_value": {"type": "number"},
        "optimizer": POLYNOMIAL_FILE_SCHEMA,
        "active_points": {"type": "array", "items": _ACTIVE_POINT},
        "iterations": {"type": "integer", "minimum": 0},
        "converged": {"type": "boolean"},
        "final_violation": {"type": "number"},
        "trace": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3},
        },
    },
}

UNIQUENESS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "UniquenessReport",
    "type": "object",
    "required": ["optimizers", "values", "max_pairwise_distance", "matches_extremal", "all_converged"],
    "properties": {
        "optimizers": {"type": "array", "items": POLYNOMIAL_FILE_SCHEMA},
        "values": {"type": "array", "items": {"type": "number"}},
        "max_pairwise_distance": {"type": "number"},
        "matches_extremal": {"type": "boolean"},
        "all_converged": {"type": "boolean"},
    },
}

SCHEMAS = {
    "polynomial": POLYNOMIAL_FILE_SCHEMA,
    "run-report": RUN_REPORT_SCHEMA,
    "search-result": SEARCH_RESULT_SCHEMA,
    "uniqueness": UNIQUENESS_SCHEMA,
}

CONSTANTS_HEADER = ["d", "new", "old", "ratio", "note"]
ACTIVE_POINTS_HEADER = ["s", "theta", "family", "phase", "slack"]


class FileFormatError(ValueError):
    """A polynomial file could not be parsed or violates its invariants."""


def _pairs(c: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in c]


def polynomial_to_dict(p: ComplexPoly | LaurentPoly) -> dict:
    if isinstance(p, LaurentPoly):
        return {
            "format_version": FORMAT_VERSION,
            "kind": "laurent",
            "center_degree": p.center_degree,
            "coeffs": _pairs(p.coeffs),
        }
    return {
        "format_version": FORMAT_VERSION,
        "kind": "polynomial",
        "degree": max(p.degree, 0),
        "coeffs": _pairs(p.coeffs),
    }


def polynomial_from_dict(data) -> ComplexPoly | LaurentPoly:
    if not isinstance(data, dict):
        raise FileFormatError("polynomial file must contain a JSON object")
    if data.get("format_version") != FORMAT_VERSION:
        raise FileFormatError(f"unsupported format_version {data.get('format_version')!r}")
    kind = data.get("kind")
    coeffs = data.get("coeffs")
    if not isinstance(coeffs, list) or not coeffs:
        raise FileFormatError("coeffs must be a nonempty list of [re, im] pairs")
    values = []
    for item in coeffs:
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item)):
            raise FileFormatError(f"bad coefficient entry {item!r}; expected [re, im]")
        values.append(complex(item[0], item[1]))
    if kind == "polynomial":
        degree = data.get("degree")
        if not isinstance(degree, int) or len(values) != degree + 1:
            raise FileFormatError(f"degree {degree!r} does not match {len(values)} coefficients")
        return ComplexPoly(values)
    if kind == "laurent":
        n = data.get("center_degree")
        if not isinstance(n, int) or len(values) != 2 * n + 1:
            raise FileFormatError(f"center_degree {n!r} does not match {len(values)} coefficients")
        return LaurentPoly(values)
    raise FileFormatError(f"unknown kind {kind!r}")


def load_polynomial(path) -> ComplexPoly | LaurentPoly:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: invalid JSON: {exc}") from exc
    return polynomial_from_dict(data)


def dump_json(data, path=None) -> str:
    text = json.dumps(data, indent=2, allow_nan=False) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def run_report(command: str, inputs: dict, outputs: dict, tolerances: dict) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "tolerances": tolerances,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def fmt_real(x) -> str:
    """17 significant digits, the CSV convention for reals."""
    if x is None:
        return ""
    return format(float(x), ".17g")


def csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_real(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()
