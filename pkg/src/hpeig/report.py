"""Report payloads and their JSON, CSV and pretty renderings.

Reports are plain dicts with a fixed key order; every scalar is written in the
canonical text form, so JSON output is deterministic and re-parses exactly.
"""
from __future__ import annotations

import csv
import io
import json
from importlib import resources
from typing import Any, Sequence

from .exact import FieldScalar, format_scalar, parse_scalar
from .polyspace import MultiPoly, format_partition
from .spectra.brute import EigenRecord, SpectrumReport
from .spectra.catalog import CatalogEntry
from .spectra.eigenfunctions import JointEigenfunction

CSV_HEADER = ("n", "lambda", "tau", "m", "theta", "value", "mult", "provenance")
FORMATS = ("json", "csv", "pretty")


def scalar(x: FieldScalar) -> str:
    return format_scalar(x)


def cpoly(coeffs: Sequence[FieldScalar]) -> list[str]:
    return [format_scalar(c) for c in coeffs]


def cpoly_text(coeffs: Sequence[FieldScalar], var: str = "t") -> str:
    """A descending coefficient list as a polynomial in ``var``."""
    deg = len(coeffs) - 1
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        k = deg - i
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        text = format_scalar(c)
        if mono:
            if text == "1":
                text = mono
            elif text == "-1":
                text = "-" + mono
            else:
                text = f"({text})*{mono}" if " " in text else f"{text}*{mono}"
        parts.append(text)
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _partition(lam: Sequence[int]) -> list[int]:
    return list(lam)


def poly_terms(f: MultiPoly) -> list[dict]:
    return f.to_json()


# ---------------------------------------------------------------------------
# payload builders


def record_dict(r: EigenRecord) -> dict:
    out: dict[str, Any] = {"tau": _partition(r.tau) if r.tau is not None else "unresolved"}
    if r.value is not None:
        out["value"] = scalar(r.value)
    else:
        out["minpoly"] = cpoly(r.minpoly)
    out["mult"] = r.multiplicity
    out["provenance"] = r.provenance
    out["residual"] = r.residual
    return out


def spectrum_dict(rep: SpectrumReport) -> dict:
    return {
        "command": "spectrum",
        "n": rep.n,
        "lambda": _partition(rep.lam),
        "m": rep.m,
        "theta": str(rep.mode),
        "dimension": rep.dimension,
        "eigenvalues": [{"value": scalar(v), "mult": k} for v, k in rep.eigenvalues()],
        "records": [record_dict(r) for r in rep.records],
        "blocks": [
            {
                "tau": _partition(b.tau),
                "dim": b.dim,
                "charpoly": cpoly(b.charpoly),
                "trace": scalar(b.trace),
                "closed_trace": scalar(b.closed_trace),
                "match": b.trace_match,
            }
            for b in rep.blocks
        ],
    }


def catalog_entry_dict(e: CatalogEntry) -> dict:
    out: dict[str, Any] = {"item": e.item, "tau": _partition(e.tau)}
    if e.value is not None:
        out["value"] = scalar(e.value)
    else:
        out["quadratic"] = cpoly(e.quadratic)
    out["mult"] = e.multiplicity
    out["leading"] = e.leading
    return out


def eigenfunction_dict(fn: JointEigenfunction) -> dict:
    values = []
    for m, v in fn.eigenvalues.items():
        values.append({"m": m, "minpoly": cpoly(v)} if isinstance(v, tuple) else {"m": m, "value": scalar(v)})
    return {"tau": _partition(fn.tau), "resolved": fn.resolved, "eigenvalues": values, "terms": poly_terms(fn.poly)}


# ---------------------------------------------------------------------------
# CSV rows: one eigen-record per row


def csv_rows(payload: dict) -> list[tuple]:
    cmd = payload.get("command")
    n, theta = payload.get("n"), payload.get("theta")
    lam = format_partition(payload.get("lambda", []))
    rows: list[tuple] = []
    if cmd == "eig":
        rows.append((n, lam, str(n), payload["m"], theta, payload["eigenvalue"], 1, "closed-form"))
    elif cmd == "series":
        for m, v in enumerate(payload["series"]):
            rows.append((n, lam, str(n), m, theta, v, 1, "closed-form"))
    elif cmd == "trace":
        tau = format_partition(payload["tau"])
        rows.append((n, lam, tau, payload["m"], theta, payload["closed"], payload["isotypic_dimension"], "closed-form"))
        rows.append((n, lam, tau, payload["m"], theta, payload["brute"], payload["isotypic_dimension"], "brute-force"))
    elif cmd == "spectrum":
        for r in payload["records"]:
            value = r["value"] if "value" in r else cpoly_text([parse_scalar(c) for c in r["minpoly"]])
            tau = r["tau"] if isinstance(r["tau"], str) else format_partition(r["tau"])
            rows.append((n, lam, tau, payload["m"], theta, value, r["mult"], r["provenance"]))
    elif cmd == "catalog3":
        for e in payload["entries"]:
            value = e["value"] if "value" in e else cpoly_text([parse_scalar(c) for c in e["quadratic"]])
            rows.append((3, lam, format_partition(e["tau"]), payload["m"], theta, value, e["mult"], "closed-form"))
    elif cmd == "basis":
        for fn in payload["functions"]:
            for ev in fn["eigenvalues"]:
                value = ev["value"] if "value" in ev else cpoly_text([parse_scalar(c) for c in ev["minpoly"]])
                rows.append((n, lam, format_partition(fn["tau"]), ev["m"], theta, value, 1, "brute-force"))
    else:
        raise ValueError(f"CSV output is only available for eigenvalue reports, not {cmd or 'verify'!r}")
    return rows


# ---------------------------------------------------------------------------
# rendering


def to_json(payload: dict) -> str:
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":"))


def to_csv(payload: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(csv_rows(payload))
    return buf.getvalue()


def to_pretty(payload: dict) -> str:
    lines = []

    def walk(obj, indent: int, key: str | None) -> None:
        pad = "  " * indent
        label = f"{key}: " if key is not None else "- "
        if isinstance(obj, dict):
            lines.append(pad + (f"{key}:" if key is not None else "-"))
            for k, v in obj.items():
                walk(v, indent + 1, k)
        elif isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
            lines.append(pad + (f"{key}:" if key is not None else "-"))
            for v in obj:
                walk(v, indent + 1, None)
        elif isinstance(obj, list):
            lines.append(pad + label + "[" + ", ".join(str(v) for v in obj) + "]")
        elif isinstance(obj, bool):
            lines.append(pad + label + ("true" if obj else "false"))
        else:
            lines.append(pad + label + str(obj))

    for k, v in payload.items():
        walk(v, 0, k)
    return "\n".join(lines) + "\n"


def render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return to_json(payload) + "\n"
    if fmt == "csv":
        return to_csv(payload)
    if fmt == "pretty":
        return to_pretty(payload)
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def load_schema() -> dict:
    return json.loads(resources.files("hpeig").joinpath("report.schema.json").read_text(encoding="utf-8"))


def validate(payload: dict) -> None:
    """Raise ``jsonschema.ValidationError`` unless ``payload`` matches the shipped schema."""
    import jsonschema

    jsonschema.validate(payload, load_schema())
