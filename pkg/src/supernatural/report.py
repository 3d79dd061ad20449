"""CSV / JSON / plain-table rendering of witness and scan results.

Report rows share the columns ``function, smallest_composite_n, value,
factorization, primes_before``. Missing fields are empty in CSV and null
in JSON; big integers are written as decimal strings in JSON so that no
consumer loses precision.
"""

from __future__ import annotations

import csv
import io
import json

from .conjecture import CompositeWitness, Exhausted, ScanRow, Searched

REPORT_FIELDS = ("function", "smallest_composite_n", "value", "factorization", "primes_before")


def scan_record(row: ScanRow) -> dict:
    return {
        "function": row.function,
        "smallest_composite_n": row.smallest_composite_index,
        "value": row.composite_value,
        "factorization": row.factorization.render() if row.factorization else None,
        "primes_before": row.primes_before,
    }


def witness_record(function: str, result) -> dict:
    """Report row for a search result (witness or Exhausted)."""
    if isinstance(result, Exhausted):
        return {
            "function": function,
            "smallest_composite_n": None,
            "value": None,
            "factorization": None,
            "primes_before": result.primes_found,
        }
    searched = isinstance(result.provenance, Searched)
    return {
        "function": function,
        "smallest_composite_n": result.index,
        "value": result.value,
        "factorization": result.factorization.render(),
        "primes_before": result.index - 1 if searched else None,
    }


def certificate_record(function: str, w: CompositeWitness) -> dict:
    prov = w.provenance
    return {
        "function": function,
        "index": w.index,
        "value": w.value,
        "factorization": w.factorization.render(),
        "provenance": type(prov).__name__,
        "base_index": getattr(prov, "base_index", None),
        "prime": getattr(prov, "prime", None),
    }


def _cell(v) -> str:
    return "" if v is None else str(v)


def to_csv(records, fields=None) -> str:
    records = list(records)
    fields = list(fields or (records[0].keys() if records else REPORT_FIELDS))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for rec in records:
        writer.writerow([_cell(rec.get(f)) for f in fields])
    return buf.getvalue()


def _jsonable(v):
    if isinstance(v, int) and not isinstance(v, bool) and abs(v) >= 2**53:
        return str(v)
    return v


def to_json(records) -> str:
    out = [{k: _jsonable(v) for k, v in rec.items()} for rec in records]
    return json.dumps(out, indent=2) + "\n"


def to_table(records, fields=None) -> str:
    records = list(records)
    fields = list(fields or (records[0].keys() if records else REPORT_FIELDS))
    rows = [fields] + [[_cell(rec.get(f)) for f in fields] for rec in records]
    widths = [max(len(r[i]) for r in rows) for i in range(len(fields))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list:
    """Inverse of ``to_csv`` for report rows; integers come back as ints."""
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        row = {}
        for k, v in rec.items():
            if v == "":
                row[k] = None
            elif k in ("smallest_composite_n", "value", "primes_before", "index",
                       "base_index", "prime"):
                row[k] = int(v)
            else:
                row[k] = v
        out.append(row)
    return out


FORMATTERS = {"csv": to_csv, "table": to_table}


def emit(records, fmt: str, fields=None) -> str:
    if fmt == "json":
        return to_json(records)
    return FORMATTERS[fmt](records, fields)
