"""Report serialization: canonical JSON and a flat CSV of the primary table."""

from __future__ import annotations

import csv
import io
import json

from .experiments import Report

JSON_FORMAT = "json"
CSV_FORMAT = "csv"


def export_report(report: Report, fmt: str = JSON_FORMAT) -> bytes:
    if fmt == JSON_FORMAT:
        text = json.dumps(report.to_json(), indent=2, sort_keys=True, ensure_ascii=False)
        return (text + "\n").encode("utf-8")
    if fmt == CSV_FORMAT:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if report.tables:
            primary = report.tables[0]
            writer.writerow(primary.columns)
            writer.writerows(primary.rows)
        return buf.getvalue().encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(data: bytes | str) -> Report:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return Report.from_json(json.loads(data))


__all__ = ["export_report", "parse_report", "JSON_FORMAT", "CSV_FORMAT"]
