"""CSV persistence for BER curves and theory tables."""
from __future__ import annotations

import csv
import io
import math
from pathlib import Path

from ..analysis import TheoryCurve
from .engine import CI_Z, BerCurve, ber_point

CSV_HEADER = ("scheme", "M", "N", "ebno_db", "trials", "errors", "ber", "ci_low", "ci_high")
THEORY_HEADER = ("label", "ebno_db", "value", "note")


def fmt(x: float) -> str:
    return f"{x:.10g}"


def _write(path, header, rows):
    path = Path(path)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def write_csv(curves, path) -> None:
    rows = []
    for c in curves:
        for p in c.points:
            rows.append((
                c.scheme, "" if c.M is None else str(c.M), str(c.N), fmt(p.ebno_db),
                str(p.trials), str(p.errors), fmt(p.ber), fmt(p.ci_low), fmt(p.ci_high),
            ))
    _write(path, CSV_HEADER, rows)


def read_csv(path, z: float = CI_Z) -> list[BerCurve]:
    """Inverse of :func:`write_csv`; derived columns are recomputed from the counts."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror}") from exc
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != CSV_HEADER:
        raise ValueError(f"{path}: unexpected header {header}")
    curves: dict[tuple, list] = {}
    for lineno, row in enumerate(reader, 2):
        if len(row) != len(CSV_HEADER):
            raise ValueError(f"{path}:{lineno}: expected {len(CSV_HEADER)} fields")
        scheme, M, N, ebno, trials, errors, ber, *_ = row
        point = ber_point(float(ebno), int(trials), int(errors), z)
        if not math.isclose(point.ber, float(ber), rel_tol=1e-9, abs_tol=1e-300):
            raise ValueError(f"{path}:{lineno}: ber column disagrees with errors/trials")
        key = (scheme, int(M) if M else None, int(N))
        curves.setdefault(key, []).append(point)
    return [BerCurve(scheme=s, M=m, N=n, points=tuple(pts)) for (s, m, n), pts in curves.items()]


def write_theory_csv(curves: list[TheoryCurve], path) -> None:
    rows = [(c.label, fmt(e), fmt(v), c.note) for c in curves for e, v in c.points]
    _write(path, THEORY_HEADER, rows)
