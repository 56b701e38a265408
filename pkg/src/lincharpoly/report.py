"""Benchmark CSV output and the optional timing figure."""

from __future__ import annotations

import csv
from typing import TextIO

from .bench import BenchRecord

HEADER = ("p", "e", "m", "r", "l", "n", "algo", "order", "s", "wall_ns")


def _cell(v) -> str:
    return "" if v is None else str(v)


def write_csv(records: list[BenchRecord], dest: str | TextIO) -> None:
    """Header plus one row per record; cells over the cap read ``timeout``."""
    if isinstance(dest, str):
        with open(dest, "w", newline="", encoding="utf-8") as fh:
            write_csv(records, fh)
        return
    w = csv.writer(dest, lineterminator="\n", quoting=csv.QUOTE_NONE)
    w.writerow(HEADER)
    for rec in records:
        row = [getattr(rec, k) for k in HEADER]
        row[-1] = "timeout" if rec.wall_ns is None else rec.wall_ns
        w.writerow([_cell(v) for v in row])


def read_csv(src: str | TextIO) -> list[BenchRecord]:
    if isinstance(src, str):
        with open(src, newline="", encoding="utf-8") as fh:
            return read_csv(fh)
    rows = csv.reader(src)
    if tuple(next(rows)) != HEADER:
        raise ValueError("unexpected CSV header")

    def opt(v):
        return None if v in ("", "timeout") else int(v)

    out = []
    for row in rows:
        p, e, m, r, l, n, algo, order, s, wall = row
        out.append(BenchRecord(int(p), int(e), int(m), int(r), int(l), int(n), algo,
                               opt(order), opt(s), opt(wall)))
    return out


def render_figure(records: list[BenchRecord], path: str) -> None:
    """Log-log wall time against n, one line per instance and algorithm."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    series: dict = {}
    for rec in records:
        if rec.wall_ns is None:
            continue
        key = (rec.p**rec.e, rec.m, rec.r, rec.algo)
        series.setdefault(key, []).append((rec.n, rec.wall_ns / 1e9))
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    for (q, m, r, algo), pts in sorted(series.items()):
        pts.sort()
        ax.plot([x for x, _ in pts], [y for _, y in pts],
                marker="o" if algo == "fast" else "s",
                linestyle="-" if algo == "fast" else "--",
                label=f"{algo} q={q} m={m} r={r}")
    ax.set_xscale("log", base=2)
    ax.set_yscale("log")
    ax.set_xlabel("n = m*l")
    ax.set_ylabel("median wall time [s]")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
