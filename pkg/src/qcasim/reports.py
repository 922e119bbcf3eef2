"""Sweep reports: exact tables with display decimals, and optional figures.

Rows carry every probability twice, as the exact rational string and as a
12-significant-digit decimal derived from it for human eyes; the rational
column is authoritative and CSV keeps it quoted.  Figures are rendered next
to the delimited output on request: the tunable rejection bound for the
two-letter recognizer, and the logarithmic-versus-linear counter growth for
the unary one.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from decimal import Decimal, localcontext
from typing import Callable, Iterable, Sequence

from .exact import Rat, format_rat
from . import power as power_mod
from . import upower as upower_mod

THREADS_ENV = "QCA_THREADS"


def fraction_decimal(value: Rat, sig: int = 12) -> str:
    """Display decimal with `sig` significant digits, derived from the exact value."""
    with localcontext() as ctx:
        ctx.prec = sig
        return str(Decimal(value.numerator) / Decimal(value.denominator))


def _pair(prefix: str, value: Rat) -> dict[str, str]:
    return {prefix: format_rat(value), f"{prefix}_dec": fraction_decimal(value)}


def _thread_count(cells: int) -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(8, max(1, cells))


def _map_cells(fn: Callable, cells: Sequence) -> list:
    workers = _thread_count(len(cells))
    if workers == 1 or len(cells) <= 1:
        return [fn(c) for c in cells]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, cells))


def power_sweep_rows(k_values: Iterable[int], m_values: Iterable[int]) -> list[dict[str, object]]:
    """One member row (n = 2^m) and one nearest non-member row (n = 2^m + 1) per (k, m)."""

    def cell(km: tuple[int, int]) -> list[dict[str, object]]:
        k, m = km
        rows = []
        for n in (2**m, 2**m + 1):
            p_acc, p_rej = power_mod.round_closed_form(m, n, k)
            overall_acc, overall_rej, rounds = power_mod.solve_restart(p_acc, p_rej)
            row: dict[str, object] = {
                "machine": "power",
                "k": k,
                "m": m,
                "n": n,
                "member": power_mod.is_member_pair(m, n),
            }
            row.update(_pair("round_accept", p_acc))
            row.update(_pair("round_reject", p_rej))
            row.update(_pair("overall_accept", overall_acc))
            row.update(_pair("overall_reject", overall_rej))
            row.update(_pair("expected_rounds", rounds))
            row["max_counter"] = 0
            rows.append(row)
        return rows

    cells = [(k, m) for k in k_values for m in m_values]
    return [row for group in _map_cells(cell, cells) for row in group]


def upower_sweep_rows(k_values: Iterable[int], m_values: Iterable[int]) -> list[dict[str, object]]:
    """One row per (k, m): exact pass probabilities plus the schedule's counter peak."""

    def cell(km: tuple[int, int]) -> dict[str, object]:
        k, m = km
        analysis = upower_mod.analyze_upower(m, k)
        member = upower_mod.is_upower_member(m)
        row: dict[str, object] = {
            "machine": "upower",
            "k": k,
            "m": m,
            "member": member,
        }
        row.update(_pair("pass_accept", analysis.pass_accept))
        row.update(_pair("pass_reject", analysis.pass_reject))
        row.update(_pair("overall_accept", analysis.overall_accept))
        row.update(_pair("overall_reject", analysis.overall_reject))
        row.update(_pair("expected_passes", analysis.expected_passes))
        row["max_counter"] = upower_mod.profile_member_space(m, k)
        return row

    cells = [(k, m) for k in k_values for m in m_values]
    return _map_cells(cell, cells)


def render_csv(rows: Sequence[dict[str, object]]) -> str:
    if not rows:
        return ""
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=list(rows[0]), quoting=csv.QUOTE_NONNUMERIC)
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("yes" if v else "no") if isinstance(v, bool) else v
                         for k, v in row.items()})
    return out.getvalue()


def render_json(rows: Sequence[dict[str, object]]) -> str:
    return json.dumps(rows, indent=2) + "\n"


def render_rows(rows: Sequence[dict[str, object]], fmt: str) -> str:
    if fmt == "csv":
        return render_csv(rows)
    if fmt == "json":
        return render_json(rows)
    raise ValueError(f"unknown format {fmt!r}")


def render_figures(machine: str, rows: Sequence[dict[str, object]], out_path: str) -> list[str]:
    """Render the sweep's figures next to the delimited output file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    stem, _ = os.path.splitext(out_path)
    paths: list[str] = []
    if machine == "power":
        ks = sorted({int(r["k"]) for r in rows})
        bound = [float(Rat(2 * k * k, 2 * k * k + 1)) for k in ks]
        achieved = {}
        for r in rows:
            if not r["member"]:
                k = int(r["k"])
                val = float(Rat(str(r["overall_reject"])))
                achieved.setdefault(k, []).append(val)
        fig, ax = plt.subplots(figsize=(5.0, 3.4))
        ax.plot(ks, bound, "o-", label="guaranteed bound 2k²/(2k²+1)")
        worst = [min(achieved.get(k, [1.0])) for k in ks]
        ax.plot(ks, worst, "s--", label="achieved at n = 2^m + 1")
        ax.set_xlabel("k")
        ax.set_ylabel("rejection probability of non-members")
        ax.set_ylim(0, 1.02)
        ax.legend(loc="lower right", fontsize=8)
        fig.tight_layout()
        path = f"{stem}_error_bound.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        paths.append(path)
    else:
        ms = sorted({int(r["m"]) for r in rows})
        member_pts = [(m, c) for m, c in
                      sorted({(int(r["m"]), int(r["max_counter"])) for r in rows if r["member"]})]
        other_pts = [(m, c) for m, c in
                     sorted({(int(r["m"]), int(r["max_counter"])) for r in rows if not r["member"]})]
        fig, ax = plt.subplots(figsize=(5.0, 3.4))
        if member_pts:
            ax.plot([p[0] for p in member_pts], [p[1] for p in member_pts], "o",
                    label="members: log2(m)")
        if other_pts:
            ax.plot([p[0] for p in other_pts], [p[1] for p in other_pts], "x",
                    label="non-members: m")
        ax.plot(ms, ms, ":", color="gray", linewidth=0.8)
        ax.set_xlabel("input length m")
        ax.set_ylabel("counter high-water mark")
        ax.legend(loc="upper left", fontsize=8)
        fig.tight_layout()
        path = f"{stem}_counter_space.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        paths.append(path)
    return paths
