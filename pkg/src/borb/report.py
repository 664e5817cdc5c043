"""Figure rendering for run directories: one PNG per experiment table found.

Kept separate from the runner so `run` output stays plain CSV/JSON; the
`report` subcommand (or render_report) draws whatever tables are present.
"""

from __future__ import annotations

import csv
from collections import defaultdict
from pathlib import Path


def _read_csv(path: Path) -> list[dict]:
    with path.open(newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def _fig_bergman(rows, ax):
    by_p = defaultdict(list)
    for row in rows:
        by_p[int(row["p"])].append((abs(complex(float(row["x_re"]), float(row["x_im"]))), float(row["kernel"])))
    for p in sorted(by_p):
        pts = sorted(by_p[p])
        radii = [r for r, _ in pts]
        kern = [k for _, k in pts]
        ax.plot(radii, kern, marker=".", lw=0.8, label=f"p={p}")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("|x|")
    ax.set_ylabel("kernel")
    ax.set_title("Bergman kernel along radial probes")
    ax.legend(fontsize=7)


def _fig_fs_identity(rows, ax):
    by_p = defaultdict(list)
    for row in rows:
        by_p[int(row["p"])].append(float(row["residual"]))
    ps = sorted(by_p)
    ax.semilogy(ps, [max(by_p[p]) for p in ps], marker="o", label="max over bank")
    ax.semilogy(ps, [min(by_p[p]) for p in ps], marker=".", ls="--", label="min over bank")
    ax.set_xlabel("p")
    ax.set_ylabel("identity residual")
    ax.set_title("Fubini-Study identity residuals")
    ax.legend(fontsize=7)


def _fig_weak_convergence(rows, ax):
    ps = [int(row["p"]) for row in rows]
    labels = [k for k in rows[0] if k != "p"]
    worst = [max(abs(float(row[k])) for k in labels) for row in rows]
    for k in labels:
        ax.semilogy(ps, [abs(float(row[k])) for row in rows], color="0.75", lw=0.5)
    ax.semilogy(ps, worst, color="C3", marker="o", label="max over bank")
    ax.set_xlabel("p")
    ax.set_ylabel("|<(1/p) fs - c1, f>|")
    ax.set_title("Weak convergence of normalized FS currents")
    ax.legend(fontsize=7)


def _fig_sz_variance(rows, ax):
    by_f = defaultdict(list)
    for row in rows:
        by_f[row["f_label"]].append((int(row["p"]), float(row["variance"])))
    for label, pts in by_f.items():
        pts.sort()
        ax.plot([p for p, _ in pts], [v for _, v in pts], color="0.75", lw=0.5)
    ps = sorted({int(row["p"]) for row in rows})
    mean = [
        sum(float(r["variance"]) for r in rows if int(r["p"]) == p)
        / max(sum(1 for r in rows if int(r["p"]) == p), 1)
        for p in ps
    ]
    ax.plot(ps, mean, color="C0", marker="o", label="bank mean")
    ax.set_xlabel("p")
    ax.set_ylabel("Var Y_p")
    ax.set_title("Variance of zero-current pairings")
    ax.legend(fontsize=7)


def _fig_zeros_cdf(rows, ax):
    ps = [int(row["p"]) for row in rows]
    ax.plot(ps, [float(row["discrepancy"]) for row in rows], marker="o", label="CDF discrepancy")
    ax.plot(ps, [float(row["frac_ring"]) for row in rows], marker="s", label="ring fraction")
    ax.plot(ps, [float(row["frac_inner"]) for row in rows], marker="^", label="inner fraction")
    ax.set_xlabel("p")
    ax.set_ylabel("statistic")
    ax.set_title("Radial distribution of random zeros")
    ax.legend(fontsize=7)


_FIGURES = (
    ("bergman.csv", "bergman.png", _fig_bergman),
    ("fs_identity.csv", "fs_identity.png", _fig_fs_identity),
    ("weak_convergence.csv", "weak_convergence.png", _fig_weak_convergence),
    ("sz_variance.csv", "sz_variance.png", _fig_sz_variance),
    ("zeros_cdf.csv", "zeros_cdf.png", _fig_zeros_cdf),
)


def render_report(run_dir: Path) -> list[Path]:
    """Render one figure per recognized table; returns the written paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    run_dir = Path(run_dir)
    written = []
    for csv_name, png_name, draw in _FIGURES:
        table = run_dir / csv_name
        if not table.is_file():
            continue
        rows = _read_csv(table)
        if not rows:
            continue
        fig, ax = plt.subplots(figsize=(5.0, 3.4), dpi=150)
        draw(rows, ax)
        fig.tight_layout()
        target = run_dir / png_name
        fig.savefig(target)
        plt.close(fig)
        written.append(target)
    return written
