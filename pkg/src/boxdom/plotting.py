"""Figures for a sweep report, rendered headless to PNG files."""

from __future__ import annotations

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .errors import IoError  # noqa: E402


def _bound_scatter(report: dict, path: Path):
    pts = Counter(
        (rec["gamma_G"] * rec["gamma_H"], rec["gamma_product"])
        for rec in report["pairs"] if rec.get("gamma_product") is not None
    )
    fig, ax = plt.subplots(figsize=(5, 4.5))
    if pts:
        xs, ys, counts = zip(*((x, y, c) for (x, y), c in sorted(pts.items())))
        ax.scatter(xs, ys, s=[20 + 8 * c for c in counts], alpha=0.7)
        top = max(max(xs), max(ys)) + 1
        ax.plot([0, top], [0, top], "k--", lw=1, label="gamma(GxH) = gamma(G)gamma(H)")
        ax.plot([0, top], [0, top / 2], "r:", lw=1, label="half bound")
        ax.legend(loc="upper left", fontsize=8)
    ax.set_xlabel("gamma(G) gamma(H)")
    ax.set_ylabel("gamma(G x H)")
    ax.set_title(f"{len(report['pairs'])} factor pairs (marker size = multiplicity)", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _flag_bars(report: dict, path: Path):
    tallies = report["tallies"]
    labels = list(tallies["flags"]) + [f"{k}-cover" for k in tallies["k_cover"]]
    values = list(tallies["flags"].values()) + list(tallies["k_cover"].values())
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(values)), values)
    ax.set_xticks(range(len(values)), labels, rotation=30, ha="right", fontsize=8)
    ax.axhline(tallies["sets"], color="k", lw=1, ls="--")
    ax.set_ylabel(f"dominating sets (of {tallies['sets']})")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_sweep_figures(report: dict, out_dir) -> list[Path]:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        paths = [out / "product_bound.png", out / "hypothesis_tallies.png"]
        _bound_scatter(report, paths[0])
        _flag_bars(report, paths[1])
    except OSError as exc:
        raise IoError(f"cannot write figures to {out}: {exc.strerror or exc}") from None
    return paths
