"""Figure output for bench runs."""

from __future__ import annotations

from .bench import BenchRow

_STYLE = {
    "figure.figsize": (5.0, 3.4),
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def plot_bench(rows: list[BenchRow], path: str) -> None:
    """Mean time per method against suspended-tree edge count, log scale."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    methods = []
    for r in rows:
        if r.method not in methods:
            methods.append(r.method)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        for method in methods:
            pts = [(r.size, r.mean_seconds) for r in rows if r.method == method and r.status == "ok"]
            if pts:
                xs, ys = zip(*sorted(pts))
                ax.plot(xs, ys, marker="o", ms=3, lw=1, label=method)
        ax.set_yscale("log")
        ax.set_xlabel("edges of suspended tree")
        ax.set_ylabel("mean wall time [s]")
        ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
