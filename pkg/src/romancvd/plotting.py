"""Figures for benchmark rows. Uses the non-interactive Agg backend."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def plot_bench(rows: list[dict], path: str) -> None:
    """Median wall time and guess counts against k, one line per variant."""
    fig, (ax_t, ax_g) = plt.subplots(1, 2, figsize=(9, 3.5))
    variants = sorted({r["variant"] for r in rows})
    for variant in variants:
        by_k: dict = {}
        for r in rows:
            if r["variant"] == variant:
                by_k.setdefault(int(r["k"]), []).append(r)
        ks = sorted(by_k)
        times = [sorted(float(r["wall_ms"]) for r in by_k[k])[len(by_k[k]) // 2] for k in ks]
        guesses = [max(int(r["guesses_enumerated"]) for r in by_k[k]) for k in ks]
        ax_t.plot(ks, times, marker="o", label=variant)
        ax_g.plot(ks, guesses, marker="s", label=variant)
    ax_t.set_xlabel("k")
    ax_t.set_ylabel("median wall time (ms)")
    ax_g.set_xlabel("k")
    ax_g.set_ylabel("guesses enumerated")
    for ax in (ax_t, ax_g):
        if rows:
            ax.set_yscale("log")
            ax.legend()
        ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
