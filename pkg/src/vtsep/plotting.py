"""Optional figures for the CLI's ``--plot`` flag (matplotlib, headless)."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, path) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_growth(growth, path, title="ball growth", reference=True) -> None:
    """Ball sizes ``b(n)`` against ``n``, with ``n(n+1)/2`` for comparison."""
    ns = list(range(len(growth)))
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(ns, growth, marker="o", label="b(n)")
    if reference:
        ax.plot(ns, [n * (n + 1) / 2 for n in ns], linestyle="--", label="n(n+1)/2")
    ax.set_xlabel("n")
    ax.set_ylabel("vertices within distance n")
    ax.set_title(title)
    ax.legend()
    _save(fig, path)


def plot_profile(profile, path, title="boundary profile") -> None:
    """Minimum vertex boundary and edge cut against ``|A|``."""
    sizes = [e.size for e in profile]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.step(sizes, [e.min_vertex_boundary for e in profile], where="mid", label="min |∂A|")
    ax.step(sizes, [e.min_edge_cut for e in profile], where="mid", label="min |δA|")
    ax.set_xlabel("|A|")
    ax.set_ylabel("size")
    ax.set_title(title)
    ax.legend()
    _save(fig, path)


def plot_ratios(by_size, best, path, title="depth ratio") -> None:
    """Least ``|∂A| depth(A) / |A|`` per size, with the overall minimum marked."""
    fig, ax = plt.subplots(figsize=(5, 3.5))
    if by_size:
        xs, ys = zip(*by_size)
        ax.plot(xs, [float(y) for y in ys], marker="o")
    ax.axhline(float(best), color="red", linestyle="--", label=f"min = {best}")
    ax.set_xlabel("|A|")
    ax.set_ylabel("|∂A| depth(A) / |A|")
    ax.set_title(title)
    ax.legend()
    _save(fig, path)
