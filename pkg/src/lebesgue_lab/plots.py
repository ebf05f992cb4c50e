"""Optional figure rendering for the CLI report paths.

Figures are written straight to PNG files with the Agg backend and no
embedded software metadata, so repeated runs produce identical bytes.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

__all__ = ["growth_figure", "converge_figure", "porosity_figure"]

_DPI = 100


def _save(fig, path) -> None:
    fig.savefig(path, dpi=_DPI, metadata={"Software": None})
    plt.close(fig)


def growth_figure(rows, path, label: str) -> None:
    """Lebesgue constant against degree, log scale."""
    ns = [r.n for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.semilogy(ns, [r.lambda_max for r in rows], marker="o", label="Lebesgue constant")
    ax.set_xlabel("degree n")
    ax.set_ylabel("Lambda_n")
    ax.set_title(f"Lebesgue constant growth ({label})")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    _save(fig, path)


def converge_figure(series, path, label: str) -> None:
    """Uniform interpolation error against degree per function.

    ``series`` maps function name to a list of (n, error) pairs.
    """
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for name in sorted(series):
        pairs = series[name]
        ax.semilogy([n for n, _ in pairs], [e for _, e in pairs], marker="o", label=name)
    ax.set_xlabel("degree n")
    ax.set_ylabel("uniform error")
    ax.set_title(f"Interpolation error ({label})")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    _save(fig, path)


def porosity_figure(entries, path, label: str) -> None:
    """One-sided porosities per queried point.

    ``entries`` is a list of (x0, p_plus, p_minus) triples.
    """
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    xs = [e[0] for e in entries]
    ax.plot(xs, [e[1] for e in entries], "^", label="right porosity")
    ax.plot(xs, [e[2] for e in entries], "v", label="left porosity")
    ax.set_xlabel("point of the set")
    ax.set_ylabel("lower porosity")
    ax.set_ylim(-0.05, 1.05)
    ax.set_title(f"Lower porosity ({label})")
    ax.grid(True, alpha=0.3)
    ax.legend()
    _save(fig, path)
