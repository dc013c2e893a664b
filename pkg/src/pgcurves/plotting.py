"""Figures for run reports, rendered off-screen to image files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .pointsets import LineSpectrum, PointSet  # noqa: E402

STYLE = {
    "figure.figsize": (6.0, 4.0),
    "figure.dpi": 100,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "font.size": 10,
}


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    fig.savefig(tmp, format=path.suffix.lstrip(".") or "png", bbox_inches="tight")
    plt.close(fig)
    tmp.replace(path)
    return path


def plot_spectrum(sp: LineSpectrum, path, title: str = "") -> Path:
    """Bar chart: number of lines against intersection size."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        sizes = sorted(sp.histogram)
        ax.bar([str(s) for s in sizes], [sp.histogram[s] for s in sizes], color="#4c72b0")
        ax.set_xlabel("points on the line")
        ax.set_ylabel("lines")
        ax.set_title(title or f"line spectrum (m0={sp.m0}, M0={sp.M0})")
        return _save(fig, path)


def plot_profile(profile, path, degree: int | None = None, title: str = "") -> Path:
    """Kernel dimension of the evaluation map against degree."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ds = [r.degree for r in profile]
        ax.plot(ds, [r.kernel_dim for r in profile], "o-", label="kernel dimension")
        ax.plot(ds, [r.rank for r in profile], "s--", alpha=0.6, label="rank")
        if degree is not None:
            ax.axvline(degree, color="#c44e52", lw=1, label=f"minimum degree {degree}")
        ax.set_yscale("symlog")
        ax.set_ylim(bottom=0)
        ax.set_xlabel("degree")
        ax.legend()
        ax.set_title(title or "vanishing forms by degree")
        return _save(fig, path)


def plot_affine(K: PointSet, path, title: str = "") -> Path:
    """Scatter of the affine points (x, y, 1) by their integer encodings."""
    pts = K.array()
    aff = pts[pts[:, 2] == 1]
    with plt.rc_context(STYLE | {"axes.grid": False}):
        fig, ax = plt.subplots(figsize=(5, 5))
        ax.scatter(aff[:, 0], aff[:, 1], s=max(2, 400 // K.q), marker="s", color="#55a868")
        ax.set_xlim(-0.5, K.q - 0.5)
        ax.set_ylim(-0.5, K.q - 0.5)
        ax.set_aspect("equal")
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        off = K.size - len(aff)
        ax.set_title(title or f"{K.size} points over GF({K.field.spec}), {off} at infinity")
        return _save(fig, path)
