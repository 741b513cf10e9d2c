"""Matplotlib renderers for the figure bundle written by the report command."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from spinthermo.analysis import ExtremumReport, SurfaceGrid  # noqa: E402

__all__ = ["render_curves", "render_surface"]

_AXIS_SYMBOL = {"bures": "β", "semiclassical": "λ", "difference": "β"}


def render_curves(path, rows, extremum: ExtremumReport | None = None) -> None:
    """Overlay of the two magnetization laws, with the extremum marked."""
    betas = np.array([r[0] for r in rows])
    brill = np.array([r[1] for r in rows])
    alt = np.array([r[2] for r in rows])
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(betas, brill, label="brillouin (tanh β)", color="#1f77b4")
    ax.plot(betas, alt, label="alternative (I₂/I₁)", color="#d62728")
    if extremum is not None:
        for sign in (1.0, -1.0):
            ax.axvline(sign * extremum.argmax, color="gray", lw=0.8, ls="--")
        ax.set_title(
            f"largest gap {extremum.max_value:.6f} at "
            f"β = ±{extremum.argmax:.5f}")
    ax.set_xlabel("β")
    ax.set_ylabel("−E")
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_surface(path, grid: SurfaceGrid) -> None:
    """Perspective plot of one surface over its (beta1, beta2) grid."""
    a1 = grid.spec.axis1()
    a2 = grid.spec.axis2()
    x2, x1 = np.meshgrid(a2, a1)
    z = grid.values.reshape(grid.spec.steps1, grid.spec.steps2)
    sym = _AXIS_SYMBOL[grid.model]
    fig = plt.figure(figsize=(7, 5.5))
    ax = fig.add_subplot(projection="3d")
    ax.plot_surface(x1, x2, z, cmap="viridis", rstride=1, cstride=1,
                    linewidth=0, antialiased=True)
    ax.set_xlabel(f"{sym}₁")
    ax.set_ylabel(f"{sym}₂")
    ax.set_title(f"{grid.model} {grid.quantity}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
