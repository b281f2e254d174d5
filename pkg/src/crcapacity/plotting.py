"""Render capacity sweeps to PNG files next to the CSV output."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def save_capacity_figure(path, alpha_db, curves, title):
    """Plot capacity curves against alpha in dB and write a PNG.

    ``curves`` is a sequence of (label, values) pairs; the no-fading
    log2(1 + alpha) reference is drawn as a dashed black line.
    """
    import numpy as np

    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    for label, values in curves:
        ax.plot(alpha_db, values, marker="o", markersize=3, linewidth=1.2, label=label)
    alpha_lin = 10.0 ** (np.asarray(alpha_db, dtype=float) / 10.0)
    ax.plot(alpha_db, np.log2(1.0 + alpha_lin), "k--", linewidth=1.0, label="no fading")
    ax.set_xlabel(r"interference-to-noise ratio $\alpha$ (dB)")
    ax.set_ylabel("capacity (bits/s/Hz)")
    ax.set_title(title)
    ax.grid(True, linestyle="--", linewidth=0.5)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
