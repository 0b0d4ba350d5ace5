"""Report figures rendered to files (headless Agg backend)."""

from __future__ import annotations

import numpy as np
import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def _finish(fig, path: str):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_class_distribution(labels, label_names: list[str], path: str):
    """Bar chart of how many targets were assigned to each class."""
    counts = np.bincount(np.asarray(labels, dtype=np.int64), minlength=len(label_names))
    fig, ax = plt.subplots(figsize=(max(4.0, 0.5 * len(label_names)), 3.2))
    ax.bar(range(len(label_names)), counts, color="#4878d0")
    ax.set_xticks(range(len(label_names)))
    ax.set_xticklabels(label_names, rotation=45, ha="right")
    ax.set_ylabel("assigned targets")
    ax.set_title("Predicted class distribution")
    _finish(fig, path)


def save_per_class_accuracy(per_class, label_names: list[str], path: str):
    """Bar chart of per-class accuracy in [0, 1]; unscored classes show as 0."""
    values = [0.0 if v is None else float(v) for v in per_class]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.5 * len(label_names)), 3.2))
    ax.bar(range(len(label_names)), values, color="#d65f5f")
    ax.set_xticks(range(len(label_names)))
    ax.set_xticklabels(label_names, rotation=45, ha="right")
    ax.set_ylim(0.0, 1.0)
    ax.set_ylabel("accuracy")
    ax.set_title("Per-class accuracy")
    _finish(fig, path)


def save_annotation_heatmap(values, label_names: list[str], path: str):
    """Heatmap of the class-membership matrix (classes by targets)."""
    v = np.asarray(values, dtype=np.float64)
    fig, ax = plt.subplots(figsize=(6.4, max(2.4, 0.3 * len(label_names))))
    image = ax.imshow(v, aspect="auto", interpolation="nearest", cmap="viridis")
    ax.set_yticks(range(len(label_names)))
    ax.set_yticklabels(label_names)
    ax.set_xlabel("target sample")
    ax.set_title("Class membership weights")
    fig.colorbar(image, ax=ax, shrink=0.8)
    _finish(fig, path)
