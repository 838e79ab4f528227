"""Unsupervised outlier detection on natural-neighbor graphs.

The heavy lifting lives in the compiled extension; this package re-exports
its functions. Matrices are numpy arrays of shape (n_samples, n_features).
"""

from drod._core import (
    DrodError,
    auc,
    dbi,
    detect,
    generate,
    kmeans,
    natural_neighbors,
    precision_at_s,
    remove_top_s_and_cluster,
)

__all__ = [
    "DrodError",
    "auc",
    "dbi",
    "detect",
    "generate",
    "kmeans",
    "natural_neighbors",
    "precision_at_s",
    "remove_top_s_and_cluster",
]
