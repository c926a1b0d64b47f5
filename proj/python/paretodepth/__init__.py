"""Multi-criteria similarity-based anomaly detection via Pareto depth analysis."""

from ._core import (
    Detector,
    auc,
    c_nd,
    classify,
    dtw_dissimilarity,
    eskin_dissimilarity,
    expected_kn_uniform,
    first_front_size,
    gen_uniform_points,
    grid_weights_2d,
    group_probabilities,
    klpe_score,
    knn_score,
    knn_sum_score,
    lof_score,
    nondominated_depths,
    pareto_depths,
    points_to_dyads,
    sample_simplex_weights,
    scalarizable_count,
    strictly_dominates,
    symmetrized_kl,
    __version__,
)

__all__ = [
    "Detector",
    "auc",
    "c_nd",
    "classify",
    "dtw_dissimilarity",
    "eskin_dissimilarity",
    "expected_kn_uniform",
    "first_front_size",
    "gen_uniform_points",
    "grid_weights_2d",
    "group_probabilities",
    "klpe_score",
    "knn_score",
    "knn_sum_score",
    "lof_score",
    "nondominated_depths",
    "pareto_depths",
    "points_to_dyads",
    "sample_simplex_weights",
    "scalarizable_count",
    "strictly_dominates",
    "symmetrized_kl",
    "__version__",
]
