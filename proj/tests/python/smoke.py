"""Smoke tests for the compiled module: worked examples with known answers."""

import math
import sys

import paretodepth as pd


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    # Non-dominated sorting on the worked five-dyad example.
    dyads = [[1, 5], [2, 3], [4, 1], [3, 4], [5, 5]]
    assert pd.nondominated_depths(dyads, "deb") == [1, 1, 1, 2, 3]
    assert pd.nondominated_depths(dyads, "jensen") == [1, 1, 1, 2, 3]

    # Depth queries against those fronts.
    assert pd.pareto_depths(dyads, [[2, 2], [4, 4], [10, 10]]) == [1, 3, 4]
    assert pd.pareto_depths(dyads, [[2, 2]], "jensen", "accelerated") == [1]

    assert pd.strictly_dominates([1, 2], [2, 2])
    assert not pd.strictly_dominates([1, 2], [2, 1])

    # Eskin: one mismatching attribute with alphabet size 6.
    approx(pd.eskin_dissimilarity([0, 1], [0, 2], [6, 6]), 2.0 / 38.0)

    # DTW: warp (1,0) onto both (1,0) and (2,0).
    approx(pd.dtw_dissimilarity([(0, 0), (1, 0)], [(0, 0), (1, 0), (2, 0)]), 1.0)

    # Symmetrized KL on a two-bin histogram.
    approx(pd.symmetrized_kl([0.5, 0.5], [0.25, 0.75], [0, 1, 2]),
           0.27465307216702745, 1e-12)

    # Rank AUC with one tie: (3 + 0.5) / 4.
    approx(pd.auc([1, 2, 2, 3], [0, 0, 1, 1]), 0.875)

    # Asymptotic oracles.
    approx(pd.c_nd(100, 2), math.log(100), 1e-12)
    h10 = sum(1.0 / i for i in range(1, 11))
    approx(pd.expected_kn_uniform(10, 2), h10, 1e-8)

    # First front and its scalarizable subset.
    assert pd.first_front_size(dyads) == 3
    count, flagged = pd.scalarizable_count([[1, 5], [2, 3], [4, 1]])
    assert count == 3 and flagged == 0
    count, flagged = pd.scalarizable_count([[1, 5], [3, 4.5], [4, 1]])
    assert count == 2

    # Simplex weights and grids.
    weights = pd.sample_simplex_weights(3, 10, 42)
    assert len(weights) == 10
    for w in weights:
        approx(sum(w), 1.0, 1e-12)
    assert pd.grid_weights_2d(3)[1] == [0.5, 0.5]

    # Baselines on a tiny distance set.
    approx(pd.knn_score([1, 2, 3, 4], 2), 2.0)
    approx(pd.knn_sum_score([1, 2, 3, 4], 2), 3.0)

    # Group probabilities: p_i = i / (K (K+1)).
    probs = pd.group_probabilities(6)
    approx(sum(probs), 0.5, 1e-14)
    approx(probs[5] / probs[0], 6.0, 1e-12)

    # End-to-end detector on points with |dx|, |dy| criteria.
    pts = pd.gen_uniform_points(30, 2, 7)
    m0 = [[abs(a[0] - b[0]) for b in pts] for a in pts]
    m1 = [[abs(a[1] - b[1]) for b in pts] for a in pts]
    det = pd.Detector([m0, m1], "jensen")
    assert det.train_size == 30
    assert det.front_count >= 1
    nominal_rows = [
        [abs(0.5 - p[0]) for p in pts],
        [abs(0.5 - p[1]) for p in pts],
    ]
    far_rows = [[50.0] * 30, [50.0] * 30]
    nominal_score = det.score(nominal_rows)
    far_score = det.score(far_rows)
    assert 1.0 <= nominal_score < far_score
    approx(far_score, det.front_count + 1)
    assert det.score(nominal_rows, "accelerated") == nominal_score
    assert pd.classify(far_score, nominal_score) == "anomalous"

    print("python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
