#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pda/baselines.hpp"
#include "pda/criteria.hpp"
#include "pda/detector.hpp"
#include "pda/eval.hpp"
#include "pda/gap_lab.hpp"
#include "pda/nondominated_sort.hpp"
#include "pda/synthgen.hpp"

namespace py = pybind11;

namespace {

using Rows = std::vector<std::vector<double>>;

std::vector<double> flatten(const Rows& rows, std::size_t& n, std::size_t& width) {
    n = rows.size();
    width = n ? rows.front().size() : 0;
    std::vector<double> flat;
    flat.reserve(n * width);
    for (const auto& row : rows) {
        if (row.size() != width) {
            throw std::invalid_argument("rows must have uniform length");
        }
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return flat;
}

pda::DissimilarityStack stack_from_matrices(const std::vector<Rows>& matrices) {
    if (matrices.empty()) throw std::invalid_argument("need at least one matrix");
    const std::size_t n = matrices.front().size();
    std::vector<std::vector<double>> flat;
    for (const auto& m : matrices) {
        std::size_t rows = 0, cols = 0;
        flat.push_back(flatten(m, rows, cols));
        if (rows != n || cols != n) throw std::invalid_argument("matrices must be N x N");
    }
    return pda::DissimilarityStack::from_matrices(std::move(flat), n);
}

pda::Trajectory trajectory_from(const std::vector<std::pair<double, double>>& pts) {
    pda::Trajectory t;
    t.points.reserve(pts.size());
    for (const auto& [x, y] : pts) t.points.push_back({x, y});
    return t;
}

// Detector handle exposing train/score over plain nested lists.
class Detector {
public:
    Detector(const std::vector<Rows>& matrices, const std::string& sorter,
             const std::vector<int>& k_override) {
        model_ = pda::train(stack_from_matrices(matrices),
                            pda::sorter_from_string(sorter), k_override);
    }

    std::vector<int> k() const { return model_.neighbor_counts; }
    std::size_t front_count() const { return model_.front_count(); }
    std::size_t train_size() const { return model_.train_size(); }
    std::vector<std::uint32_t> training_depths() const { return model_.ledger.depths(); }

    double score_one(const Rows& test_rows, const std::string& mode) const {
        return pda::score(model_, test_rows, depth_mode(mode)).value;
    }
    std::vector<std::uint32_t> depths_one(const Rows& test_rows,
                                          const std::string& mode) const {
        return pda::score(model_, test_rows, depth_mode(mode)).depths;
    }

private:
    static pda::DepthMode depth_mode(const std::string& mode) {
        if (mode == "exact") return pda::DepthMode::exact;
        if (mode == "accelerated") return pda::DepthMode::accelerated;
        throw std::invalid_argument("mode must be exact or accelerated");
    }
    pda::PdaModel model_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multi-criteria similarity-based anomaly detection via Pareto depth";

    m.def(
        "nondominated_depths",
        [](const Rows& dyads, const std::string& sorter) {
            std::size_t n = 0, k = 0;
            const auto flat = flatten(dyads, n, k);
            return pda::nondominated_depths(flat, n, k,
                                            pda::sorter_from_string(sorter));
        },
        py::arg("dyads"), py::arg("sorter") = "jensen",
        "1-based Pareto front depth of each dyad (rows of K dissimilarities)");

    m.def(
        "pareto_depths",
        [](const Rows& training, const Rows& queries, const std::string& sorter,
           const std::string& mode) {
            std::size_t n = 0, k = 0;
            auto flat = flatten(training, n, k);
            const auto depths =
                pda::nondominated_depths(flat, n, k, pda::sorter_from_string(sorter));
            const auto ledger = pda::FrontLedger::from_depths(std::move(flat), k, depths);
            const auto depth_mode = mode == "accelerated" ? pda::DepthMode::accelerated
                                                          : pda::DepthMode::exact;
            std::vector<std::uint32_t> out;
            out.reserve(queries.size());
            for (const auto& q : queries) {
                out.push_back(ledger.pareto_depth(q, depth_mode));
            }
            return out;
        },
        py::arg("training"), py::arg("queries"), py::arg("sorter") = "jensen",
        py::arg("mode") = "exact",
        "Pareto depth of each query dyad against the training fronts");

    m.def("strictly_dominates",
          [](const std::vector<double>& a, const std::vector<double>& b) {
              return pda::strictly_dominates(std::span<const double>(a),
                                             std::span<const double>(b));
          });

    py::class_<Detector>(m, "Detector")
        .def(py::init<const std::vector<Rows>&, const std::string&,
                      const std::vector<int>&>(),
             py::arg("matrices"), py::arg("sorter") = "jensen",
             py::arg("k_override") = std::vector<int>{},
             "Train a detector on K symmetric N x N dissimilarity matrices")
        .def_property_readonly("k", &Detector::k)
        .def_property_readonly("front_count", &Detector::front_count)
        .def_property_readonly("train_size", &Detector::train_size)
        .def("training_depths", &Detector::training_depths)
        .def("score", &Detector::score_one, py::arg("test_rows"),
             py::arg("mode") = "exact",
             "Anomaly score (mean Pareto depth) for K test-to-train rows")
        .def("depths", &Detector::depths_one, py::arg("test_rows"),
             py::arg("mode") = "exact");

    m.def("classify",
          [](double score, double rho) { return score > rho ? "anomalous" : "nominal"; },
          py::arg("score"), py::arg("rho"));

    // Criteria
    m.def("eskin_dissimilarity",
          [](const std::vector<int>& a, const std::vector<int>& b,
             const std::vector<int>& cards) {
              return pda::eskin_dissimilarity(a, b, cards);
          });
    m.def("dtw_dissimilarity",
          [](const std::vector<std::pair<double, double>>& s,
             const std::vector<std::pair<double, double>>& t) {
              return pda::dtw_dissimilarity(trajectory_from(s), trajectory_from(t));
          });
    m.def("symmetrized_kl",
          [](const std::vector<double>& p, const std::vector<double>& q,
             const std::vector<double>& edges) {
              pda::SpeedHistogram hp{edges, p}, hq{edges, q};
              return pda::symmetrized_kl(hp, hq);
          },
          py::arg("p"), py::arg("q"), py::arg("edges"));

    // Baselines
    m.def("sample_simplex_weights", &pda::sample_simplex_weights, py::arg("criteria"),
          py::arg("count"), py::arg("seed"));
    m.def("grid_weights_2d", &pda::grid_weights_2d, py::arg("count"));
    m.def("knn_score",
          [](const std::vector<double>& d, int k) { return pda::knn_score(d, k); });
    m.def("knn_sum_score",
          [](const std::vector<double>& d, int k) { return pda::knn_sum_score(d, k); });
    m.def("klpe_score", [](const Rows& matrix, const std::vector<double>& test, int k) {
        std::size_t n = 0, c = 0;
        const auto flat = flatten(matrix, n, c);
        return pda::klpe_score(flat, n, test, k);
    });
    m.def("lof_score", [](const Rows& matrix, const std::vector<double>& test, int k) {
        std::size_t n = 0, c = 0;
        const auto flat = flatten(matrix, n, c);
        return pda::lof_score(flat, n, test, k);
    });

    // Evaluation
    m.def("auc", [](const std::vector<double>& scores, const std::vector<int>& labels) {
        std::vector<std::uint8_t> l(labels.begin(), labels.end());
        return pda::auc(scores, l);
    });

    // Gap laboratory
    m.def("first_front_size", [](const Rows& points) {
        std::size_t n = 0, d = 0;
        const auto flat = flatten(points, n, d);
        return pda::first_front_size(flat, n, d);
    });
    m.def("scalarizable_count", [](const Rows& front) {
        std::size_t m_count = 0, d = 0;
        const auto flat = flatten(front, m_count, d);
        const auto result = pda::scalarizable_count(flat, m_count, d);
        return py::make_tuple(result.count, result.flagged);
    });
    m.def("c_nd", &pda::c_nd, py::arg("n"), py::arg("d"));
    m.def("expected_kn_uniform", &pda::expected_kn_uniform, py::arg("n"), py::arg("d"),
          py::arg("rel_tol") = 1e-10);

    // Generators
    m.def("gen_uniform_points",
          [](std::size_t n, std::size_t d, std::uint64_t seed) {
              const auto flat = pda::gen_uniform_points(n, d, seed);
              Rows out(n, std::vector<double>(d));
              for (std::size_t i = 0; i < n; ++i) {
                  for (std::size_t j = 0; j < d; ++j) out[i][j] = flat[i * d + j];
              }
              return out;
          });
    m.def("points_to_dyads", [](const Rows& points) {
        std::size_t n = 0, d = 0;
        const auto flat = flatten(points, n, d);
        const auto dyads = pda::points_to_dyads(flat, n, d);
        const std::size_t rows = n * (n - 1) / 2;
        Rows out(rows, std::vector<double>(d));
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < d; ++j) out[i][j] = dyads[i * d + j];
        }
        return out;
    });
    m.def("group_probabilities", &pda::group_probabilities, py::arg("groups"));

    m.attr("__version__") = "0.1.0";
}
