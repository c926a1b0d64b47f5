#include "pda/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pda {

namespace {

void check_two_classes(std::span<const double> scores,
                       std::span<const std::uint8_t> labels) {
    if (scores.size() != labels.size() || scores.empty()) {
        throw std::invalid_argument("auc: scores and labels must align and be nonempty");
    }
    const auto positives = static_cast<std::size_t>(
        std::count(labels.begin(), labels.end(), std::uint8_t{1}));
    if (positives == 0 || positives == labels.size()) {
        throw std::invalid_argument("auc: need at least one sample of each class");
    }
}

}  // namespace

double auc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
    check_two_classes(scores, labels);
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Average ranks across tie groups, accumulate ranks of anomalous samples.
    double positive_rank_sum = 0.0;
    std::size_t positives = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based
        for (std::size_t t = i; t < j; ++t) {
            if (labels[order[t]]) {
                positive_rank_sum += avg_rank;
                ++positives;
            }
        }
        i = j;
    }
    const std::size_t negatives = n - positives;
    const double u = positive_rank_sum -
                     static_cast<double>(positives) * (positives + 1) / 2.0;
    return u / (static_cast<double>(positives) * static_cast<double>(negatives));
}

RocCurve roc_curve(std::span<const double> scores, std::span<const std::uint8_t> labels) {
    check_two_classes(scores, labels);
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    const auto positives = static_cast<double>(
        std::count(labels.begin(), labels.end(), std::uint8_t{1}));
    const double negatives = static_cast<double>(n) - positives;

    RocCurve roc;
    roc.fpr.push_back(0.0);
    roc.tpr.push_back(0.0);
    std::size_t tp = 0, fp = 0, i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        for (std::size_t t = i; t < j; ++t) {
            if (labels[order[t]]) {
                ++tp;
            } else {
                ++fp;
            }
        }
        roc.fpr.push_back(static_cast<double>(fp) / negatives);
        roc.tpr.push_back(static_cast<double>(tp) / positives);
        i = j;
    }
    return roc;
}

double trapezoid_area(const RocCurve& roc) {
    double area = 0.0;
    for (std::size_t i = 1; i < roc.fpr.size(); ++i) {
        area += (roc.fpr[i] - roc.fpr[i - 1]) * (roc.tpr[i] + roc.tpr[i - 1]) / 2.0;
    }
    return area;
}

AucStat aggregate_aucs(std::span<const double> per_run_aucs) {
    if (per_run_aucs.empty()) throw std::invalid_argument("aggregate_aucs: no runs");
    AucStat stat;
    stat.runs = per_run_aucs.size();
    stat.mean = std::accumulate(per_run_aucs.begin(), per_run_aucs.end(), 0.0) /
                static_cast<double>(stat.runs);
    double ss = 0.0;
    for (double v : per_run_aucs) ss += (v - stat.mean) * (v - stat.mean);
    stat.se = std::sqrt(ss / static_cast<double>(stat.runs)) /
              std::sqrt(static_cast<double>(stat.runs));
    return stat;
}

double median_of(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of empty set");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

WeightProfile weight_profile(std::vector<double> per_weight_aucs) {
    if (per_weight_aucs.empty()) throw std::invalid_argument("weight_profile: no weights");
    WeightProfile profile;
    std::sort(per_weight_aucs.begin(), per_weight_aucs.end());
    profile.median = per_weight_aucs.size() % 2 == 1
                         ? per_weight_aucs[per_weight_aucs.size() / 2]
                         : 0.5 * (per_weight_aucs[per_weight_aucs.size() / 2 - 1] +
                                  per_weight_aucs[per_weight_aucs.size() / 2]);
    profile.best = per_weight_aucs.back();
    profile.sorted_aucs = std::move(per_weight_aucs);
    return profile;
}

}  // namespace pda
