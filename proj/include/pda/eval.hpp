#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pda {

// ROC curve as (fpr, tpr) pairs from (0,0) to (1,1), both nondecreasing.
struct RocCurve {
    std::vector<double> fpr;
    std::vector<double> tpr;
};

struct AucStat {
    double mean = 0.0;
    double se = 0.0;
    std::size_t runs = 0;
};

struct WeightProfile {
    std::vector<double> sorted_aucs;  // ascending
    double median = 0.0;
    double best = 0.0;
};

// AUC as the Mann-Whitney rank statistic with tie correction:
// P(anomalous > nominal) + P(equal)/2. Labels: 1 anomalous, 0 nominal.
// Throws unless both classes are present.
double auc(std::span<const double> scores, std::span<const std::uint8_t> labels);

RocCurve roc_curve(std::span<const double> scores, std::span<const std::uint8_t> labels);
double trapezoid_area(const RocCurve& roc);

// Mean and standard error (population stddev / sqrt(runs)) of per-run AUCs.
AucStat aggregate_aucs(std::span<const double> per_run_aucs);

// Per-weight AUCs sorted ascending, with median and best extracted.
WeightProfile weight_profile(std::vector<double> per_weight_aucs);

double median_of(std::vector<double> values);

}  // namespace pda
