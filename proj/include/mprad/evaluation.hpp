#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mprad/elasticnet.hpp"
#include "mprad/feature_matrix.hpp"

namespace mprad {

struct FoldAssignment {
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<int> fold_of; // per patient
};

// Seeded per-class shuffle dealt round-robin, so per-class fold counts differ
// by at most one.
FoldAssignment stratified_folds(const std::vector<int>& labels, int k, std::uint64_t seed);

struct RocCurve {
    std::vector<double> fpr;
    std::vector<double> tpr;
    std::vector<double> thresholds; // predict positive iff score >= threshold
    // integer counts kept alongside the rates so the trapezoid can be summed
    // exactly
    std::vector<std::size_t> fp_count;
    std::vector<std::size_t> tp_count;
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
};

// Thresholds swept over distinct scores descending; tied scores collapse into
// a single step.
RocCurve roc_curve(const std::vector<double>& scores, const std::vector<int>& labels);

// Trapezoidal area; equals the Mann-Whitney statistic (ties count 1/2) of the
// generating scores.
double auc(const RocCurve& curve);

struct OperatingPoint {
    double sensitivity = 0.0;
    double specificity = 0.0;
    double threshold = 0.0;
};

// Maximizes Youden's J = sensitivity + specificity - 1; ties break toward
// higher sensitivity.
OperatingPoint youden_point(const RocCurve& curve);

enum class NormalizationMode {
    fold_local, // train-fold statistics only (default, leak-free)
    paper       // normalize the full matrix once before splitting
};

struct CVConfig {
    double alpha = 0.5;
    int k = 10;
    std::uint64_t seed = 1;
    int n_lambda = 100;
    double eps = 0.01;
    NormalizationMode normalization = NormalizationMode::fold_local;
    std::vector<double> fixed_grid; // empty = derive from the full data
};

struct CVResult {
    std::vector<std::string> feature_names; // globally retained columns
    std::vector<double> lambdas;
    std::vector<double> auc_by_lambda;
    std::size_t best_index = 0;
    double best_lambda = 0.0;
    double best_auc = 0.0;
    std::vector<double> pooled_scores; // out-of-fold scores at best lambda
    std::vector<int> labels;
    RocCurve roc;
    OperatingPoint operating_point;
    std::vector<Coefficients> fold_coefficients; // at best lambda, standardized scale
    FoldAssignment folds;
    std::size_t nonzero_union = 0;
    double nonzero_fold_mean = 0.0;
    std::vector<std::string> flags;
};

// Stratified k-fold CV of the binomial elastic net over one shared lambda
// grid; normalization is fit on training rows only (or once globally in
// paper mode).
CVResult cv_evaluate(const FeatureMatrix& raw, const CVConfig& cfg);

struct FeatureRanking {
    std::vector<std::string> names;
    std::vector<double> mean_coefficient; // across folds, standardized scale
    std::vector<int> rank;                // 1 = largest |mean|
    std::vector<double> frequency;        // fraction of folds with nonzero coef
    std::vector<std::size_t> digest;      // top-ranked selected features
};

FeatureRanking rank_features(const CVResult& cv, std::size_t digest_size = 20);

struct TraceRow {
    double lambda;
    std::string feature;
    double coefficient;
};

// Long-format (lambda, feature, coefficient) table of all nonzero path
// entries, for external plotting.
std::vector<TraceRow> trace_data(const ElasticNetPath& path, const std::vector<std::string>& names);

} // namespace mprad
