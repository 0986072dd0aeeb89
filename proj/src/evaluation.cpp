#include "mprad/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mprad/errors.hpp"
#include "mprad/rng.hpp"

namespace mprad {

FoldAssignment stratified_folds(const std::vector<int>& labels, int k, std::uint64_t seed) {
    std::size_t n = labels.size();
    if (k < 2 || static_cast<std::size_t>(k) > n) throw Error("fold count must be in [2, n]");
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < n; ++i) (labels[i] ? pos : neg).push_back(i);
    if (pos.empty() || neg.empty()) throw SingleClassError();

    FoldAssignment fa;
    fa.k = k;
    fa.seed = seed;
    fa.fold_of.assign(n, -1);
    Rng rng(seed);
    std::size_t deal = 0; // carried across classes so small classes spread out
    for (auto* cls : {&pos, &neg}) {
        rng.shuffle(*cls);
        for (std::size_t t = 0; t < cls->size(); ++t, ++deal)
            fa.fold_of[(*cls)[t]] = static_cast<int>(deal % static_cast<std::size_t>(k));
    }
    return fa;
}

RocCurve roc_curve(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size()) throw DimensionMismatchError();
    std::size_t n = scores.size();
    std::size_t n_pos = 0;
    for (int l : labels) n_pos += l != 0;
    std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) throw SingleClassError();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve c;
    c.n_pos = n_pos;
    c.n_neg = n_neg;
    c.fp_count.push_back(0);
    c.tp_count.push_back(0);
    c.thresholds.push_back(std::numeric_limits<double>::infinity());

    std::size_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < n) {
        double s = scores[order[i]];
        // consume the whole tie group as one step
        while (i < n && scores[order[i]] == s) {
            if (labels[order[i]])
                ++tp;
            else
                ++fp;
            ++i;
        }
        c.fp_count.push_back(fp);
        c.tp_count.push_back(tp);
        c.thresholds.push_back(s);
    }
    for (std::size_t kk = 0; kk < c.fp_count.size(); ++kk) {
        c.fpr.push_back(static_cast<double>(c.fp_count[kk]) / static_cast<double>(n_neg));
        c.tpr.push_back(static_cast<double>(c.tp_count[kk]) / static_cast<double>(n_pos));
    }
    return c;
}

double auc(const RocCurve& curve) {
    // integer trapezoid: sum of (FP_{k+1}-FP_k) * (TP_k + TP_{k+1}) equals
    // 2*concordant + ties, so this matches Mann-Whitney pair counting exactly
    unsigned long long num = 0;
    for (std::size_t k = 0; k + 1 < curve.fp_count.size(); ++k) {
        unsigned long long dfp = curve.fp_count[k + 1] - curve.fp_count[k];
        num += dfp * (curve.tp_count[k] + curve.tp_count[k + 1]);
    }
    return static_cast<double>(num) /
           (2.0 * static_cast<double>(curve.n_pos) * static_cast<double>(curve.n_neg));
}

OperatingPoint youden_point(const RocCurve& curve) {
    OperatingPoint best;
    double best_j = -2.0;
    for (std::size_t k = 0; k < curve.fpr.size(); ++k) {
        double sens = curve.tpr[k];
        double spec = 1.0 - curve.fpr[k];
        double j = sens + spec - 1.0;
        if (j > best_j || (j == best_j && sens > best.sensitivity)) {
            best_j = j;
            best.sensitivity = sens;
            best.specificity = spec;
            best.threshold = curve.thresholds[k];
        }
    }
    return best;
}

namespace {

struct FoldNorm {
    std::vector<double> mean;
    std::vector<double> std;
};

FoldNorm train_statistics(const FeatureMatrix& m, const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) {
    FoldNorm fn;
    fn.mean.resize(cols.size());
    fn.std.resize(cols.size());
    double n = static_cast<double>(rows.size());
    for (std::size_t jj = 0; jj < cols.size(); ++jj) {
        double mean = 0.0;
        double lo = m.at(rows[0], cols[jj]), hi = lo;
        for (std::size_t i : rows) {
            double v = m.at(i, cols[jj]);
            mean += v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        mean /= n;
        double ss = 0.0;
        for (std::size_t i : rows) {
            double d = m.at(i, cols[jj]) - mean;
            ss += d * d;
        }
        double sd = std::sqrt(ss / (n - 1.0));
        if (lo == hi) {
            // constant within the training rows: center exactly and keep unit
            // scale so the column never enters the model
            mean = lo;
            sd = 0.0;
        }
        fn.mean[jj] = mean;
        fn.std[jj] = sd > 0.0 ? sd : 1.0;
    }
    return fn;
}

DesignMatrix standardized_rows(const FeatureMatrix& m, const std::vector<std::size_t>& rows,
                               const std::vector<std::size_t>& cols, const FoldNorm& fn) {
    DesignMatrix X(rows.size(), cols.size());
    for (std::size_t jj = 0; jj < cols.size(); ++jj)
        for (std::size_t ii = 0; ii < rows.size(); ++ii)
            X.at(ii, jj) = (m.at(rows[ii], cols[jj]) - fn.mean[jj]) / fn.std[jj];
    return X;
}

} // namespace

CVResult cv_evaluate(const FeatureMatrix& raw, const CVConfig& cfg) {
    std::size_t n = raw.rows();
    std::vector<int> labels = raw.labels;
    std::size_t n_pos = 0;
    for (int l : labels) n_pos += l != 0;
    if (n_pos == 0 || n_pos == n) throw SingleClassError();
    if (std::min(n_pos, n - n_pos) < static_cast<std::size_t>(cfg.k)) throw ClassTooSmallError();

    // globally retained columns: nonzero variance over the full data
    std::vector<std::size_t> cols;
    std::vector<std::string> names;
    {
        for (std::size_t j = 0; j < raw.cols(); ++j) {
            double lo = raw.at(0, j), hi = lo;
            for (std::size_t i = 0; i < n; ++i) {
                lo = std::min(lo, raw.at(i, j));
                hi = std::max(hi, raw.at(i, j));
            }
            if (lo != hi) {
                cols.push_back(j);
                names.push_back(raw.column_names[j]);
            }
        }
    }
    if (cols.empty()) throw ZeroSignalError("all columns are constant");

    std::vector<std::size_t> all_rows(n);
    std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
    FoldNorm global_norm = train_statistics(raw, all_rows, cols);
    DesignMatrix X_full = standardized_rows(raw, all_rows, cols, global_norm);

    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = labels[i] ? 1.0 : 0.0;

    // one shared grid from the full standardized data
    std::vector<double> grid = cfg.fixed_grid.empty()
                                   ? lambda_grid(X_full, y, cfg.alpha, cfg.n_lambda, cfg.eps)
                                   : cfg.fixed_grid;

    CVResult result;
    result.feature_names = names;
    result.lambdas = grid;
    result.labels = labels;
    result.folds = stratified_folds(labels, cfg.k, cfg.seed);

    std::size_t n_lambda = grid.size();
    std::vector<std::vector<double>> pooled(n_lambda, std::vector<double>(n, 0.0));
    std::vector<std::vector<Coefficients>> fold_paths(static_cast<std::size_t>(cfg.k));

    for (int f = 0; f < cfg.k; ++f) {
        std::vector<std::size_t> train_rows, test_rows;
        for (std::size_t i = 0; i < n; ++i)
            (result.folds.fold_of[i] == f ? test_rows : train_rows).push_back(i);
        if (test_rows.empty()) continue;

        FoldNorm fn = cfg.normalization == NormalizationMode::paper
                          ? global_norm
                          : train_statistics(raw, train_rows, cols);
        DesignMatrix X_train = standardized_rows(raw, train_rows, cols, fn);
        DesignMatrix X_test = standardized_rows(raw, test_rows, cols, fn);
        std::vector<double> y_train;
        y_train.reserve(train_rows.size());
        for (std::size_t i : train_rows) y_train.push_back(y[i]);

        ElasticNetPath path = fit_path(X_train, y_train, cfg.alpha, grid, Family::binomial);
        for (std::size_t l = 0; l < n_lambda; ++l) {
            if (!path.fits[l].converged)
                result.flags.push_back("fold " + std::to_string(f) + " lambda " +
                                       std::to_string(grid[l]) + " not converged");
            std::vector<double> s = predict(path.fits[l], X_test, Family::binomial);
            for (std::size_t t = 0; t < test_rows.size(); ++t) pooled[l][test_rows[t]] = s[t];
        }
        fold_paths[static_cast<std::size_t>(f)] = std::move(path.fits);
    }

    result.auc_by_lambda.resize(n_lambda);
    for (std::size_t l = 0; l < n_lambda; ++l)
        result.auc_by_lambda[l] = auc(roc_curve(pooled[l], labels));

    // ties break toward the larger lambda (earlier grid index)
    std::size_t best = 0;
    for (std::size_t l = 1; l < n_lambda; ++l)
        if (result.auc_by_lambda[l] > result.auc_by_lambda[best]) best = l;
    result.best_index = best;
    result.best_lambda = grid[best];
    result.best_auc = result.auc_by_lambda[best];
    result.pooled_scores = pooled[best];
    result.roc = roc_curve(result.pooled_scores, labels);
    result.operating_point = youden_point(result.roc);

    std::vector<std::uint8_t> ever_nonzero(cols.size(), 0);
    double nonzero_sum = 0.0;
    for (auto& fits : fold_paths) {
        if (fits.empty()) continue;
        Coefficients& c = fits[best];
        nonzero_sum += static_cast<double>(c.nonzero_count());
        for (std::size_t j = 0; j < c.beta.size(); ++j)
            if (c.beta[j] != 0.0) ever_nonzero[j] = 1;
        result.fold_coefficients.push_back(std::move(c));
    }
    result.nonzero_fold_mean = nonzero_sum / static_cast<double>(result.fold_coefficients.size());
    for (auto b : ever_nonzero) result.nonzero_union += b != 0;
    return result;
}

FeatureRanking rank_features(const CVResult& cv, std::size_t digest_size) {
    std::size_t p = cv.feature_names.size();
    std::size_t k = cv.fold_coefficients.size();
    FeatureRanking r;
    r.names = cv.feature_names;
    r.mean_coefficient.assign(p, 0.0);
    r.frequency.assign(p, 0.0);
    for (const auto& c : cv.fold_coefficients)
        for (std::size_t j = 0; j < p; ++j) {
            r.mean_coefficient[j] += c.beta[j];
            if (c.beta[j] != 0.0) r.frequency[j] += 1.0;
        }
    for (std::size_t j = 0; j < p; ++j) {
        r.mean_coefficient[j] /= static_cast<double>(k);
        r.frequency[j] /= static_cast<double>(k);
    }

    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::fabs(r.mean_coefficient[a]) > std::fabs(r.mean_coefficient[b]);
    });
    r.rank.assign(p, 0);
    for (std::size_t pos = 0; pos < p; ++pos) r.rank[order[pos]] = static_cast<int>(pos + 1);

    for (std::size_t pos = 0; pos < p && r.digest.size() < digest_size; ++pos) {
        std::size_t j = order[pos];
        if (r.frequency[j] > 0.0 && r.mean_coefficient[j] != 0.0) r.digest.push_back(j);
    }
    return r;
}

std::vector<TraceRow> trace_data(const ElasticNetPath& path,
                                 const std::vector<std::string>& names) {
    std::vector<TraceRow> rows;
    for (std::size_t l = 0; l < path.lambdas.size(); ++l) {
        const auto& beta = path.fits[l].beta;
        if (beta.size() != names.size()) throw DimensionMismatchError();
        for (std::size_t j = 0; j < beta.size(); ++j)
            if (beta[j] != 0.0) rows.push_back({path.lambdas[l], names[j], beta[j]});
    }
    return rows;
}

} // namespace mprad
