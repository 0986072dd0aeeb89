#include "mprad/elasticnet.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "mprad/errors.hpp"

namespace mprad {

namespace {

constexpr double kTol = 1e-7;
constexpr int kMaxCycles = 100000;
constexpr int kMaxOuter = 100;
constexpr double kProbClamp = 1e-5;

double soft_threshold(double z, double t) {
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
}

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// One coordinate-descent pass over the given set of columns. For the
// weighted problem `residual` holds the weight-multiplied working residual
// w * (z - eta), which keeps the correlation z_j a plain dot product.
double cd_pass(const DesignMatrix& X, std::vector<double>& residual, std::vector<double>& beta,
               const std::vector<double>& weights, const std::vector<double>& col_moment,
               const PenaltyConfig& cfg, const std::vector<std::size_t>& columns) {
    std::size_t n = X.n;
    double nd = static_cast<double>(n);
    double max_delta = 0.0;
    double l1 = cfg.lambda * cfg.alpha;
    double l2 = cfg.lambda * (1.0 - cfg.alpha);
    for (std::size_t j : columns) {
        const double* xj = X.col(j);
        double z = dot(xj, residual.data(), n) / nd + col_moment[j] * beta[j];
        double denom = col_moment[j] + l2;
        double bnew = denom > 0.0 ? soft_threshold(z, l1) / denom : 0.0;
        double delta = bnew - beta[j];
        if (delta != 0.0) {
            if (weights.empty()) {
                for (std::size_t i = 0; i < n; ++i) residual[i] -= delta * xj[i];
            } else {
                for (std::size_t i = 0; i < n; ++i) residual[i] -= delta * weights[i] * xj[i];
            }
            beta[j] = bnew;
            max_delta = std::max(max_delta, std::fabs(delta));
        }
    }
    return max_delta;
}

std::vector<std::size_t> all_columns(std::size_t p) {
    std::vector<std::size_t> cols(p);
    for (std::size_t j = 0; j < p; ++j) cols[j] = j;
    return cols;
}

std::vector<std::size_t> active_columns(const std::vector<double>& beta) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < beta.size(); ++j)
        if (beta[j] != 0.0) cols.push_back(j);
    return cols;
}

} // namespace

std::vector<double> lambda_grid(const DesignMatrix& X, const std::vector<double>& y, double alpha,
                                int n_lambda, double eps) {
    if (alpha <= 0.0) throw Error("lambda grid needs alpha > 0");
    if (X.n != y.size()) throw DimensionMismatchError();
    double ybar = 0.0;
    for (double v : y) ybar += v;
    ybar /= static_cast<double>(y.size());

    double lambda_max = 0.0;
    for (std::size_t j = 0; j < X.p; ++j) {
        const double* xj = X.col(j);
        double s = 0.0;
        for (std::size_t i = 0; i < X.n; ++i) s += xj[i] * (y[i] - ybar);
        lambda_max = std::max(lambda_max, std::fabs(s));
    }
    lambda_max /= static_cast<double>(X.n) * alpha;
    if (lambda_max <= 0.0) throw ZeroSignalError();
    // tiny headroom so the zero solution survives floating-point rounding in
    // the first coordinate pass
    lambda_max *= 1.0 + 1e-9;

    std::vector<double> grid(static_cast<std::size_t>(n_lambda));
    double log_max = std::log(lambda_max);
    double log_min = std::log(eps * lambda_max);
    for (int k = 0; k < n_lambda; ++k)
        grid[static_cast<std::size_t>(k)] =
            std::exp(log_max + (log_min - log_max) * k / static_cast<double>(n_lambda - 1));
    grid[0] = lambda_max; // exact endpoint
    return grid;
}

Coefficients fit_gaussian(const DesignMatrix& X, const std::vector<double>& y,
                          const PenaltyConfig& cfg, const std::optional<Coefficients>& warm) {
    if (X.n != y.size()) throw DimensionMismatchError();
    std::size_t n = X.n, p = X.p;
    double nd = static_cast<double>(n);

    Coefficients c;
    c.beta.assign(p, 0.0);
    if (warm && warm->beta.size() == p) c.beta = warm->beta;

    std::vector<double> residual = y;
    for (std::size_t j = 0; j < p; ++j)
        if (c.beta[j] != 0.0) {
            const double* xj = X.col(j);
            for (std::size_t i = 0; i < n; ++i) residual[i] -= c.beta[j] * xj[i];
        }

    std::vector<double> moment(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) moment[j] = dot(X.col(j), X.col(j), n) / nd;

    const std::vector<double> no_weights;
    auto full = all_columns(p);
#ifndef NDEBUG
    double prev_obj = penalized_objective(X, y, cfg, c, Family::gaussian);
#endif
    c.converged = false;
    int cycle = 0;
    while (cycle < kMaxCycles) {
        ++cycle;
        double delta = cd_pass(X, residual, c.beta, no_weights, moment, cfg, full);
#ifndef NDEBUG
        double obj = penalized_objective(X, y, cfg, c, Family::gaussian);
        assert(obj <= prev_obj + 1e-10 * (1.0 + std::fabs(prev_obj)));
        prev_obj = obj;
#endif
        if (delta <= kTol) {
            c.converged = true;
            break;
        }
        // iterate the active set until stable, then re-check all columns
        auto active = active_columns(c.beta);
        while (!active.empty() && cycle < kMaxCycles) {
            ++cycle;
            if (cd_pass(X, residual, c.beta, no_weights, moment, cfg, active) <= kTol) break;
        }
    }
    c.cycles = cycle;
    return c;
}

Coefficients fit_binomial(const DesignMatrix& X, const std::vector<double>& y,
                          const PenaltyConfig& cfg, const std::optional<Coefficients>& warm) {
    if (X.n != y.size()) throw DimensionMismatchError();
    std::size_t n = X.n, p = X.p;
    double nd = static_cast<double>(n);

    double ybar = 0.0;
    for (double v : y) ybar += v;
    ybar /= nd;
    if (ybar <= 0.0 || ybar >= 1.0) throw SingleClassError();

    Coefficients c;
    c.beta.assign(p, 0.0);
    c.intercept = std::log(ybar / (1.0 - ybar));
    if (warm && warm->beta.size() == p) {
        c.beta = warm->beta;
        c.intercept = warm->intercept;
    }

    std::vector<double> eta(n), prob(n), w(n), residual(n);
    c.converged = false;
    int total_cycles = 0;

    for (int outer = 0; outer < kMaxOuter; ++outer) {
        // working response around the current linear predictor
        std::fill(eta.begin(), eta.end(), c.intercept);
        for (std::size_t j = 0; j < p; ++j) {
            if (c.beta[j] == 0.0) continue;
            const double* xj = X.col(j);
            for (std::size_t i = 0; i < n; ++i) eta[i] += c.beta[j] * xj[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            double pr = std::clamp(sigmoid(eta[i]), kProbClamp, 1.0 - kProbClamp);
            prob[i] = pr;
            w[i] = pr * (1.0 - pr);
            // weighted residual of the working response: w * (z - eta) = y - p
            residual[i] = y[i] - pr;
        }

        std::vector<double> moment(p, 0.0);
        for (std::size_t j = 0; j < p; ++j) {
            const double* xj = X.col(j);
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += w[i] * xj[i] * xj[i];
            moment[j] = s / nd;
        }
        double wsum = 0.0;
        for (std::size_t i = 0; i < n; ++i) wsum += w[i];

        double outer_delta = 0.0;
        auto full = all_columns(p);
        bool inner_converged = false;
        for (int inner = 0; inner < 10000 && !inner_converged; ++inner) {
            ++total_cycles;
            // unpenalized intercept step on the weighted residual
            double num = 0.0;
            for (std::size_t i = 0; i < n; ++i) num += residual[i];
            double dint = num / wsum;
            c.intercept += dint;
            for (std::size_t i = 0; i < n; ++i) residual[i] -= dint * w[i];
            double delta = std::fabs(dint);

            delta = std::max(delta, cd_pass(X, residual, c.beta, w, moment, cfg, full));
            outer_delta = std::max(outer_delta, delta);
            if (delta <= kTol) {
                inner_converged = true;
                break;
            }
            auto active = active_columns(c.beta);
            for (int a = 0; a < 10000 && !active.empty(); ++a) {
                ++total_cycles;
                if (cd_pass(X, residual, c.beta, w, moment, cfg, active) <= kTol) break;
            }
        }

        if (outer_delta <= kTol) {
            c.converged = true;
            break;
        }
    }
    c.cycles = total_cycles;
    return c;
}

ElasticNetPath fit_path(const DesignMatrix& X, const std::vector<double>& y, double alpha,
                        const std::vector<double>& grid, Family family) {
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (grid[k] >= grid[k - 1]) throw Error("lambda grid must be strictly descending");

    ElasticNetPath path;
    path.alpha = alpha;
    path.family = family;
    path.lambdas = grid;
    std::optional<Coefficients> warm;
    for (double lambda : grid) {
        PenaltyConfig cfg{alpha, lambda};
        Coefficients c = family == Family::gaussian ? fit_gaussian(X, y, cfg, warm)
                                                    : fit_binomial(X, y, cfg, warm);
        warm = c;
        path.fits.push_back(std::move(c));
    }
    return path;
}

namespace {

std::vector<double> linear_predictor(const Coefficients& c, const DesignMatrix& X) {
    std::vector<double> eta(X.n, c.intercept);
    for (std::size_t j = 0; j < X.p; ++j) {
        if (c.beta[j] == 0.0) continue;
        const double* xj = X.col(j);
        for (std::size_t i = 0; i < X.n; ++i) eta[i] += c.beta[j] * xj[i];
    }
    return eta;
}

} // namespace

std::vector<double> predict(const Coefficients& c, const DesignMatrix& X, Family family) {
    if (c.beta.size() != X.p) throw DimensionMismatchError();
    std::vector<double> out = linear_predictor(c, X);
    if (family == Family::binomial)
        for (double& v : out) v = sigmoid(v);
    return out;
}

double penalized_objective(const DesignMatrix& X, const std::vector<double>& y,
                           const PenaltyConfig& cfg, const Coefficients& c, Family family) {
    std::size_t n = X.n;
    double nd = static_cast<double>(n);
    std::vector<double> eta = linear_predictor(c, X);
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (family == Family::gaussian) {
            double r = y[i] - eta[i];
            loss += 0.5 * r * r;
        } else {
            // -log-likelihood: log(1 + e^eta) - y*eta, stable form
            double a = std::max(eta[i], 0.0);
            loss += a + std::log(std::exp(-a) + std::exp(eta[i] - a)) - y[i] * eta[i];
        }
    }
    loss /= nd;
    double l1 = 0.0, l2 = 0.0;
    for (double b : c.beta) {
        l1 += std::fabs(b);
        l2 += b * b;
    }
    return loss + cfg.lambda * (cfg.alpha * l1 + 0.5 * (1.0 - cfg.alpha) * l2);
}

double kkt_residual(const DesignMatrix& X, const std::vector<double>& y, const PenaltyConfig& cfg,
                    const Coefficients& c, Family family) {
    std::size_t n = X.n, p = X.p;
    double nd = static_cast<double>(n);
    // gradient of the average loss wrt beta_j is (1/n) x_j^T g with
    // g = eta - y for gaussian, sigma(eta) - y for binomial
    std::vector<double> g = linear_predictor(c, X);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = family == Family::gaussian ? g[i] - y[i] : sigmoid(g[i]) - y[i];
    double worst = 0.0;
    if (family == Family::binomial) {
        double gi = 0.0;
        for (double v : g) gi += v;
        worst = std::fabs(gi / nd); // unpenalized intercept stationarity
    }
    double l1 = cfg.lambda * cfg.alpha;
    double l2 = cfg.lambda * (1.0 - cfg.alpha);
    for (std::size_t j = 0; j < p; ++j) {
        double grad = dot(X.col(j), g.data(), n) / nd + l2 * c.beta[j];
        double viol;
        if (c.beta[j] > 0.0)
            viol = std::fabs(grad + l1);
        else if (c.beta[j] < 0.0)
            viol = std::fabs(grad - l1);
        else
            viol = std::max(0.0, std::fabs(grad) - l1);
        worst = std::max(worst, viol);
    }
    return worst;
}

} // namespace mprad
