#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace mprad {

// Column-major design matrix (coordinate descent walks columns).
struct DesignMatrix {
    std::size_t n = 0; // rows / samples
    std::size_t p = 0; // columns / features
    std::vector<double> data;

    DesignMatrix() = default;
    DesignMatrix(std::size_t n_, std::size_t p_) : n(n_), p(p_), data(n_ * p_, 0.0) {}

    double at(std::size_t i, std::size_t j) const { return data[j * n + i]; }
    double& at(std::size_t i, std::size_t j) { return data[j * n + i]; }
    const double* col(std::size_t j) const { return data.data() + j * n; }
};

enum class Family { gaussian, binomial };

// objective = loss + lambda * (alpha * ||beta||_1 + (1 - alpha)/2 * ||beta||_2^2)
struct PenaltyConfig {
    double alpha = 0.5;
    double lambda = 0.0;
};

struct Coefficients {
    double intercept = 0.0;
    std::vector<double> beta;
    bool converged = true;
    int cycles = 0;

    std::size_t nonzero_count() const {
        std::size_t k = 0;
        for (double b : beta) k += b != 0.0;
        return k;
    }
};

struct ElasticNetPath {
    double alpha = 0.5;
    Family family = Family::binomial;
    std::vector<double> lambdas;
    std::vector<Coefficients> fits;
};

// lambda_max = max_j |x_j^T (y - ybar)| / (n * alpha), then n_lambda log-spaced
// values down to eps * lambda_max. The binomial form uses the null-model
// working response, which reduces to the same expression.
std::vector<double> lambda_grid(const DesignMatrix& X, const std::vector<double>& y, double alpha,
                                int n_lambda = 100, double eps = 0.01);

// Cyclic coordinate descent for (1/(2n))||y - X beta||^2 + penalty.
// X standardized, y centered, no intercept.
Coefficients fit_gaussian(const DesignMatrix& X, const std::vector<double>& y,
                          const PenaltyConfig& cfg,
                          const std::optional<Coefficients>& warm = std::nullopt);

// IRLS with penalized weighted least-squares inner solves; unpenalized
// intercept; probabilities clamped to [1e-5, 1-1e-5] in the weights.
Coefficients fit_binomial(const DesignMatrix& X, const std::vector<double>& y,
                          const PenaltyConfig& cfg,
                          const std::optional<Coefficients>& warm = std::nullopt);

// Sequential warm-started fits over a descending lambda grid.
ElasticNetPath fit_path(const DesignMatrix& X, const std::vector<double>& y, double alpha,
                        const std::vector<double>& grid, Family family);

// Linear predictor (gaussian) or logistic probability (binomial).
std::vector<double> predict(const Coefficients& c, const DesignMatrix& X, Family family);

// Max KKT violation of the penalized objective at `c` (0 at an exact optimum).
double kkt_residual(const DesignMatrix& X, const std::vector<double>& y, const PenaltyConfig& cfg,
                    const Coefficients& c, Family family);

// Penalized objective value (average loss + penalty); used by tests and the
// debug-mode monotonicity assertion.
double penalized_objective(const DesignMatrix& X, const std::vector<double>& y,
                           const PenaltyConfig& cfg, const Coefficients& c, Family family);

} // namespace mprad
