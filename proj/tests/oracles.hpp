#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they check.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mprad/image.hpp"

namespace oracles {

// per-pixel even-odd crossing test (independent of the scanline fill)
inline bool point_in_polygon(double px, double py, const mprad::RoiPolygon& poly) {
    bool inside = false;
    const auto& v = poly.vertices;
    std::size_t n = v.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        double xi = v[i].first, yi = v[i].second;
        double xj = v[j].first, yj = v[j].second;
        if ((yi > py) != (yj > py)) {
            double xc = xj + (py - yj) / (yi - yj) * (xi - xj);
            if (px < xc) inside = !inside;
        }
    }
    return inside;
}

// boundary pixels = true pixels with at least one false/outside 4-neighbor
inline std::size_t count_boundary_pixels(const mprad::RoiMask& m) {
    std::size_t count = 0;
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x) {
            if (!m.at(x, y)) continue;
            bool boundary = false;
            const int dx[] = {1, -1, 0, 0};
            const int dy[] = {0, 0, 1, -1};
            for (int k = 0; k < 4 && !boundary; ++k) {
                int nx = x + dx[k], ny = y + dy[k];
                if (!m.in_bounds(nx, ny) || !m.at(nx, ny)) boundary = true;
            }
            count += boundary;
        }
    return count;
}

// dense least squares via normal equations + Gaussian elimination
inline std::vector<double> least_squares(const std::vector<std::vector<double>>& X,
                                         const std::vector<double>& y) {
    std::size_t n = X.size(), p = X[0].size();
    std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = 0; k < p; ++k)
            for (std::size_t i = 0; i < n; ++i) a[j][k] += X[i][j] * X[i][k];
        for (std::size_t i = 0; i < n; ++i) a[j][p] += X[i][j] * y[i];
    }
    for (std::size_t col = 0; col < p; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < p; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        if (std::fabs(a[col][col]) < 1e-12) throw std::runtime_error("singular system");
        for (std::size_t r = 0; r < p; ++r) {
            if (r == col) continue;
            double f = a[r][col] / a[col][col];
            for (std::size_t k = col; k <= p; ++k) a[r][k] -= f * a[col][k];
        }
    }
    std::vector<double> beta(p);
    for (std::size_t j = 0; j < p; ++j) beta[j] = a[j][p] / a[j][j];
    return beta;
}

// golden-section search for the minimum of a convex scalar function
inline double golden_min(const std::function<double(double)>& f, double lo, double hi,
                         double tol = 1e-10) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// generic convex minimizer: cyclic exact coordinate minimization by golden
// section over the full parameter vector (intercept first). The objective is
// evaluated as a black box, so this shares nothing with the coordinate
// descent implementation under test.
inline std::vector<double> coordinate_golden_minimize(
    const std::function<double(const std::vector<double>&)>& objective, std::size_t dims,
    double span = 20.0, int sweeps = 400, double tol = 1e-11) {
    std::vector<double> x(dims, 0.0);
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        double moved = 0.0;
        for (std::size_t j = 0; j < dims; ++j) {
            double old = x[j];
            auto f = [&](double t) {
                std::vector<double> probe = x;
                probe[j] = t;
                return objective(probe);
            };
            x[j] = golden_min(f, old - span, old + span);
            moved = std::max(moved, std::fabs(x[j] - old));
        }
        if (moved < tol) break;
    }
    return x;
}

// O(n^2) Mann-Whitney pair counting, ties worth 1/2
inline double auc_pair_counting(const std::vector<double>& scores, const std::vector<int>& labels) {
    double num = 0.0;
    std::size_t n_pos = 0, n_neg = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!labels[i]) continue;
        ++n_pos;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j]) continue;
            if (scores[i] > scores[j])
                num += 1.0;
            else if (scores[i] == scores[j])
                num += 0.5;
        }
    }
    for (int l : labels) n_neg += l == 0;
    return num / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

inline mprad::RoiMask disc_mask(int size, double cx, double cy, double r) {
    mprad::RoiMask m(size, size);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x)
            if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) m.set(x, y);
    return m;
}

inline mprad::RoiMask ellipse_mask(int size, double cx, double cy, double a, double b) {
    mprad::RoiMask m(size, size);
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
            double u = (x - cx) / a, v = (y - cy) / b;
            if (u * u + v * v <= 1.0) m.set(x, y);
        }
    return m;
}

inline mprad::RoiMask rect_mask(int size, int x0, int y0, int x1, int y1) {
    mprad::RoiMask m(size, size);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) m.set(x, y);
    return m;
}

} // namespace oracles
