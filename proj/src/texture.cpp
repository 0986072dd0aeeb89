#include "mprad/texture.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mprad/errors.hpp"
#include "mprad/firstorder.hpp"
#include "mprad/wavelet.hpp"

namespace mprad {

namespace {

constexpr double kPi = 3.14159265358979323846;

double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

double abs_hist_entropy(const std::vector<double>& coeffs) {
    if (coeffs.empty()) return 0.0;
    double mx = 0.0;
    for (double c : coeffs) mx = std::max(mx, std::fabs(c));
    if (mx <= 0.0) return 0.0;
    std::vector<double> a;
    a.reserve(coeffs.size());
    for (double c : coeffs) a.push_back(std::fabs(c));
    return histogram_entropy(a, 32, 0.0, mx);
}

double mean_square(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

} // namespace

GLCM glcm_matrix(const QuantizedPatch& q, std::pair<int, int> offset) {
    auto [dx, dy] = offset;
    if (dx == 0 && dy == 0) throw Error("GLCM offset must be nonzero");
    const RoiMask& m = q.mask;
    GLCM out;
    out.levels = q.levels;
    out.p.assign(static_cast<std::size_t>(q.levels) * q.levels, 0.0);

    double total = 0.0;
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x) {
            if (!m.at(x, y)) continue;
            int nx = x + dx, ny = y + dy;
            if (!m.in_bounds(nx, ny) || !m.at(nx, ny)) continue;
            int a = q.code(x, y), b = q.code(nx, ny);
            // symmetric accumulation covers the negated offset
            out.p[static_cast<std::size_t>(a) * q.levels + b] += 1.0;
            out.p[static_cast<std::size_t>(b) * q.levels + a] += 1.0;
            total += 2.0;
        }
    if (total == 0.0) throw NoPairsError();
    for (double& v : out.p) v /= total;
    return out;
}

std::vector<double> haralick_stats(const GLCM& m) {
    int g = m.levels;
    std::vector<double> px(g, 0.0), py(g, 0.0);
    std::vector<double> pxy_sum(2 * g - 1, 0.0);  // i + j
    std::vector<double> pxy_diff(g, 0.0);         // |i - j|

    double energy = 0.0, contrast = 0.0, idm = 0.0, entropy = 0.0, cross = 0.0;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            double p = m.at(i, j);
            px[i] += p;
            py[j] += p;
            pxy_sum[i + j] += p;
            pxy_diff[std::abs(i - j)] += p;
            energy += p * p;
            contrast += static_cast<double>((i - j) * (i - j)) * p;
            idm += p / (1.0 + static_cast<double>((i - j) * (i - j)));
            entropy -= xlogx(p);
            cross += static_cast<double>(i) * j * p;
        }

    double mu_x = 0.0, mu_y = 0.0;
    for (int i = 0; i < g; ++i) {
        mu_x += i * px[i];
        mu_y += i * py[i];
    }
    double var_x = 0.0, var_y = 0.0;
    for (int i = 0; i < g; ++i) {
        var_x += (i - mu_x) * (i - mu_x) * px[i];
        var_y += (i - mu_y) * (i - mu_y) * py[i];
    }
    double sd_x = std::sqrt(var_x), sd_y = std::sqrt(var_y);
    double correlation = (sd_x > 0.0 && sd_y > 0.0) ? (cross - mu_x * mu_y) / (sd_x * sd_y) : 0.0;

    // sum of squares variance about the row-marginal mean
    double ssq_var = 0.0;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) ssq_var += (i - mu_x) * (i - mu_x) * m.at(i, j);

    double sum_avg = 0.0;
    for (int k = 0; k < 2 * g - 1; ++k) sum_avg += k * pxy_sum[k];
    double sum_var = 0.0, sum_entropy = 0.0;
    for (int k = 0; k < 2 * g - 1; ++k) {
        sum_var += (k - sum_avg) * (k - sum_avg) * pxy_sum[k];
        sum_entropy -= xlogx(pxy_sum[k]);
    }

    double diff_avg = 0.0;
    for (int k = 0; k < g; ++k) diff_avg += k * pxy_diff[k];
    double diff_var = 0.0, diff_entropy = 0.0;
    for (int k = 0; k < g; ++k) {
        diff_var += (k - diff_avg) * (k - diff_avg) * pxy_diff[k];
        diff_entropy -= xlogx(pxy_diff[k]);
    }

    // information measures of correlation
    double hx = 0.0, hy = 0.0;
    for (int i = 0; i < g; ++i) {
        hx -= xlogx(px[i]);
        hy -= xlogx(py[i]);
    }
    double hxy1 = 0.0, hxy2 = 0.0;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            double pp = px[i] * py[j];
            if (pp > 0.0) {
                hxy1 -= m.at(i, j) * std::log(pp);
                hxy2 -= xlogx(pp);
            }
        }
    double hmax = std::max(hx, hy);
    double imc1 = hmax > 0.0 ? (entropy - hxy1) / hmax : 0.0;
    double imc2 = std::sqrt(std::max(0.0, 1.0 - std::exp(-2.0 * (hxy2 - entropy))));

    return {energy,  contrast, correlation, ssq_var,  idm,          sum_avg,      sum_var,
            sum_entropy, entropy, diff_var,   diff_entropy, imc1, imc2};
}

namespace {

const char* kHaralickNames[13] = {"energy",      "contrast",     "correlation",
                                  "variance",    "idm",          "sum-average",
                                  "sum-variance", "sum-entropy", "entropy",
                                  "difference-variance", "difference-entropy", "imc1", "imc2"};

// direction angle -> unit offset, y down; 45/135 read in the y-up convention
std::pair<int, int> angle_offset(int angle_deg) {
    switch (angle_deg) {
        case 0: return {1, 0};
        case 45: return {1, -1};
        case 90: return {0, -1};
        default: return {-1, -1}; // 135
    }
}

} // namespace

FeatureGroup haralick_features(const QuantizedPatch& q) {
    FeatureGroup g;
    for (int dist : {1, 2}) {
        for (int angle : {0, 45, 90, 135}) {
            auto [ux, uy] = angle_offset(angle);
            std::string prefix =
                "GLCM-d" + std::to_string(dist) + "-a" + std::to_string(angle) + "-";
            std::vector<double> stats;
            bool flagged = false;
            try {
                GLCM m = glcm_matrix(q, {ux * dist, uy * dist});
                stats = haralick_stats(m);
            } catch (const NoPairsError&) {
                // uniform fallback keeps the feature vector rectangular
                GLCM m;
                m.levels = q.levels;
                m.p.assign(static_cast<std::size_t>(q.levels) * q.levels,
                           1.0 / (static_cast<double>(q.levels) * q.levels));
                stats = haralick_stats(m);
                flagged = true;
            }
            for (int s = 0; s < 13; ++s) g.add(prefix + kHaralickNames[s], stats[s], flagged);
        }
    }
    return g;
}

const GaborBank& GaborBank::standard() {
    static const GaborBank bank = [] {
        GaborBank b;
        const double bandwidth = 1.0;
        const double gamma = 0.5;
        double sigma_factor =
            (1.0 / kPi) * std::sqrt(std::log(2.0) / 2.0) *
            (std::pow(2.0, bandwidth) + 1.0) / (std::pow(2.0, bandwidth) - 1.0);
        for (double lambda : {2.0, 4.0, 8.0}) {
            double sigma = sigma_factor * lambda;
            int half = static_cast<int>(std::ceil(2.5 * sigma / gamma));
            for (int angle : {0, 45, 90, 135}) {
                double theta = angle * kPi / 180.0;
                Kernel k;
                k.wavelength = lambda;
                k.angle_deg = angle;
                k.half = half;
                int n = 2 * half + 1;
                k.real.resize(static_cast<std::size_t>(n) * n);
                k.imag.resize(k.real.size());
                double sum_real = 0.0;
                for (int dy = -half; dy <= half; ++dy)
                    for (int dx = -half; dx <= half; ++dx) {
                        double xr = dx * std::cos(theta) + dy * std::sin(theta);
                        double yr = -dx * std::sin(theta) + dy * std::cos(theta);
                        double env = std::exp(-(xr * xr + gamma * gamma * yr * yr) /
                                              (2.0 * sigma * sigma));
                        double phase = 2.0 * kPi * xr / lambda;
                        std::size_t idx =
                            static_cast<std::size_t>(dy + half) * n + (dx + half);
                        k.real[idx] = env * std::cos(phase);
                        k.imag[idx] = env * std::sin(phase);
                        sum_real += k.real[idx];
                    }
                // subtract the DC response so constant regions map to zero
                double mean = sum_real / static_cast<double>(k.real.size());
                for (double& v : k.real) v -= mean;
                b.kernels.push_back(std::move(k));
            }
        }
        return b;
    }();
    return bank;
}

FeatureGroup gabor_features(const Image2D& img, const RoiMask& mask, const GaborBank& bank) {
    if (mask.area() == 0) throw EmptyRoiError();

    std::vector<std::pair<int, int>> pixels;
    pixels.reserve(mask.area());
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(x, y)) pixels.push_back({x, y});

    FeatureGroup g;
    std::vector<double> mag(pixels.size());
    for (const auto& k : bank.kernels) {
        int n = 2 * k.half + 1;
        for (std::size_t p = 0; p < pixels.size(); ++p) {
            auto [cx, cy] = pixels[p];
            double re = 0.0, im = 0.0;
            for (int dy = -k.half; dy <= k.half; ++dy) {
                int sy = std::clamp(cy + dy, 0, img.height - 1);
                const double* row = &img.data[static_cast<std::size_t>(sy) * img.width];
                const double* krow_r = &k.real[static_cast<std::size_t>(dy + k.half) * n];
                const double* krow_i = &k.imag[static_cast<std::size_t>(dy + k.half) * n];
                for (int dx = -k.half; dx <= k.half; ++dx) {
                    double v = row[std::clamp(cx + dx, 0, img.width - 1)];
                    re += krow_r[dx + k.half] * v;
                    im += krow_i[dx + k.half] * v;
                }
            }
            mag[p] = std::sqrt(re * re + im * im);
        }
        std::string prefix = "Gabor-w" + std::to_string(static_cast<int>(k.wavelength)) + "-a" +
                             std::to_string(k.angle_deg) + "-";
        double m = mean_of(mag);
        g.add(prefix + "mean", m);
        g.add(prefix + "std", stddev_pop(mag));
        g.add(prefix + "energy", mean_square(mag));
        g.add(prefix + "entropy", abs_hist_entropy(mag));
    }
    return g;
}

RunLengthMatrix rlm_matrix(const QuantizedPatch& q, std::pair<int, int> direction) {
    const RoiMask& m = q.mask;
    auto [dx, dy] = direction;
    RunLengthMatrix out;
    out.levels = q.levels;
    out.max_run = std::max(m.width, m.height);
    out.r.assign(static_cast<std::size_t>(out.levels) * out.max_run, 0.0);

    auto record = [&](int code, int len) {
        if (len <= 0) return;
        len = std::min(len, out.max_run);
        out.r[static_cast<std::size_t>(code) * out.max_run + (len - 1)] += 1.0;
    };

    // walk every line parallel to `direction`, starting from pixels whose
    // predecessor is outside the raster
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x) {
            if (m.in_bounds(x - dx, y - dy)) continue;
            int cur_code = -1, run = 0;
            int px = x, py = y;
            while (m.in_bounds(px, py)) {
                if (m.at(px, py)) {
                    int c = q.code(px, py);
                    if (c == cur_code) {
                        ++run;
                    } else {
                        record(cur_code, run);
                        cur_code = c;
                        run = 1;
                    }
                } else {
                    record(cur_code, run);
                    cur_code = -1;
                    run = 0;
                }
                px += dx;
                py += dy;
            }
            record(cur_code, run);
        }
    return out;
}

namespace {

const char* kRlmNames[11] = {"sre", "lre", "gln", "rln", "rp", "lgre",
                             "hgre", "srlge", "srhge", "lrlge", "lrhge"};

std::array<double, 11> rlm_stats(const RunLengthMatrix& m, double n_pixels) {
    double n_runs = 0.0;
    double sre = 0.0, lre = 0.0, lgre = 0.0, hgre = 0.0;
    double srlge = 0.0, srhge = 0.0, lrlge = 0.0, lrhge = 0.0;
    std::vector<double> by_gray(m.levels, 0.0), by_len(m.max_run, 0.0);
    for (int g = 0; g < m.levels; ++g) {
        double level = static_cast<double>(g + 1); // 1-based gray level
        for (int l = 1; l <= m.max_run; ++l) {
            double c = m.at(g, l);
            if (c == 0.0) continue;
            double ll = static_cast<double>(l) * l;
            double gg = level * level;
            n_runs += c;
            by_gray[g] += c;
            by_len[l - 1] += c;
            sre += c / ll;
            lre += c * ll;
            lgre += c / gg;
            hgre += c * gg;
            srlge += c / (ll * gg);
            srhge += c * gg / ll;
            lrlge += c * ll / gg;
            lrhge += c * ll * gg;
        }
    }
    std::array<double, 11> out{};
    if (n_runs == 0.0) return out;
    double gln = 0.0, rln = 0.0;
    for (double c : by_gray) gln += c * c;
    for (double c : by_len) rln += c * c;
    out[0] = sre / n_runs;
    out[1] = lre / n_runs;
    out[2] = gln / n_runs;
    out[3] = rln / n_runs;
    out[4] = n_pixels > 0.0 ? n_runs / n_pixels : 0.0;
    out[5] = lgre / n_runs;
    out[6] = hgre / n_runs;
    out[7] = srlge / n_runs;
    out[8] = srhge / n_runs;
    out[9] = lrlge / n_runs;
    out[10] = lrhge / n_runs;
    return out;
}

} // namespace

FeatureGroup rlm_features(const QuantizedPatch& q) {
    if (q.mask.area() == 0) throw EmptyRoiError();
    double n_pixels = static_cast<double>(q.mask.area());
    FeatureGroup g;
    for (int angle : {0, 45, 90, 135}) {
        RunLengthMatrix m = rlm_matrix(q, angle_offset(angle));
        auto stats = rlm_stats(m, n_pixels);
        std::string prefix = "RLM-a" + std::to_string(angle) + "-";
        for (int s = 0; s < 11; ++s) g.add(prefix + kRlmNames[s], stats[s]);
    }
    return g;
}

FeatureGroup haar_features(const Image2D& img, const RoiMask& mask) {
    if (mask.area() == 0) throw EmptyRoiError();
    int x0, y0, x1, y1;
    mask.bounding_box(x0, y0, x1, y1);
    int w = x1 - x0 + 1, h = y1 - y0 + 1;
    if (w < 4 || h < 4) throw RoiTooSmallError();

    double fill = mean_of(mask_values(img, mask));
    auto pad_even = [](std::vector<double>& patch, int& rows, int& cols) {
        if (cols % 2) {
            std::vector<double> next(static_cast<std::size_t>(rows) * (cols + 1));
            for (int r = 0; r < rows; ++r) {
                for (int c = 0; c < cols; ++c)
                    next[static_cast<std::size_t>(r) * (cols + 1) + c] =
                        patch[static_cast<std::size_t>(r) * cols + c];
                next[static_cast<std::size_t>(r) * (cols + 1) + cols] =
                    patch[static_cast<std::size_t>(r) * cols + cols - 1];
            }
            patch = std::move(next);
            ++cols;
        }
        if (rows % 2) {
            patch.resize(static_cast<std::size_t>(rows + 1) * cols);
            for (int c = 0; c < cols; ++c)
                patch[static_cast<std::size_t>(rows) * cols + c] =
                    patch[static_cast<std::size_t>(rows - 1) * cols + c];
            ++rows;
        }
    };

    std::vector<double> patch(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            patch[static_cast<std::size_t>(y) * w + x] =
                mask.at(x0 + x, y0 + y) ? img.at(x0 + x, y0 + y) : fill;

    FeatureGroup g;
    int rows = h, cols = w;
    for (int level = 1; level <= 2; ++level) {
        pad_even(patch, rows, cols);
        HaarSubbands sb = haar_level(patch, rows, cols);
        std::string prefix = "Haar-L" + std::to_string(level) + "-";
        const std::pair<const char*, const std::vector<double>*> bands[4] = {
            {"ll", &sb.ll}, {"lh", &sb.lh}, {"hl", &sb.hl}, {"hh", &sb.hh}};
        for (auto [name, coeffs] : bands) {
            g.add(prefix + name + "-energy", mean_square(*coeffs));
            g.add(prefix + name + "-entropy", abs_hist_entropy(*coeffs));
        }
        patch = sb.ll;
        rows = sb.rows;
        cols = sb.cols;
    }
    return g;
}

FeatureGroup daubechies_histogram_features(const std::vector<double>& hist) {
    Db4Decomposition d = db4_forward(hist, 3);
    FeatureGroup g;
    for (int level = 1; level <= 3; ++level) {
        const auto& det = d.details[static_cast<std::size_t>(level - 1)];
        std::string prefix = "Daube-d" + std::to_string(level) + "-";
        g.add(prefix + "energy", mean_square(det));
        g.add(prefix + "entropy", abs_hist_entropy(det));
    }
    g.add("Daube-a3-energy", mean_square(d.approx));
    g.add("Daube-a3-entropy", abs_hist_entropy(d.approx));
    return g;
}

} // namespace mprad
