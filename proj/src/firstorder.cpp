#include "mprad/firstorder.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "mprad/errors.hpp"

namespace mprad {

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double stddev_pop(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
}

double percentile(std::vector<double> v, double p) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    if (v.size() == 1) return v[0];
    double rank = p / 100.0 * static_cast<double>(v.size() - 1);
    std::size_t lo = static_cast<std::size_t>(std::floor(rank));
    std::size_t hi = std::min(lo + 1, v.size() - 1);
    double frac = rank - static_cast<double>(lo);
    return v[lo] + frac * (v[hi] - v[lo]);
}

double histogram_entropy(const std::vector<double>& v, int bins, double lo, double hi) {
    if (v.empty() || bins < 1) return 0.0;
    std::vector<double> h(static_cast<std::size_t>(bins), 0.0);
    if (hi <= lo) return 0.0; // all values identical
    double scale = static_cast<double>(bins) / (hi - lo);
    for (double x : v) {
        int b = static_cast<int>(std::floor((x - lo) * scale));
        h[static_cast<std::size_t>(std::clamp(b, 0, bins - 1))] += 1.0;
    }
    double n = static_cast<double>(v.size());
    double e = 0.0;
    for (double c : h)
        if (c > 0.0) {
            double p = c / n;
            e -= p * std::log(p);
        }
    return e;
}

std::vector<double> mask_values(const Image2D& img, const RoiMask& mask) {
    std::vector<double> v;
    v.reserve(mask.area());
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            if (mask.at(x, y)) v.push_back(img.at(x, y));
    return v;
}

FeatureGroup intensity_features(const Image2D& img, const RoiMask& mask) {
    std::vector<double> lesion = mask_values(img, mask);
    if (lesion.empty()) throw EmptyRoiError();

    FeatureGroup g;
    g.add("Mean", mean_of(lesion));
    g.add("InsM", median_of(lesion));

    double lo = *std::min_element(lesion.begin(), lesion.end());
    double hi = *std::max_element(lesion.begin(), lesion.end());
    g.add("Entropy", histogram_entropy(lesion, 128, lo, hi));

    // Pixvalue thresholds: whole-image percentiles, strict inequality
    std::vector<double> whole = img.data;
    for (double p : {50.0, 75.0, 90.0}) {
        double thr = percentile(whole, p);
        std::size_t count = 0;
        for (double v : lesion) count += v > thr;
        g.add("Pixvalue-" + std::to_string(static_cast<int>(p)),
              static_cast<double>(count) / static_cast<double>(lesion.size()));
    }

    // Diff at ring widths w, 2w, 3w with w tied to the equivalent radius
    double r_eq = std::sqrt(static_cast<double>(lesion.size()) / 3.14159265358979323846);
    int w = std::max(1, static_cast<int>(std::lround(0.2 * r_eq)));
    double lesion_mean = mean_of(lesion);
    double lesion_median = median_of(lesion);
    double lesion_std = stddev_pop(lesion);
    for (int s = 1; s <= 3; ++s) {
        RoiMask ring = ring_region(mask, s * w);
        std::vector<double> rv = mask_values(img, ring);
        std::string suffix = "-" + std::to_string(s);
        if (rv.empty()) {
            // clipped-away ring: impute 0 and flag rather than fail the patient
            g.add("Diff-mean" + suffix, 0.0, true);
            g.add("Diff-median" + suffix, 0.0, true);
            g.add("Diff-std" + suffix, 0.0, true);
        } else {
            g.add("Diff-mean" + suffix, lesion_mean - mean_of(rv));
            g.add("Diff-median" + suffix, lesion_median - median_of(rv));
            g.add("Diff-std" + suffix, lesion_std - stddev_pop(rv));
        }
    }
    return g;
}

FeatureGroup histogram_features(const Image2D& img, const RoiMask& mask, double lo, double hi) {
    if (lo >= hi) throw DegenerateRangeError();
    std::vector<double> lesion = mask_values(img, mask);
    if (lesion.empty()) throw EmptyRoiError();

    constexpr int kBins = 128;
    std::array<double, kBins> counts{};
    double scale = static_cast<double>(kBins) / (hi - lo);
    for (double v : lesion) {
        int b = static_cast<int>(std::floor((v - lo) * scale));
        counts[static_cast<std::size_t>(std::clamp(b, 0, kBins - 1))] += 1.0;
    }
    FeatureGroup g;
    double n = static_cast<double>(lesion.size());
    for (int b = 0; b < kBins; ++b) g.add("Histogram-bin-" + std::to_string(b), counts[b] / n);
    return g;
}

namespace {

// 0-based bin for each 8-bit code: uniform patterns (<= 2 circular transitions)
// get their own bin in ascending code order, everything else shares bin 58
std::array<int, 256> build_uniform_lbp_table() {
    std::array<int, 256> table{};
    int next = 0;
    for (int code = 0; code < 256; ++code) {
        int transitions = 0;
        for (int b = 0; b < 8; ++b) {
            int cur = (code >> b) & 1;
            int nxt = (code >> ((b + 1) % 8)) & 1;
            transitions += cur != nxt;
        }
        table[code] = transitions <= 2 ? next++ : -1;
    }
    for (int code = 0; code < 256; ++code)
        if (table[code] < 0) table[code] = 58;
    return table;
}

} // namespace

FeatureGroup lbp_features(const Image2D& img, const RoiMask& mask) {
    static const std::array<int, 256> table = build_uniform_lbp_table();
    // neighbors clockwise from east, y down
    static const int nx8[] = {1, 1, 0, -1, -1, -1, 0, 1};
    static const int ny8[] = {0, 1, 1, 1, 0, -1, -1, -1};

    std::array<double, 59> hist{};
    double total = 0.0;
    for (int y = 1; y < img.height - 1; ++y)
        for (int x = 1; x < img.width - 1; ++x) {
            if (!mask.at(x, y)) continue;
            double c = img.at(x, y);
            int code = 0;
            for (int b = 0; b < 8; ++b)
                if (img.at(x + nx8[b], y + ny8[b]) >= c) code |= 1 << b;
            hist[static_cast<std::size_t>(table[code])] += 1.0;
            total += 1.0;
        }
    if (total == 0.0) {
        if (mask.area() == 0) throw EmptyRoiError();
        // mask hugs the border so no pixel has a full neighborhood
        FeatureGroup g;
        for (int b = 0; b < 59; ++b) g.add("LBP-" + std::to_string(b), 0.0, true);
        return g;
    }
    FeatureGroup g;
    for (int b = 0; b < 59; ++b) g.add("LBP-" + std::to_string(b), hist[b] / total);
    return g;
}

FeatureGroup edge_features(const Image2D& img, const RoiMask& mask, const ContourPath& contour,
                           double lo, double hi) {
    if (mask.area() == 0 || contour.points.empty()) throw EmptyRoiError();

    Image2D grad = gradient_magnitude(img);
    std::vector<double> sharp;
    sharp.reserve(contour.points.size());
    for (auto [x, y] : contour.points) sharp.push_back(grad.at(x, y));

    FeatureGroup g;
    g.add("EdgeSharp-mean", mean_of(sharp));
    g.add("EdgeSharp-std", stddev_pop(sharp));
    g.add("EdgeSharp-min", *std::min_element(sharp.begin(), sharp.end()));
    g.add("EdgeSharp-max", *std::max_element(sharp.begin(), sharp.end()));
    g.add("EdgeSharp-median", median_of(sharp));

    // boundary band: dilate(mask,2) minus erode(mask,2)
    RoiMask outer = dilate(mask, 2);
    RoiMask inner = erode(mask, 2);
    std::vector<double> band;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            if (outer.at(x, y) && !inner.at(x, y)) band.push_back(img.at(x, y));

    bool degenerate = band.empty();
    if (degenerate)
        for (auto [x, y] : contour.points) band.push_back(img.at(x, y));

    constexpr int kBins = 32;
    std::array<double, kBins> counts{};
    if (hi > lo) {
        double scale = static_cast<double>(kBins) / (hi - lo);
        for (double v : band) {
            int b = static_cast<int>(std::floor((v - lo) * scale));
            counts[static_cast<std::size_t>(std::clamp(b, 0, kBins - 1))] += 1.0;
        }
    } else {
        counts[0] = static_cast<double>(band.size());
    }
    double n = static_cast<double>(band.size());
    for (int b = 0; b < kBins; ++b)
        g.add("EdgeHistogram-bin-" + std::to_string(b), counts[b] / n, degenerate);
    return g;
}

} // namespace mprad
