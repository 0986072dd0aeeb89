#include "mprad/wavelet.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace mprad {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kNorm = 4.0 * std::sqrt(2.0);
// Daubechies 4-tap analysis filters
const double kH[4] = {(1.0 + kSqrt3) / kNorm, (3.0 + kSqrt3) / kNorm, (3.0 - kSqrt3) / kNorm,
                      (1.0 - kSqrt3) / kNorm};
const double kG[4] = {kH[3], -kH[2], kH[1], -kH[0]};

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

} // namespace

HaarSubbands haar_level(const std::vector<double>& patch, int rows, int cols) {
    if (rows % 2 || cols % 2 || rows < 2 || cols < 2)
        throw std::invalid_argument("haar_level needs even dimensions >= 2");

    int hc = cols / 2, hr = rows / 2;
    // row pass: low/high along x
    std::vector<double> lo(static_cast<std::size_t>(rows) * hc), hi(lo.size());
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < hc; ++c) {
            double a = patch[static_cast<std::size_t>(r) * cols + 2 * c];
            double b = patch[static_cast<std::size_t>(r) * cols + 2 * c + 1];
            lo[static_cast<std::size_t>(r) * hc + c] = (a + b) * kInvSqrt2;
            hi[static_cast<std::size_t>(r) * hc + c] = (a - b) * kInvSqrt2;
        }
    // column pass
    HaarSubbands out;
    out.rows = hr;
    out.cols = hc;
    out.ll.resize(static_cast<std::size_t>(hr) * hc);
    out.hl.resize(out.ll.size());
    out.lh.resize(out.ll.size());
    out.hh.resize(out.ll.size());
    for (int c = 0; c < hc; ++c)
        for (int r = 0; r < hr; ++r) {
            double a_lo = lo[static_cast<std::size_t>(2 * r) * hc + c];
            double b_lo = lo[static_cast<std::size_t>(2 * r + 1) * hc + c];
            double a_hi = hi[static_cast<std::size_t>(2 * r) * hc + c];
            double b_hi = hi[static_cast<std::size_t>(2 * r + 1) * hc + c];
            std::size_t idx = static_cast<std::size_t>(r) * hc + c;
            out.ll[idx] = (a_lo + b_lo) * kInvSqrt2;
            out.lh[idx] = (a_lo - b_lo) * kInvSqrt2;
            out.hl[idx] = (a_hi + b_hi) * kInvSqrt2;
            out.hh[idx] = (a_hi - b_hi) * kInvSqrt2;
        }
    return out;
}

std::vector<double> haar_inverse_level(const HaarSubbands& sb) {
    int hr = sb.rows, hc = sb.cols;
    int rows = 2 * hr, cols = 2 * hc;
    // undo the column pass
    std::vector<double> lo(static_cast<std::size_t>(rows) * hc), hi(lo.size());
    for (int c = 0; c < hc; ++c)
        for (int r = 0; r < hr; ++r) {
            std::size_t idx = static_cast<std::size_t>(r) * hc + c;
            lo[static_cast<std::size_t>(2 * r) * hc + c] = (sb.ll[idx] + sb.lh[idx]) * kInvSqrt2;
            lo[static_cast<std::size_t>(2 * r + 1) * hc + c] = (sb.ll[idx] - sb.lh[idx]) * kInvSqrt2;
            hi[static_cast<std::size_t>(2 * r) * hc + c] = (sb.hl[idx] + sb.hh[idx]) * kInvSqrt2;
            hi[static_cast<std::size_t>(2 * r + 1) * hc + c] = (sb.hl[idx] - sb.hh[idx]) * kInvSqrt2;
        }
    // undo the row pass
    std::vector<double> out(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < hc; ++c) {
            double a = lo[static_cast<std::size_t>(r) * hc + c];
            double b = hi[static_cast<std::size_t>(r) * hc + c];
            out[static_cast<std::size_t>(r) * cols + 2 * c] = (a + b) * kInvSqrt2;
            out[static_cast<std::size_t>(r) * cols + 2 * c + 1] = (a - b) * kInvSqrt2;
        }
    return out;
}

void db4_step(const std::vector<double>& in, std::vector<double>& approx,
              std::vector<double>& detail) {
    std::size_t n = in.size();
    if (n < 4 || n % 2) throw std::invalid_argument("db4_step needs even length >= 4");
    std::size_t half = n / 2;
    approx.assign(half, 0.0);
    detail.assign(half, 0.0);
    for (std::size_t i = 0; i < half; ++i) {
        double a = 0.0, d = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            double x = in[(2 * i + k) % n];
            a += kH[k] * x;
            d += kG[k] * x;
        }
        approx[i] = a;
        detail[i] = d;
    }
}

std::vector<double> db4_inverse_step(const std::vector<double>& approx,
                                     const std::vector<double>& detail) {
    std::size_t half = approx.size();
    std::size_t n = half * 2;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < half; ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
            std::size_t j = (2 * i + k) % n;
            out[j] += kH[k] * approx[i] + kG[k] * detail[i];
        }
    }
    return out;
}

Db4Decomposition db4_forward(const std::vector<double>& signal, int levels) {
    Db4Decomposition d;
    std::vector<double> cur = signal;
    for (int l = 0; l < levels; ++l) {
        std::vector<double> a, det;
        db4_step(cur, a, det);
        d.details.push_back(std::move(det));
        cur = std::move(a);
    }
    d.approx = std::move(cur);
    return d;
}

std::vector<double> db4_reconstruct(const Db4Decomposition& d) {
    std::vector<double> cur = d.approx;
    for (std::size_t l = d.details.size(); l-- > 0;)
        cur = db4_inverse_step(cur, d.details[l]);
    return cur;
}

} // namespace mprad
