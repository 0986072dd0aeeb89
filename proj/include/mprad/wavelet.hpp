#pragma once

#include <vector>

namespace mprad {

// One orthonormal 2D Haar analysis level. Input is a rows x cols patch with
// even dimensions; outputs are (rows/2) x (cols/2) subbands. `hx` marks
// high-pass along x (columns), so HL = {hx=1, hy=0} carries horizontal detail.
struct HaarSubbands {
    int rows = 0;
    int cols = 0;
    std::vector<double> ll, hl, lh, hh;
};

HaarSubbands haar_level(const std::vector<double>& patch, int rows, int cols);
std::vector<double> haar_inverse_level(const HaarSubbands& sb);

// 3 supported ops for the periodic Daubechies-4 (4-tap) transform.
// Input length must be even; approx/detail each get half.
void db4_step(const std::vector<double>& in, std::vector<double>& approx,
              std::vector<double>& detail);
std::vector<double> db4_inverse_step(const std::vector<double>& approx,
                                     const std::vector<double>& detail);

// Multi-level forward transform; returns detail coefficients per level plus
// the final approximation.
struct Db4Decomposition {
    std::vector<std::vector<double>> details; // details[0] = level 1
    std::vector<double> approx;               // final level
};

Db4Decomposition db4_forward(const std::vector<double>& signal, int levels);
std::vector<double> db4_reconstruct(const Db4Decomposition& d);

} // namespace mprad
