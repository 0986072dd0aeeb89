#pragma once

#include <utility>
#include <vector>

#include "mprad/feature_group.hpp"
#include "mprad/image.hpp"

namespace mprad {

// Symmetric, sum-1 gray-level co-occurrence matrix.
struct GLCM {
    int levels = 0;
    std::vector<double> p; // levels x levels, row-major

    double at(int i, int j) const { return p[static_cast<std::size_t>(i) * levels + j]; }
};

GLCM glcm_matrix(const QuantizedPatch& q, std::pair<int, int> offset);

// 13 Haralick statistics of one GLCM, in the order used by haralick_features.
std::vector<double> haralick_stats(const GLCM& m);

// 13 stats x (4 directions x 2 distances) = 104 values; a direction with no
// in-mask pair falls back to the uniform GLCM and is flagged.
FeatureGroup haralick_features(const QuantizedPatch& q);

// Precomputed complex Gabor kernels: 4 orientations x 3 wavelengths,
// bandwidth 1 octave, aspect ratio 0.5, mean-subtracted real part.
struct GaborBank {
    struct Kernel {
        double wavelength = 0.0;
        int angle_deg = 0;
        int half = 0; // kernel spans [-half, half]^2
        std::vector<double> real;
        std::vector<double> imag;
    };
    std::vector<Kernel> kernels;

    static const GaborBank& standard();
};

// {mean, std, energy, histogram entropy} of the response magnitude per kernel
// over in-mask pixels (48 values).
FeatureGroup gabor_features(const Image2D& img, const RoiMask& mask,
                            const GaborBank& bank = GaborBank::standard());

struct RunLengthMatrix {
    int levels = 0;
    int max_run = 0;
    std::vector<double> r; // levels x max_run, r(g, l-1) = count of runs of length l

    double at(int g, int l) const { return r[static_cast<std::size_t>(g) * max_run + (l - 1)]; }
};

RunLengthMatrix rlm_matrix(const QuantizedPatch& q, std::pair<int, int> direction);

// 11 Galloway/Chu/Dasarathy statistics x 4 directions = 44 values.
FeatureGroup rlm_features(const QuantizedPatch& q);

// 2-level 2D Haar of the mask bounding box (out-of-mask = in-mask mean),
// energy + entropy per subband = 16 values.
FeatureGroup haar_features(const Image2D& img, const RoiMask& mask);

// 3-level periodic db4 of a 128-bin histogram: energy + entropy per detail
// level and for the final approximation = 8 values.
FeatureGroup daubechies_histogram_features(const std::vector<double>& hist);

} // namespace mprad
