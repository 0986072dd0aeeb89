#pragma once

#include <string>
#include <vector>

#include "mprad/feature_group.hpp"
#include "mprad/image.hpp"

namespace mprad {

// Ordered registry of the feature families with their per-family widths.
// The default profile totals exactly 488 entries per sequence; the count is
// asserted once at construction and never hard-coded downstream.
struct FeatureProfile {
    struct Family {
        std::string name;
        std::size_t count;
    };
    std::string profile_name;
    std::vector<Family> families;

    std::size_t total() const {
        std::size_t n = 0;
        for (const auto& f : families) n += f.count;
        return n;
    }

    static const FeatureProfile& paper488();
};

// Gray levels shared by the GLCM and run-length quantization.
inline constexpr int kTextureGrayLevels = 32;

// Full per-sequence feature vector in profile order. Family-level failures
// (tiny ROI, empty ring, ...) are imputed with 0 and flagged instead of
// aborting the sequence.
FeatureGroup extract_sequence_features(const Image2D& img, const RoiPolygon& roi,
                                       const FeatureProfile& profile = FeatureProfile::paper488());

// Same, for a pre-rasterized mask (used by tests and the python bindings).
FeatureGroup extract_sequence_features_masked(
    const Image2D& img, const RoiMask& mask,
    const FeatureProfile& profile = FeatureProfile::paper488());

} // namespace mprad
