#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mprad/io.hpp"

namespace mprad {

// Per-class knobs. The lesion boundary perturbation lands on the DWI contour,
// the texture length scale on the T2 interior, the mean offset on ADC. Each
// patient draws around these values, so classes overlap instead of being
// trivially separable.
struct ClassEffect {
    double boundary_amplitude = 0.05;  // high-frequency radial perturbation, relative
    double texture_smoothness = 0.5;   // 0 = fine-grained, 1 = fully smoothed T2 texture
    double adc_offset = 0.0;           // added to the ADC lesion level
};

struct PhantomConfig {
    int n_patients = 40;
    double positive_fraction = 0.5;
    int image_size = 128;
    ClassEffect negative;
    ClassEffect positive;
    double noise_std = 30.0;
    std::uint64_t seed = 1;

    // presets: "none" (identical classes), "small", "large"
    static PhantomConfig with_effect(const std::string& level);
};

// Writes PGM images, ROI polygons and manifest.csv under `outdir`;
// seed-deterministic byte for byte. Returns the manifest rows.
std::vector<ManifestRow> generate_phantom_cohort(const PhantomConfig& cfg,
                                                 const std::filesystem::path& outdir);

} // namespace mprad
