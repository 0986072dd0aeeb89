#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mprad/feature_matrix.hpp"
#include "mprad/io.hpp"

namespace mprad {

struct ExtractionReport {
    struct PatientStatus {
        std::string patient_id;
        bool ok = false;
        std::string error;            // empty when ok
        std::size_t flagged_cells = 0; // imputed/degraded feature count
    };
    std::vector<PatientStatus> patients;
    std::size_t n_ok = 0;
    std::size_t n_failed = 0;
    double seconds = 0.0;
    int jobs = 1;
};

// Extracts the three per-sequence feature vectors for every manifest row and
// assembles the multiparametric matrix. Relative paths resolve against
// `base_dir`. Per-patient failures are reported and skipped. `jobs` <= 0
// picks the hardware concurrency (capped by MPRAD_JOBS when set).
FeatureMatrix extract_cohort(const std::vector<ManifestRow>& manifest,
                             const std::filesystem::path& base_dir, ExtractionReport& report,
                             int jobs = 0);

} // namespace mprad
