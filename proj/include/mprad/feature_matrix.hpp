#pragma once

#include <array>
#include <string>
#include <vector>

#include "mprad/feature_group.hpp"

namespace mprad {

inline constexpr std::array<const char*, 3> kSequenceNames = {"ADC", "DWI", "T2"};

// Patients x features with named columns and per-cell quality flags.
struct FeatureMatrix {
    std::vector<std::string> patient_ids;
    std::vector<int> labels;
    std::vector<std::string> column_names;
    std::vector<double> values;      // row-major, n_rows x n_cols
    std::vector<std::uint8_t> flags; // same layout

    std::size_t rows() const { return patient_ids.size(); }
    std::size_t cols() const { return column_names.size(); }
    double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
    double& at(std::size_t r, std::size_t c) { return values[r * cols() + c]; }
};

// Per-column centering/scaling parameters; zero-variance columns are dropped
// and listed by name.
struct NormParams {
    std::vector<std::string> column_names; // retained columns
    std::vector<double> means;
    std::vector<double> stds; // sample (n-1) standard deviation
    std::vector<std::string> dropped_columns;
};

// Concatenate the three per-sequence vectors (ADC, DWI, T2 block order) for
// each patient; column names get the sequence prefix.
FeatureMatrix assemble_matrix(const std::vector<std::string>& patient_ids,
                              const std::vector<int>& labels,
                              const std::vector<std::array<FeatureGroup, 3>>& per_patient);

// Column-wise z-score with sample (n-1) std; drops zero-variance columns.
std::pair<FeatureMatrix, NormParams> zscore_normalize(const FeatureMatrix& m);

// Apply previously fitted params (columns missing from `params` are dropped).
FeatureMatrix apply_normalization(const FeatureMatrix& m, const NormParams& params);

} // namespace mprad
