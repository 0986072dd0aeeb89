#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mprad/elasticnet.hpp"
#include "mprad/evaluation.hpp"
#include "mprad/feature_matrix.hpp"
#include "mprad/image.hpp"

namespace mprad {

// Binary PGM (P5), maxval up to 65535 (two-byte big-endian samples).
Image2D read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Image2D& img, int maxval = 65535);

// Plain CSV grid of reals, one image row per line.
Image2D read_csv_image(const std::filesystem::path& path);

// Either format, chosen by extension (.pgm vs anything else = CSV).
Image2D read_image(const std::filesystem::path& path);

// JSON array of [x, y] vertex pairs.
RoiPolygon read_roi_json(const std::filesystem::path& path);
void write_roi_json(const std::filesystem::path& path, const RoiPolygon& poly);

struct ManifestRow {
    std::string patient_id;
    int label = -1;
    std::array<std::string, 3> image_paths; // ADC, DWI, T2
    std::array<std::string, 3> roi_paths;
};

// manifest.csv columns: patient_id, label (or gleason, which supersedes it;
// label = gleason >= 7), then image/roi paths per sequence.
std::vector<ManifestRow> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRow>& rows);

// features.csv: patient_id, label, then one column per feature.
void write_features_csv(const std::filesystem::path& path, const FeatureMatrix& m);
FeatureMatrix read_features_csv(const std::filesystem::path& path);

void write_norm_params_json(const std::filesystem::path& path, const NormParams& params);

void write_path_json(const std::filesystem::path& path, const ElasticNetPath& p,
                     const std::vector<std::string>& names, std::size_t best_index);
ElasticNetPath read_path_json(const std::filesystem::path& path,
                              std::vector<std::string>& names, std::size_t& best_index);

void write_roc_csv(const std::filesystem::path& path, const RocCurve& curve);
void write_auc_by_lambda_csv(const std::filesystem::path& path, const CVResult& cv);
void write_ranking_csv(const std::filesystem::path& path, const FeatureRanking& r);
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& rows);

} // namespace mprad
