#include "mprad/feature_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "mprad/errors.hpp"

namespace mprad {

FeatureMatrix assemble_matrix(const std::vector<std::string>& patient_ids,
                              const std::vector<int>& labels,
                              const std::vector<std::array<FeatureGroup, 3>>& per_patient) {
    if (patient_ids.size() != per_patient.size() || labels.size() != per_patient.size())
        throw DimensionMismatchError("patient ids, labels and feature rows must align");
    if (per_patient.empty()) throw TooFewRowsError("no patients to assemble");

    for (const auto& triple : per_patient)
        for (const auto& g : triple)
            if (g.size() == 0) throw MissingSequenceError();

    FeatureMatrix m;
    m.patient_ids = patient_ids;
    m.labels = labels;

    const auto& first = per_patient.front();
    for (std::size_t s = 0; s < 3; ++s)
        for (const auto& name : first[s].names)
            m.column_names.push_back(std::string(kSequenceNames[s]) + "-" + name);

    std::unordered_set<std::string> seen;
    for (const auto& n : m.column_names)
        if (!seen.insert(n).second) throw Error("duplicate column name: " + n);

    std::size_t p = m.column_names.size();
    m.values.reserve(per_patient.size() * p);
    m.flags.reserve(per_patient.size() * p);
    for (const auto& triple : per_patient) {
        std::size_t row_len = 0;
        for (std::size_t s = 0; s < 3; ++s) {
            if (triple[s].names != first[s].names)
                throw DimensionMismatchError("per-sequence feature names differ across patients");
            for (std::size_t i = 0; i < triple[s].size(); ++i) {
                m.values.push_back(triple[s].values[i]);
                m.flags.push_back(triple[s].flags[i]);
            }
            row_len += triple[s].size();
        }
        if (row_len != p) throw DimensionMismatchError();
    }
    return m;
}

std::pair<FeatureMatrix, NormParams> zscore_normalize(const FeatureMatrix& m) {
    std::size_t n = m.rows(), p = m.cols();
    if (n < 2) throw TooFewRowsError();

    NormParams params;
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < p; ++j) {
        double mean = 0.0;
        double lo = m.at(0, j), hi = lo;
        for (std::size_t i = 0; i < n; ++i) {
            double v = m.at(i, j);
            mean += v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = m.at(i, j) - mean;
            ss += d * d;
        }
        double sd = std::sqrt(ss / static_cast<double>(n - 1));
        // lo == hi catches constant columns whose accumulated mean rounds a
        // last-place digit away from the common value
        if (sd > 0.0 && lo != hi) {
            kept.push_back(j);
            params.column_names.push_back(m.column_names[j]);
            params.means.push_back(mean);
            params.stds.push_back(sd);
        } else {
            params.dropped_columns.push_back(m.column_names[j]);
        }
    }

    FeatureMatrix out;
    out.patient_ids = m.patient_ids;
    out.labels = m.labels;
    out.column_names = params.column_names;
    out.values.resize(n * kept.size());
    out.flags.resize(n * kept.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t jj = 0; jj < kept.size(); ++jj) {
            std::size_t j = kept[jj];
            out.values[i * kept.size() + jj] = (m.at(i, j) - params.means[jj]) / params.stds[jj];
            out.flags[i * kept.size() + jj] = m.flags[i * p + j];
        }
    return {std::move(out), std::move(params)};
}

FeatureMatrix apply_normalization(const FeatureMatrix& m, const NormParams& params) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t j = 0; j < m.column_names.size(); ++j) index[m.column_names[j]] = j;

    std::size_t n = m.rows(), pk = params.column_names.size();
    FeatureMatrix out;
    out.patient_ids = m.patient_ids;
    out.labels = m.labels;
    out.column_names = params.column_names;
    out.values.resize(n * pk);
    out.flags.resize(n * pk);
    for (std::size_t jj = 0; jj < pk; ++jj) {
        auto it = index.find(params.column_names[jj]);
        if (it == index.end())
            throw DimensionMismatchError("column missing: " + params.column_names[jj]);
        std::size_t j = it->second;
        for (std::size_t i = 0; i < n; ++i) {
            out.values[i * pk + jj] = (m.at(i, j) - params.means[jj]) / params.stds[jj];
            out.flags[i * pk + jj] = m.flags[i * m.cols() + j];
        }
    }
    return out;
}

} // namespace mprad
