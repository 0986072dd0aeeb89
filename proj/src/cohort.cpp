#include "mprad/cohort.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "mprad/errors.hpp"
#include "mprad/features.hpp"

namespace mprad {

namespace {

int resolve_jobs(int jobs) {
    if (jobs <= 0) {
        if (const char* env = std::getenv("MPRAD_JOBS")) {
            int j = std::atoi(env);
            if (j > 0) return j;
        }
        unsigned hw = std::thread::hardware_concurrency();
        return hw > 0 ? static_cast<int>(hw) : 1;
    }
    return jobs;
}

} // namespace

FeatureMatrix extract_cohort(const std::vector<ManifestRow>& manifest,
                             const std::filesystem::path& base_dir, ExtractionReport& report,
                             int jobs) {
    auto t0 = std::chrono::steady_clock::now();
    jobs = resolve_jobs(jobs);
    report = ExtractionReport{};
    report.jobs = jobs;
    report.patients.resize(manifest.size());

    std::vector<std::array<FeatureGroup, 3>> per_patient(manifest.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= manifest.size()) break;
            const ManifestRow& row = manifest[i];
            auto& status = report.patients[i];
            status.patient_id = row.patient_id;
            try {
                for (std::size_t s = 0; s < 3; ++s) {
                    Image2D img = read_image(base_dir / row.image_paths[s]);
                    RoiPolygon roi = read_roi_json(base_dir / row.roi_paths[s]);
                    FeatureGroup g = extract_sequence_features(img, roi);
                    for (auto f : g.flags) status.flagged_cells += f != 0;
                    per_patient[i][s] = std::move(g);
                }
                status.ok = true;
            } catch (const std::exception& e) {
                status.ok = false;
                status.error = e.what();
            }
        }
    };

    std::vector<std::thread> pool;
    int n_threads = std::min<int>(jobs, static_cast<int>(manifest.size()));
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<std::string> ids;
    std::vector<int> labels;
    std::vector<std::array<FeatureGroup, 3>> kept;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        if (report.patients[i].ok) {
            ids.push_back(manifest[i].patient_id);
            labels.push_back(manifest[i].label);
            kept.push_back(std::move(per_patient[i]));
            ++report.n_ok;
        } else {
            ++report.n_failed;
        }
    }
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (kept.empty()) throw EmptyRoiError("every patient failed extraction");
    return assemble_matrix(ids, labels, kept);
}

} // namespace mprad
