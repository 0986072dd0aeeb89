#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mprad/cohort.hpp"
#include "mprad/errors.hpp"
#include "mprad/evaluation.hpp"
#include "mprad/features.hpp"
#include "mprad/io.hpp"
#include "mprad/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int cmd_synth(const std::string& out_dir, int patients, double balance, int size,
              const std::string& effect, double noise, std::uint64_t seed) {
    mprad::PhantomConfig cfg = mprad::PhantomConfig::with_effect(effect);
    cfg.n_patients = patients;
    cfg.positive_fraction = balance;
    cfg.image_size = size;
    cfg.noise_std = noise;
    cfg.seed = seed;
    auto rows = mprad::generate_phantom_cohort(cfg, out_dir);
    std::cout << "wrote " << rows.size() << " patients to " << out_dir << "\n";
    return 0;
}

int cmd_extract(const std::string& manifest_path, const std::string& out_dir, int jobs) {
    fs::create_directories(out_dir);
    auto manifest = mprad::read_manifest(manifest_path);
    mprad::ExtractionReport report;
    mprad::FeatureMatrix m =
        mprad::extract_cohort(manifest, fs::path(manifest_path).parent_path(), report, jobs);
    mprad::write_features_csv(fs::path(out_dir) / "features.csv", m);

    json rep;
    rep["n_patients"] = manifest.size();
    rep["n_ok"] = report.n_ok;
    rep["n_failed"] = report.n_failed;
    rep["seconds"] = report.seconds;
    rep["jobs"] = report.jobs;
    rep["profile"] = mprad::FeatureProfile::paper488().profile_name;
    rep["features_per_sequence"] = mprad::FeatureProfile::paper488().total();
    json patients = json::array();
    for (const auto& p : report.patients) {
        json row;
        row["patient_id"] = p.patient_id;
        row["ok"] = p.ok;
        row["flagged_cells"] = p.flagged_cells;
        if (!p.ok) row["error"] = p.error;
        patients.push_back(std::move(row));
    }
    rep["patients"] = std::move(patients);
    std::ofstream out(fs::path(out_dir) / "extraction_report.json");
    out << rep.dump(2) << "\n";

    std::cout << "extracted " << report.n_ok << "/" << manifest.size() << " patients, "
              << m.cols() << " columns, " << report.seconds << " s\n";
    for (const auto& p : report.patients)
        if (!p.ok) std::cerr << "failed: " << p.patient_id << ": " << p.error << "\n";
    // a minority of bad lesions must not fail the batch
    bool too_many_failures =
        report.n_failed * 5 > manifest.size(); // > 20%
    return too_many_failures ? 1 : 0;
}

int cmd_train_eval(const std::string& features_path, const std::string& out_dir, double alpha,
                   int folds, std::uint64_t seed, int n_lambda, double eps,
                   bool paper_normalization, std::size_t digest) {
    fs::create_directories(out_dir);
    mprad::FeatureMatrix raw = mprad::read_features_csv(features_path);

    mprad::CVConfig cfg;
    cfg.alpha = alpha;
    cfg.k = folds;
    cfg.seed = seed;
    cfg.n_lambda = n_lambda;
    cfg.eps = eps;
    cfg.normalization = paper_normalization ? mprad::NormalizationMode::paper
                                            : mprad::NormalizationMode::fold_local;

    mprad::CVResult cv = mprad::cv_evaluate(raw, cfg);
    mprad::FeatureRanking ranking = mprad::rank_features(cv, digest);

    // full-data fit on the shared grid: trace plot data and the saved path
    auto [norm, params] = mprad::zscore_normalize(raw);
    mprad::DesignMatrix X(norm.rows(), norm.cols());
    for (std::size_t i = 0; i < norm.rows(); ++i)
        for (std::size_t j = 0; j < norm.cols(); ++j) X.at(i, j) = norm.at(i, j);
    std::vector<double> y(norm.rows());
    for (std::size_t i = 0; i < norm.rows(); ++i) y[i] = norm.labels[i] ? 1.0 : 0.0;
    mprad::ElasticNetPath path =
        mprad::fit_path(X, y, alpha, cv.lambdas, mprad::Family::binomial);

    fs::path out(out_dir);
    mprad::write_roc_csv(out / "roc.csv", cv.roc);
    mprad::write_auc_by_lambda_csv(out / "auc_by_lambda.csv", cv);
    mprad::write_ranking_csv(out / "ranking.csv", ranking);
    mprad::write_trace_csv(out / "trace.csv", mprad::trace_data(path, norm.column_names));
    mprad::write_path_json(out / "path.json", path, norm.column_names, cv.best_index);
    mprad::write_norm_params_json(out / "norm_params.json", params);

    std::size_t nonzero_full = path.fits[cv.best_index].nonzero_count();
    json summary;
    summary["auc"] = cv.best_auc;
    summary["sensitivity"] = cv.operating_point.sensitivity;
    summary["specificity"] = cv.operating_point.specificity;
    summary["threshold"] = cv.operating_point.threshold;
    summary["best_lambda"] = cv.best_lambda;
    summary["best_lambda_index"] = cv.best_index;
    summary["nonzero_count_union"] = cv.nonzero_union;
    summary["nonzero_count_fold_mean"] = cv.nonzero_fold_mean;
    summary["nonzero_count_full_fit"] = nonzero_full;
    summary["n_patients"] = raw.rows();
    summary["n_features"] = raw.cols();
    summary["alpha"] = alpha;
    summary["k"] = folds;
    summary["seed"] = seed;
    summary["n_lambda"] = n_lambda;
    summary["eps"] = eps;
    summary["normalization"] = paper_normalization ? "paper" : "fold-local";
    summary["flags"] = cv.flags;
    json top = json::array();
    for (std::size_t j : ranking.digest) {
        json row;
        row["name"] = ranking.names[j];
        row["mean_coef"] = ranking.mean_coefficient[j];
        row["frequency"] = ranking.frequency[j];
        top.push_back(std::move(row));
    }
    summary["top_features"] = std::move(top);
    std::ofstream sum(out / "summary.json");
    sum << summary.dump(2) << "\n";

    std::printf("AUC %.4f  sensitivity %.3f  specificity %.3f  best lambda %.6g\n", cv.best_auc,
                cv.operating_point.sensitivity, cv.operating_point.specificity, cv.best_lambda);
    std::printf("nonzero predictors: %zu (union across folds), %.1f (fold mean), %zu (full fit)\n",
                cv.nonzero_union, cv.nonzero_fold_mean, nonzero_full);
    return 0;
}

int cmd_rank(const std::string& path_file, const std::string& out_dir, int lambda_index) {
    fs::create_directories(out_dir);
    std::vector<std::string> names;
    std::size_t best = 0;
    mprad::ElasticNetPath path = mprad::read_path_json(path_file, names, best);
    std::size_t index = lambda_index >= 0 ? static_cast<std::size_t>(lambda_index) : best;
    if (index >= path.fits.size()) throw mprad::Error("lambda index out of range");

    const auto& beta = path.fits[index].beta;
    mprad::CVResult cv;
    cv.feature_names = names;
    mprad::Coefficients c = path.fits[index];
    cv.fold_coefficients.push_back(c);
    mprad::FeatureRanking r = mprad::rank_features(cv);
    mprad::write_ranking_csv(fs::path(out_dir) / "ranking.csv", r);

    std::size_t nonzero = 0;
    for (double b : beta) nonzero += b != 0.0;
    std::printf("lambda %.6g: %zu nonzero predictors; ranking written\n", path.lambdas[index],
                nonzero);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiparametric MR radiomics pipeline"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic phantom cohort");
    std::string synth_out;
    int synth_patients = 40;
    double synth_balance = 0.5;
    int synth_size = 128;
    std::string synth_effect = "large";
    double synth_noise = 30.0;
    std::uint64_t synth_seed = 1;
    synth->add_option("--out", synth_out, "output directory")->required();
    synth->add_option("--patients", synth_patients, "cohort size (>= 20)");
    synth->add_option("--balance", synth_balance, "positive class fraction");
    synth->add_option("--size", synth_size, "image width/height");
    synth->add_option("--effect", synth_effect, "effect preset: none|small|large");
    synth->add_option("--noise", synth_noise, "background noise std");
    synth->add_option("--seed", synth_seed, "random seed");

    // extract
    auto* extract = app.add_subcommand("extract", "extract the feature matrix from a manifest");
    std::string ex_manifest, ex_out;
    int ex_jobs = 0;
    extract->add_option("--manifest", ex_manifest, "manifest.csv path")->required();
    extract->add_option("--out", ex_out, "output directory")->required();
    extract->add_option("--jobs", ex_jobs, "worker threads (default: MPRAD_JOBS or all cores)");

    // train-eval
    auto* train = app.add_subcommand("train-eval", "cross-validated elastic net + ROC outputs");
    std::string tr_features, tr_out;
    double tr_alpha = 0.5, tr_eps = 0.01;
    int tr_folds = 10, tr_nlambda = 100;
    std::uint64_t tr_seed = 1;
    bool tr_paper_norm = false;
    std::size_t tr_digest = 20;
    train->add_option("--features", tr_features, "features.csv path")->required();
    train->add_option("--out", tr_out, "output directory")->required();
    train->add_option("--alpha", tr_alpha, "elastic net mixing weight");
    train->add_option("--folds", tr_folds, "cross-validation folds");
    train->add_option("--seed", tr_seed, "fold shuffle seed");
    train->add_option("--n-lambda", tr_nlambda, "lambda grid size");
    train->add_option("--eps", tr_eps, "grid floor as a fraction of lambda_max");
    train->add_flag("--paper-normalization", tr_paper_norm,
                    "normalize the full matrix before splitting folds");
    train->add_option("--digest", tr_digest, "digest size for the ranking summary");

    // rank
    auto* rank = app.add_subcommand("rank", "re-derive the feature ranking from a saved path");
    std::string rk_path, rk_out;
    int rk_index = -1;
    rank->add_option("--path", rk_path, "path.json from train-eval")->required();
    rank->add_option("--out", rk_out, "output directory")->required();
    rank->add_option("--lambda-index", rk_index, "grid index (default: best from the file)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed())
            return cmd_synth(synth_out, synth_patients, synth_balance, synth_size, synth_effect,
                             synth_noise, synth_seed);
        if (extract->parsed()) return cmd_extract(ex_manifest, ex_out, ex_jobs);
        if (train->parsed())
            return cmd_train_eval(tr_features, tr_out, tr_alpha, tr_folds, tr_seed, tr_nlambda,
                                  tr_eps, tr_paper_norm, tr_digest);
        if (rank->parsed()) return cmd_rank(rk_path, rk_out, rk_index);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
