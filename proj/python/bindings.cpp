#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "mprad/cohort.hpp"
#include "mprad/elasticnet.hpp"
#include "mprad/errors.hpp"
#include "mprad/evaluation.hpp"
#include "mprad/features.hpp"
#include "mprad/image.hpp"
#include "mprad/shape.hpp"
#include "mprad/synth.hpp"
#include "mprad/texture.hpp"

namespace py = pybind11;
using namespace mprad;

namespace {

py::array_t<double> vec_to_array(const std::vector<double>& v) {
    py::array_t<double> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
    std::memcpy(out.mutable_data(), v.data(), sizeof(double) * v.size());
    return out;
}

Image2D image_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw py::value_error("image must be a 2D array");
    Image2D img(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
    std::memcpy(img.data.data(), a.data(), sizeof(double) * img.data.size());
    return img;
}

py::array_t<double> image_to_array(const Image2D& img) {
    py::array_t<double> out({img.height, img.width});
    std::memcpy(out.mutable_data(), img.data.data(), sizeof(double) * img.data.size());
    return out;
}

RoiPolygon polygon_from_list(const std::vector<std::pair<double, double>>& vertices) {
    RoiPolygon poly;
    poly.vertices = vertices;
    return poly;
}

py::array_t<bool> mask_to_array(const RoiMask& m) {
    py::array_t<bool> out({m.height, m.width});
    bool* dst = out.mutable_data();
    for (std::size_t i = 0; i < m.bits.size(); ++i) dst[i] = m.bits[i] != 0;
    return out;
}

RoiMask mask_from_array(const py::array_t<bool, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw py::value_error("mask must be a 2D array");
    RoiMask m(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
    const bool* src = a.data();
    for (std::size_t i = 0; i < m.bits.size(); ++i) m.bits[i] = src[i] ? 1 : 0;
    return m;
}

DesignMatrix design_from_array(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw py::value_error("X must be a 2D array");
    DesignMatrix X(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    auto r = a.unchecked<2>();
    for (std::size_t i = 0; i < X.n; ++i)
        for (std::size_t j = 0; j < X.p; ++j) X.at(i, j) = r(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
    return X;
}

py::dict coefficients_to_dict(const Coefficients& c) {
    py::dict d;
    d["intercept"] = c.intercept;
    d["beta"] = vec_to_array(c.beta);
    d["converged"] = c.converged;
    d["nonzero_count"] = c.nonzero_count();
    return d;
}

Family family_from_string(const std::string& s) {
    if (s == "gaussian") return Family::gaussian;
    if (s == "binomial") return Family::binomial;
    throw py::value_error("family must be 'gaussian' or 'binomial'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "multiparametric MR radiomics: feature extraction, elastic net, CV evaluation";

    py::register_exception<Error>(m, "MpradError");

    // imaging
    m.def(
        "rasterize_polygon",
        [](const std::vector<std::pair<double, double>>& vertices, int width, int height) {
            return mask_to_array(rasterize_polygon(polygon_from_list(vertices), width, height));
        },
        py::arg("vertices"), py::arg("width"), py::arg("height"));
    m.def(
        "trace_boundary",
        [](const py::array_t<bool, py::array::c_style | py::array::forcecast>& mask) {
            ContourPath p = trace_boundary(mask_from_array(mask));
            py::array_t<int> out({static_cast<py::ssize_t>(p.points.size()), py::ssize_t{2}});
            auto w = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < p.points.size(); ++i) {
                w(static_cast<py::ssize_t>(i), 0) = p.points[i].first;
                w(static_cast<py::ssize_t>(i), 1) = p.points[i].second;
            }
            return out;
        },
        py::arg("mask"));
    m.def(
        "gradient_magnitude",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& img) {
            return image_to_array(gradient_magnitude(image_from_array(img)));
        },
        py::arg("image"));
    m.def(
        "quantize",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& img,
           const py::array_t<bool, py::array::c_style | py::array::forcecast>& mask, int levels,
           double lo, double hi) {
            QuantizedPatch q = quantize(image_from_array(img), mask_from_array(mask), levels, lo, hi);
            py::array_t<int> out({q.mask.height, q.mask.width});
            std::memcpy(out.mutable_data(), q.codes.data(), sizeof(int) * q.codes.size());
            return out;
        },
        py::arg("image"), py::arg("mask"), py::arg("levels"), py::arg("lo"), py::arg("hi"));

    // features
    m.def(
        "extract_sequence_features",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& img,
           const std::vector<std::pair<double, double>>& vertices) {
            FeatureGroup g = extract_sequence_features(image_from_array(img),
                                                       polygon_from_list(vertices));
            py::dict d;
            d["names"] = g.names;
            d["values"] =
                vec_to_array(g.values);
            std::vector<bool> flags(g.flags.begin(), g.flags.end());
            d["flags"] = flags;
            return d;
        },
        py::arg("image"), py::arg("vertices"));
    m.def("profile_size", [] { return FeatureProfile::paper488().total(); });

    // shape helpers exposed for direct use
    m.def(
        "shape_features",
        [](const py::array_t<bool, py::array::c_style | py::array::forcecast>& mask) {
            RoiMask rm = mask_from_array(mask);
            FeatureGroup g = shape_features(rm, trace_boundary(rm));
            py::dict d;
            d["names"] = g.names;
            d["values"] =
                vec_to_array(g.values);
            return d;
        },
        py::arg("mask"));

    // elastic net
    m.def(
        "lambda_grid",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& X,
           const std::vector<double>& y, double alpha, int n_lambda, double eps) {
            return lambda_grid(design_from_array(X), y, alpha, n_lambda, eps);
        },
        py::arg("X"), py::arg("y"), py::arg("alpha") = 0.5, py::arg("n_lambda") = 100,
        py::arg("eps") = 0.01);
    m.def(
        "fit",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& X,
           const std::vector<double>& y, double alpha, double lam, const std::string& family) {
            PenaltyConfig cfg{alpha, lam};
            DesignMatrix d = design_from_array(X);
            Coefficients c = family_from_string(family) == Family::gaussian
                                 ? fit_gaussian(d, y, cfg)
                                 : fit_binomial(d, y, cfg);
            return coefficients_to_dict(c);
        },
        py::arg("X"), py::arg("y"), py::arg("alpha") = 0.5, py::arg("lambda") = 0.0,
        py::arg("family") = "binomial");
    m.def(
        "fit_path",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& X,
           const std::vector<double>& y, double alpha, const std::vector<double>& grid,
           const std::string& family) {
            ElasticNetPath p = fit_path(design_from_array(X), y, alpha, grid,
                                        family_from_string(family));
            py::list fits;
            for (const auto& c : p.fits) fits.append(coefficients_to_dict(c));
            py::dict d;
            d["alpha"] = p.alpha;
            d["lambda"] = p.lambdas;
            d["fits"] = fits;
            return d;
        },
        py::arg("X"), py::arg("y"), py::arg("alpha"), py::arg("grid"),
        py::arg("family") = "binomial");
    m.def(
        "predict",
        [](double intercept, const std::vector<double>& beta,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& X,
           const std::string& family) {
            Coefficients c;
            c.intercept = intercept;
            c.beta = beta;
            return predict(c, design_from_array(X), family_from_string(family));
        },
        py::arg("intercept"), py::arg("beta"), py::arg("X"), py::arg("family") = "binomial");

    // evaluation
    m.def(
        "roc_auc",
        [](const std::vector<double>& scores, const std::vector<int>& labels) {
            return auc(roc_curve(scores, labels));
        },
        py::arg("scores"), py::arg("labels"));
    m.def(
        "roc_points",
        [](const std::vector<double>& scores, const std::vector<int>& labels) {
            RocCurve c = roc_curve(scores, labels);
            py::dict d;
            d["fpr"] = c.fpr;
            d["tpr"] = c.tpr;
            d["thresholds"] = c.thresholds;
            return d;
        },
        py::arg("scores"), py::arg("labels"));
    m.def(
        "youden",
        [](const std::vector<double>& scores, const std::vector<int>& labels) {
            OperatingPoint p = youden_point(roc_curve(scores, labels));
            return py::make_tuple(p.sensitivity, p.specificity, p.threshold);
        },
        py::arg("scores"), py::arg("labels"));
    m.def(
        "stratified_folds",
        [](const std::vector<int>& labels, int k, std::uint64_t seed) {
            return stratified_folds(labels, k, seed).fold_of;
        },
        py::arg("labels"), py::arg("k") = 10, py::arg("seed") = 1);
    m.def(
        "cv_evaluate",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& X,
           const std::vector<int>& labels, const std::vector<std::string>& names, double alpha,
           int k, std::uint64_t seed, int n_lambda, double eps, bool paper_normalization) {
            FeatureMatrix m;
            m.labels = labels;
            m.values.resize(static_cast<std::size_t>(X.shape(0)) * static_cast<std::size_t>(X.shape(1)));
            std::memcpy(m.values.data(), X.data(), sizeof(double) * m.values.size());
            for (py::ssize_t i = 0; i < X.shape(0); ++i)
                m.patient_ids.push_back("p" + std::to_string(i));
            if (names.empty())
                for (py::ssize_t j = 0; j < X.shape(1); ++j)
                    m.column_names.push_back("f" + std::to_string(j));
            else
                m.column_names = names;
            m.flags.assign(m.values.size(), 0);

            CVConfig cfg;
            cfg.alpha = alpha;
            cfg.k = k;
            cfg.seed = seed;
            cfg.n_lambda = n_lambda;
            cfg.eps = eps;
            cfg.normalization = paper_normalization ? NormalizationMode::paper
                                                    : NormalizationMode::fold_local;
            CVResult cv = cv_evaluate(m, cfg);
            FeatureRanking r = rank_features(cv);

            py::dict d;
            d["auc"] = cv.best_auc;
            d["auc_by_lambda"] = cv.auc_by_lambda;
            d["lambda"] = cv.lambdas;
            d["best_lambda"] = cv.best_lambda;
            d["sensitivity"] = cv.operating_point.sensitivity;
            d["specificity"] = cv.operating_point.specificity;
            d["pooled_scores"] = cv.pooled_scores;
            d["nonzero_union"] = cv.nonzero_union;
            d["feature_names"] = cv.feature_names;
            d["rank"] = r.rank;
            d["mean_coefficient"] = r.mean_coefficient;
            d["selection_frequency"] = r.frequency;
            return d;
        },
        py::arg("X"), py::arg("labels"), py::arg("names") = std::vector<std::string>{},
        py::arg("alpha") = 0.5, py::arg("k") = 10, py::arg("seed") = 1, py::arg("n_lambda") = 100,
        py::arg("eps") = 0.01, py::arg("paper_normalization") = false);

    // synthetic cohort + cohort extraction
    m.def(
        "generate_phantom_cohort",
        [](const std::string& out_dir, int patients, double balance, int size,
           const std::string& effect, double noise, std::uint64_t seed) {
            PhantomConfig cfg = PhantomConfig::with_effect(effect);
            cfg.n_patients = patients;
            cfg.positive_fraction = balance;
            cfg.image_size = size;
            cfg.noise_std = noise;
            cfg.seed = seed;
            auto rows = generate_phantom_cohort(cfg, out_dir);
            return rows.size();
        },
        py::arg("out_dir"), py::arg("patients") = 40, py::arg("balance") = 0.5,
        py::arg("size") = 128, py::arg("effect") = "large", py::arg("noise") = 30.0,
        py::arg("seed") = 1);
    m.def(
        "extract_cohort",
        [](const std::string& manifest_path, int jobs) {
            auto manifest = read_manifest(manifest_path);
            ExtractionReport report;
            FeatureMatrix m = extract_cohort(
                manifest, std::filesystem::path(manifest_path).parent_path(), report, jobs);
            py::array_t<double> values(
                {static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
            std::memcpy(values.mutable_data(), m.values.data(), sizeof(double) * m.values.size());
            py::dict d;
            d["patient_ids"] = m.patient_ids;
            d["labels"] = m.labels;
            d["columns"] = m.column_names;
            d["values"] = values;
            d["n_failed"] = report.n_failed;
            return d;
        },
        py::arg("manifest"), py::arg("jobs") = 0);
}
