#include "mprad/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mprad/errors.hpp"

namespace mprad {

namespace {

using nlohmann::json;

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

Image2D read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());

    auto next_token = [&in, &path]() {
        std::string tok;
        while (true) {
            int c = in.get();
            if (c == EOF) throw IoError("truncated PGM header: " + path.string());
            if (c == '#') {
                std::string skip;
                std::getline(in, skip);
                continue;
            }
            if (std::isspace(c)) {
                if (!tok.empty()) return tok;
                continue;
            }
            tok.push_back(static_cast<char>(c));
        }
    };

    if (next_token() != "P5") throw IoError("not a binary PGM (P5): " + path.string());
    int width = std::stoi(next_token());
    int height = std::stoi(next_token());
    int maxval = std::stoi(next_token());
    if (width < 1 || height < 1 || maxval < 1 || maxval > 65535)
        throw IoError("bad PGM header: " + path.string());
    // header terminates with exactly one whitespace byte (already consumed)

    Image2D img(width, height);
    std::size_t count = img.size();
    if (maxval < 256) {
        std::vector<unsigned char> buf(count);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in.gcount()) != count)
            throw IoError("truncated PGM data: " + path.string());
        for (std::size_t i = 0; i < count; ++i) img.data[i] = buf[i];
    } else {
        std::vector<unsigned char> buf(count * 2);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(count * 2));
        if (static_cast<std::size_t>(in.gcount()) != count * 2)
            throw IoError("truncated PGM data: " + path.string());
        for (std::size_t i = 0; i < count; ++i)
            img.data[i] = static_cast<double>(buf[2 * i] << 8 | buf[2 * i + 1]);
    }
    return img;
}

void write_pgm(const std::filesystem::path& path, const Image2D& img, int maxval) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "P5\n" << img.width << " " << img.height << "\n" << maxval << "\n";
    if (maxval < 256) {
        for (double v : img.data) {
            int q = std::clamp(static_cast<int>(std::lround(v)), 0, maxval);
            out.put(static_cast<char>(q));
        }
    } else {
        for (double v : img.data) {
            int q = std::clamp(static_cast<int>(std::lround(v)), 0, maxval);
            out.put(static_cast<char>((q >> 8) & 0xff));
            out.put(static_cast<char>(q & 0xff));
        }
    }
    if (!out) throw IoError("short write: " + path.string());
}

Image2D read_csv_image(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        for (const auto& f : split_csv_line(line)) row.push_back(std::stod(f));
        if (!rows.empty() && row.size() != rows.front().size())
            throw MalformedCsvError("ragged image grid: " + path.string());
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw MalformedCsvError("empty image grid: " + path.string());
    Image2D img(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()));
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) img.at(x, y) = rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
    return img;
}

Image2D read_image(const std::filesystem::path& path) {
    return path.extension() == ".pgm" ? read_pgm(path) : read_csv_image(path);
}

RoiPolygon read_roi_json(const std::filesystem::path& path) {
    json j = json::parse(slurp(path));
    if (!j.is_array()) throw IoError("ROI JSON must be an array of [x,y] pairs: " + path.string());
    RoiPolygon poly;
    for (const auto& v : j) {
        if (!v.is_array() || v.size() != 2)
            throw IoError("ROI JSON must be an array of [x,y] pairs: " + path.string());
        poly.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return poly;
}

void write_roi_json(const std::filesystem::path& path, const RoiPolygon& poly) {
    json j = json::array();
    for (const auto& [x, y] : poly.vertices) j.push_back({x, y});
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump() << "\n";
}

std::vector<ManifestRow> read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw MalformedCsvError("empty manifest: " + path.string());
    auto header = split_csv_line(line);

    auto col = [&header](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : static_cast<int>(it - header.begin());
    };
    int c_id = col("patient_id");
    int c_label = col("label");
    int c_gleason = col("gleason");
    int c_img[3] = {col("adc_image"), col("dwi_image"), col("t2_image")};
    int c_roi[3] = {col("adc_roi"), col("dwi_roi"), col("t2_roi")};
    if (c_id < 0 || (c_label < 0 && c_gleason < 0))
        throw MalformedCsvError("manifest needs patient_id and label or gleason columns");
    for (int s = 0; s < 3; ++s)
        if (c_img[s] < 0 || c_roi[s] < 0)
            throw MalformedCsvError("manifest is missing an image/roi column");

    std::vector<ManifestRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() < header.size()) throw MalformedCsvError("short manifest row");
        ManifestRow r;
        r.patient_id = f[static_cast<std::size_t>(c_id)];
        if (c_gleason >= 0 && !f[static_cast<std::size_t>(c_gleason)].empty()) {
            // gleason supersedes label: aggressive = score >= 7
            r.label = std::stoi(f[static_cast<std::size_t>(c_gleason)]) >= 7 ? 1 : 0;
        } else if (c_label >= 0) {
            r.label = std::stoi(f[static_cast<std::size_t>(c_label)]);
        }
        if (r.label != 0 && r.label != 1)
            throw MalformedCsvError("label must be 0/1 for patient " + r.patient_id);
        for (int s = 0; s < 3; ++s) {
            r.image_paths[static_cast<std::size_t>(s)] = f[static_cast<std::size_t>(c_img[s])];
            r.roi_paths[static_cast<std::size_t>(s)] = f[static_cast<std::size_t>(c_roi[s])];
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_manifest(const std::filesystem::path& path, const std::vector<ManifestRow>& rows) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "patient_id,label,adc_image,adc_roi,dwi_image,dwi_roi,t2_image,t2_roi\n";
    for (const auto& r : rows) {
        out << r.patient_id << "," << r.label;
        for (int s = 0; s < 3; ++s)
            out << "," << r.image_paths[static_cast<std::size_t>(s)] << ","
                << r.roi_paths[static_cast<std::size_t>(s)];
        out << "\n";
    }
}

namespace {

void write_double(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

} // namespace

void write_features_csv(const std::filesystem::path& path, const FeatureMatrix& m) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "patient_id,label";
    for (const auto& n : m.column_names) out << "," << n;
    out << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << m.patient_ids[i] << "," << m.labels[i];
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out << ",";
            write_double(out, m.at(i, j));
        }
        out << "\n";
    }
    if (!out) throw IoError("short write: " + path.string());
}

FeatureMatrix read_features_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw MalformedCsvError("empty features file");
    auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "patient_id" || header[1] != "label")
        throw MalformedCsvError("features CSV must start with patient_id,label columns");

    FeatureMatrix m;
    m.column_names.assign(header.begin() + 2, header.end());
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != header.size()) throw MalformedCsvError("ragged features row");
        m.patient_ids.push_back(f[0]);
        int label = std::stoi(f[1]);
        if (label != 0 && label != 1) throw MalformedCsvError("label must be 0/1");
        m.labels.push_back(label);
        for (std::size_t j = 2; j < f.size(); ++j) {
            double v = std::stod(f[j]);
            if (!std::isfinite(v)) throw MalformedCsvError("non-finite feature value");
            m.values.push_back(v);
        }
    }
    if (m.patient_ids.empty()) throw MalformedCsvError("features CSV has no rows");
    m.flags.assign(m.values.size(), 0);
    return m;
}

void write_norm_params_json(const std::filesystem::path& path, const NormParams& params) {
    json j;
    j["columns"] = params.column_names;
    j["means"] = params.means;
    j["stds"] = params.stds;
    j["dropped_columns"] = params.dropped_columns;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

void write_path_json(const std::filesystem::path& path, const ElasticNetPath& p,
                     const std::vector<std::string>& names, std::size_t best_index) {
    json j;
    j["alpha"] = p.alpha;
    j["family"] = p.family == Family::binomial ? "binomial" : "gaussian";
    j["lambda"] = p.lambdas;
    j["feature_names"] = names;
    j["best_lambda_index"] = best_index;
    json fits = json::array();
    for (std::size_t l = 0; l < p.fits.size(); ++l) {
        const auto& c = p.fits[l];
        json fit;
        fit["lambda"] = p.lambdas[l];
        fit["intercept"] = c.intercept;
        fit["converged"] = c.converged;
        json idx = json::array(), val = json::array();
        for (std::size_t k = 0; k < c.beta.size(); ++k)
            if (c.beta[k] != 0.0) {
                idx.push_back(k);
                val.push_back(c.beta[k]);
            }
        fit["nonzero_index"] = idx;
        fit["nonzero_value"] = val;
        fits.push_back(std::move(fit));
    }
    j["fits"] = std::move(fits);
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

ElasticNetPath read_path_json(const std::filesystem::path& path, std::vector<std::string>& names,
                              std::size_t& best_index) {
    json j = json::parse(slurp(path));
    ElasticNetPath p;
    p.alpha = j.at("alpha").get<double>();
    p.family = j.at("family").get<std::string>() == "gaussian" ? Family::gaussian : Family::binomial;
    p.lambdas = j.at("lambda").get<std::vector<double>>();
    names = j.at("feature_names").get<std::vector<std::string>>();
    best_index = j.at("best_lambda_index").get<std::size_t>();
    for (const auto& fit : j.at("fits")) {
        Coefficients c;
        c.intercept = fit.at("intercept").get<double>();
        c.converged = fit.at("converged").get<bool>();
        c.beta.assign(names.size(), 0.0);
        auto idx = fit.at("nonzero_index").get<std::vector<std::size_t>>();
        auto val = fit.at("nonzero_value").get<std::vector<double>>();
        for (std::size_t k = 0; k < idx.size(); ++k) c.beta[idx[k]] = val[k];
        p.fits.push_back(std::move(c));
    }
    return p;
}

void write_roc_csv(const std::filesystem::path& path, const RocCurve& curve) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "fpr,tpr,threshold\n";
    for (std::size_t k = 0; k < curve.fpr.size(); ++k) {
        write_double(out, curve.fpr[k]);
        out << ",";
        write_double(out, curve.tpr[k]);
        out << ",";
        write_double(out, curve.thresholds[k]);
        out << "\n";
    }
}

void write_auc_by_lambda_csv(const std::filesystem::path& path, const CVResult& cv) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "lambda,auc\n";
    for (std::size_t l = 0; l < cv.lambdas.size(); ++l) {
        write_double(out, cv.lambdas[l]);
        out << ",";
        write_double(out, cv.auc_by_lambda[l]);
        out << "\n";
    }
}

void write_ranking_csv(const std::filesystem::path& path, const FeatureRanking& r) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "name,mean_coef,rank,frequency\n";
    // rows ordered by rank
    std::vector<std::size_t> order(r.names.size());
    for (std::size_t j = 0; j < r.names.size(); ++j)
        order[static_cast<std::size_t>(r.rank[j] - 1)] = j;
    for (std::size_t j : order) {
        out << r.names[j] << ",";
        write_double(out, r.mean_coefficient[j]);
        out << "," << r.rank[j] << ",";
        write_double(out, r.frequency[j]);
        out << "\n";
    }
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& rows) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "lambda,feature,coefficient\n";
    for (const auto& row : rows) {
        write_double(out, row.lambda);
        out << "," << row.feature << ",";
        write_double(out, row.coefficient);
        out << "\n";
    }
}

} // namespace mprad
