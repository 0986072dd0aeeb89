#include "mprad/synth.hpp"

#include <algorithm>
#include <cmath>

#include "mprad/errors.hpp"
#include "mprad/rng.hpp"

namespace mprad {

namespace {

constexpr double kPi = 3.14159265358979323846;

// separable 3x3 box blur, `passes` times
void box_blur(Image2D& img, int passes) {
    for (int pass = 0; pass < passes; ++pass) {
        Image2D tmp(img.width, img.height);
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x) {
                double s = 0.0;
                for (int dx = -1; dx <= 1; ++dx)
                    s += img.at(std::clamp(x + dx, 0, img.width - 1), y);
                tmp.at(x, y) = s / 3.0;
            }
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x) {
                double s = 0.0;
                for (int dy = -1; dy <= 1; ++dy)
                    s += tmp.at(x, std::clamp(y + dy, 0, img.height - 1));
                img.at(x, y) = s / 3.0;
            }
    }
}

Image2D noise_field(int size, double sd, Rng& rng, int blur_passes) {
    Image2D img(size, size);
    for (double& v : img.data) v = rng.normal(0.0, sd);
    box_blur(img, blur_passes);
    return img;
}

struct LesionGeometry {
    double cx, cy;     // center
    double a, b;       // ellipse semi-axes
    double phi;        // orientation
    double lf_amp;     // low-frequency irregularity (class-independent)
    int lf_cycles;
    double lf_phase;
    double mf_amp;     // medium-frequency irregularity (class-independent)
    int mf_cycles;
    double mf_phase;
    double um_amp;     // upper-mid band just below the class effect
    int um_cycles;
    double um_phase;
    double hf_amp;     // high-frequency perturbation (class effect, DWI only)
    int hf_cycles;
    double hf_phase;
};

RoiPolygon lesion_polygon(const LesionGeometry& g, bool perturbed) {
    RoiPolygon poly;
    constexpr int kVertices = 360;
    poly.vertices.reserve(kVertices);
    for (int k = 0; k < kVertices; ++k) {
        double theta = 2.0 * kPi * k / kVertices;
        double t = theta - g.phi;
        double denom = std::hypot(g.b * std::cos(t), g.a * std::sin(t));
        double r = g.a * g.b / denom;
        double mod = 1.0 + g.lf_amp * std::sin(g.lf_cycles * theta + g.lf_phase) +
                     g.mf_amp * std::sin(g.mf_cycles * theta + g.mf_phase) +
                     g.um_amp * std::sin(g.um_cycles * theta + g.um_phase);
        if (perturbed) mod += g.hf_amp * std::sin(g.hf_cycles * theta + g.hf_phase);
        r *= std::max(0.2, mod);
        poly.vertices.push_back({g.cx + r * std::cos(theta), g.cy + r * std::sin(theta)});
    }
    return poly;
}

void clamp_image(Image2D& img) {
    for (double& v : img.data) v = std::clamp(std::round(v), 0.0, 4095.0);
}

} // namespace

PhantomConfig PhantomConfig::with_effect(const std::string& level) {
    PhantomConfig cfg;
    if (level == "none") {
        cfg.negative = {0.05, 0.5, 0.0};
        cfg.positive = {0.05, 0.5, 0.0};
    } else if (level == "small") {
        cfg.negative = {0.05, 0.56, 0.0};
        cfg.positive = {0.10, 0.44, -40.0};
    } else if (level == "large") {
        cfg.negative = {0.06, 0.74, 0.0};
        cfg.positive = {0.18, 0.26, 0.0};
    } else {
        throw Error("unknown effect level: " + level);
    }
    return cfg;
}

std::vector<ManifestRow> generate_phantom_cohort(const PhantomConfig& cfg,
                                                 const std::filesystem::path& outdir) {
    if (cfg.n_patients < 20) throw Error("phantom cohort needs at least 20 patients");
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) throw IoError("cannot create " + outdir.string());

    int n_pos = static_cast<int>(std::lround(cfg.n_patients * cfg.positive_fraction));
    n_pos = std::clamp(n_pos, 1, cfg.n_patients - 1);
    int size = cfg.image_size;
    Rng master(cfg.seed);

    std::vector<ManifestRow> rows;
    for (int i = 0; i < cfg.n_patients; ++i) {
        Rng rng = master.substream(static_cast<std::uint64_t>(i));
        int label = i < n_pos ? 1 : 0;
        const ClassEffect& eff = label ? cfg.positive : cfg.negative;

        LesionGeometry g;
        g.cx = size / 2.0 + rng.uniform(-6.0, 6.0);
        g.cy = size / 2.0 + rng.uniform(-6.0, 6.0);
        g.a = rng.uniform(13.0, 20.0);
        g.b = g.a * rng.uniform(0.6, 0.95);
        g.phi = rng.uniform(0.0, kPi);
        g.lf_amp = rng.uniform(0.0, 0.12);
        g.lf_cycles = 2 + static_cast<int>(rng.below(3));
        g.lf_phase = rng.uniform(0.0, 2.0 * kPi);
        // class-independent mid-frequency irregularity: boundary noise that
        // perimeter- and coverage-type descriptors see but the smoothed
        // roughness signature filters out
        g.mf_amp = rng.uniform(0.0, 0.25);
        g.mf_cycles = 7 + static_cast<int>(rng.below(5));
        g.mf_phase = rng.uniform(0.0, 2.0 * kPi);
        g.um_amp = rng.uniform(0.0, 0.15);
        g.um_cycles = 13 + static_cast<int>(rng.below(5));
        g.um_phase = rng.uniform(0.0, 2.0 * kPi);
        // wide patient-level spread keeps the classes overlapping
        g.hf_amp = std::max(0.005,
                            rng.normal(eff.boundary_amplitude, 0.005 + 0.25 * eff.boundary_amplitude));
        g.hf_cycles = 19 + static_cast<int>(rng.below(5));
        g.hf_phase = rng.uniform(0.0, 2.0 * kPi);

        char idbuf[16];
        std::snprintf(idbuf, sizeof idbuf, "P%04d", i + 1);
        ManifestRow row;
        row.patient_id = idbuf;
        row.label = label;

        const char* seq_tags[3] = {"adc", "dwi", "t2"};
        for (int s = 0; s < 3; ++s) {
            bool is_dwi = s == 1;
            // the sequences are deliberately unregistered: each gets its own
            // small center offset
            LesionGeometry gs = g;
            gs.cx += rng.uniform(-2.0, 2.0);
            gs.cy += rng.uniform(-2.0, 2.0);
            RoiPolygon poly = lesion_polygon(gs, is_dwi);
            RoiMask mask = rasterize_polygon(poly, size, size);

            double bg_level = s == 0 ? 1500.0 : (s == 1 ? 700.0 : 1000.0);
            double lesion_level = s == 0 ? 1000.0 + eff.adc_offset : (s == 1 ? 1250.0 : 1150.0);

            Image2D img = noise_field(size, cfg.noise_std, rng, 1);
            for (double& v : img.data) v += bg_level;

            Image2D texture(size, size);
            if (s == 2) {
                // T2 texture: class-dependent length scale via a fine/smooth
                // blend; quantization later removes pure amplitude effects
                double amp = rng.uniform(120.0, 180.0);
                double smoothness =
                    std::clamp(rng.uniform(eff.texture_smoothness - 0.25,
                                           eff.texture_smoothness + 0.25),
                               0.0, 1.0);
                Image2D fine = noise_field(size, amp, rng, 0);
                Image2D smooth = noise_field(size, amp, rng, 2);
                // blurring shrinks the std; rescale so the blend only changes
                // the correlation length
                double ss = 0.0;
                for (double v : smooth.data) ss += v * v;
                double gain = amp / std::sqrt(ss / static_cast<double>(smooth.data.size()));
                texture = Image2D(size, size);
                for (std::size_t i = 0; i < texture.data.size(); ++i)
                    texture.data[i] =
                        (1.0 - smoothness) * fine.data[i] + smoothness * gain * smooth.data[i];
            } else {
                texture = noise_field(size, cfg.noise_std, rng, 1);
            }
            for (int y = 0; y < size; ++y)
                for (int x = 0; x < size; ++x)
                    if (mask.at(x, y)) img.at(x, y) = lesion_level + texture.at(x, y);

            // fine acquisition noise everywhere
            for (double& v : img.data) v += rng.normal(0.0, cfg.noise_std / 3.0);
            clamp_image(img);

            std::string img_name = row.patient_id + std::string("_") + seq_tags[s] + ".pgm";
            std::string roi_name = row.patient_id + std::string("_") + seq_tags[s] + "_roi.json";
            write_pgm(outdir / img_name, img);
            write_roi_json(outdir / roi_name, poly);
            row.image_paths[static_cast<std::size_t>(s)] = img_name;
            row.roi_paths[static_cast<std::size_t>(s)] = roi_name;
        }
        rows.push_back(std::move(row));
    }
    write_manifest(outdir / "manifest.csv", rows);
    return rows;
}

} // namespace mprad
