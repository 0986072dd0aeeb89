#include "mprad/features.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "mprad/errors.hpp"
#include "mprad/firstorder.hpp"
#include "mprad/shape.hpp"
#include "mprad/texture.hpp"

namespace mprad {

const FeatureProfile& FeatureProfile::paper488() {
    static const FeatureProfile profile = [] {
        FeatureProfile p;
        p.profile_name = "paper-488";
        p.families = {
            {"intensity", 15}, {"histogram", 128}, {"lbp", 59},  {"haralick", 104},
            {"gabor", 48},     {"rlm", 44},        {"haar", 16}, {"daubechies", 8},
            {"edge", 37},      {"shape", 29},
        };
        if (p.total() != 488) throw std::logic_error("paper-488 profile must total 488 entries");
        return p;
    }();
    return profile;
}

namespace {

FeatureGroup run_family(const std::string& name, const Image2D& img, const RoiMask& mask,
                        const ContourPath& contour, const QuantizedPatch& q, double img_lo,
                        double img_hi, const FeatureGroup& hist) {
    if (name == "intensity") return intensity_features(img, mask);
    if (name == "histogram") return histogram_features(img, mask, img_lo, img_hi);
    if (name == "lbp") return lbp_features(img, mask);
    if (name == "haralick") return haralick_features(q);
    if (name == "gabor") return gabor_features(img, mask);
    if (name == "rlm") return rlm_features(q);
    if (name == "haar") return haar_features(img, mask);
    if (name == "daubechies") {
        if (!hist.values.empty()) return daubechies_histogram_features(hist.values);
        return daubechies_histogram_features(histogram_features(img, mask, img_lo, img_hi).values);
    }
    if (name == "edge") return edge_features(img, mask, contour, img_lo, img_hi);
    if (name == "shape") return shape_features(mask, contour);
    throw std::logic_error("unknown feature family: " + name);
}

// Canonical per-family feature names, derived once from a fixture so imputed
// placeholders keep the same column names as successful extractions.
const std::vector<std::string>& canonical_names(const std::string& family) {
    static const auto all = [] {
        Image2D img(32, 32);
        RoiMask mask(32, 32);
        for (int y = 0; y < 32; ++y)
            for (int x = 0; x < 32; ++x) {
                img.at(x, y) = ((x * 7 + y * 13) % 29) * 1.0;
                if ((x - 16) * (x - 16) + (y - 16) * (y - 16) <= 81) mask.set(x, y);
            }
        ContourPath contour = trace_boundary(mask);
        QuantizedPatch q = quantize(img, mask, kTextureGrayLevels, 0.0, 29.0);
        std::vector<std::pair<std::string, std::vector<std::string>>> out;
        for (const auto& f : FeatureProfile::paper488().families) {
            FeatureGroup g = run_family(f.name, img, mask, contour, q, 0.0, 29.0, {});
            out.push_back({f.name, g.names});
        }
        return out;
    }();
    for (const auto& [name, names] : all)
        if (name == family) return names;
    throw std::logic_error("unknown feature family: " + family);
}

FeatureGroup placeholder_group(const std::string& family) {
    FeatureGroup g;
    for (const auto& n : canonical_names(family)) g.add(n, 0.0, true);
    return g;
}

} // namespace

FeatureGroup extract_sequence_features_masked(const Image2D& img, const RoiMask& mask,
                                              const FeatureProfile& profile) {
    if (mask.area() == 0) throw EmptyRoiError();
    ContourPath contour = trace_boundary(mask);

    // per-image robust range for the intensity histograms
    std::vector<double> whole = img.data;
    double img_lo = percentile(whole, 1.0);
    double img_hi = percentile(whole, 99.0);
    if (img_hi <= img_lo) img_hi = img_lo + 1.0;

    // in-mask robust range for the shared texture quantization
    std::vector<double> lesion = mask_values(img, mask);
    double les_lo = percentile(lesion, 1.0);
    double les_hi = percentile(lesion, 99.0);
    if (les_hi <= les_lo) les_hi = les_lo + 1.0;
    QuantizedPatch q = quantize(img, mask, kTextureGrayLevels, les_lo, les_hi);

    FeatureGroup hist; // reused by the daubechies family

    FeatureGroup out;
    for (const auto& family : profile.families) {
        FeatureGroup g;
        try {
            g = run_family(family.name, img, mask, contour, q, img_lo, img_hi, hist);
            if (family.name == "histogram") hist = g;
        } catch (const Error&) {
            g = placeholder_group(family.name);
        }
        if (g.size() != family.count)
            throw std::logic_error("family " + family.name + " emitted " +
                                   std::to_string(g.size()) + " values, profile declares " +
                                   std::to_string(family.count));
        out.append(g);
    }
    assert(out.size() == profile.total());
    return out;
}

FeatureGroup extract_sequence_features(const Image2D& img, const RoiPolygon& roi,
                                       const FeatureProfile& profile) {
    RoiMask mask = rasterize_polygon(roi, img.width, img.height);
    return extract_sequence_features_masked(img, mask, profile);
}

} // namespace mprad
