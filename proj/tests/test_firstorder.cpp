#include <doctest.h>

#include <cmath>

#include "mprad/errors.hpp"
#include "mprad/firstorder.hpp"
#include "mprad/rng.hpp"
#include "oracles.hpp"

using namespace mprad;

namespace {

Image2D constant_image(int size, double v) { return Image2D(size, size, v); }

} // namespace

TEST_CASE("intensity: constant image collapses everything") {
    Image2D img = constant_image(64, 42.0);
    RoiMask m = oracles::disc_mask(64, 32.0, 32.0, 10.0);
    FeatureGroup g = intensity_features(img, m);
    REQUIRE(g.size() == 15);
    CHECK(g.values[0] == doctest::Approx(42.0)); // mean
    CHECK(g.values[1] == doctest::Approx(42.0)); // median
    CHECK(g.values[2] == doctest::Approx(0.0));  // entropy
    for (int i = 3; i < 15; ++i) CHECK(g.values[static_cast<std::size_t>(i)] == doctest::Approx(0.0));
}

TEST_CASE("intensity: lesion 200 over background 100 gives Diff +100 at all scales") {
    Image2D img = constant_image(96, 100.0);
    RoiMask m = oracles::disc_mask(96, 48.0, 48.0, 12.0);
    for (int y = 0; y < 96; ++y)
        for (int x = 0; x < 96; ++x)
            if (m.at(x, y)) img.at(x, y) = 200.0;
    FeatureGroup g = intensity_features(img, m);
    for (int s = 0; s < 3; ++s) {
        CHECK(g.values[static_cast<std::size_t>(6 + 3 * s)] == doctest::Approx(100.0));     // mean diff
        CHECK(g.values[static_cast<std::size_t>(7 + 3 * s)] == doctest::Approx(100.0));     // median diff
        CHECK(g.values[static_cast<std::size_t>(8 + 3 * s)] == doctest::Approx(0.0));       // std diff
    }
}

TEST_CASE("intensity: four equal-count distinct values give entropy ln 4") {
    Image2D img(4, 2);
    img.data = {1.0, 2.0, 3.0, 4.0, 1.0, 2.0, 3.0, 4.0};
    RoiMask m(4, 2);
    for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 4; ++x) m.set(x, y);
    FeatureGroup g = intensity_features(img, m);
    CHECK(g.values[2] == doctest::Approx(std::log(4.0)).epsilon(1e-9));
}

TEST_CASE("intensity features ignore pixels beyond the widest ring") {
    Image2D img(96, 96, 10.0);
    RoiMask m = oracles::disc_mask(96, 48.0, 48.0, 10.0);
    FeatureGroup before = intensity_features(img, m);
    img.at(0, 0) = 1e6; // far corner, outside mask and rings
    FeatureGroup after = intensity_features(img, m);
    // Pixvalue thresholds use whole-image percentiles, so exclude them from
    // the locality check; everything else must be untouched
    for (std::size_t i = 0; i < before.size(); ++i) {
        if (before.names[i].rfind("Pixvalue", 0) == 0) continue;
        CHECK(before.values[i] == after.values[i]);
    }
}

TEST_CASE("intensity: Diff and entropy are invariant to a constant offset") {
    Rng rng(61);
    Image2D img(96, 96);
    for (double& v : img.data) v = rng.uniform(100.0, 300.0);
    RoiMask m = oracles::disc_mask(96, 48.0, 48.0, 12.0);
    FeatureGroup a = intensity_features(img, m);
    Image2D shifted = img;
    for (double& v : shifted.data) v += 500.0;
    FeatureGroup b = intensity_features(shifted, m);
    for (std::size_t i = 0; i < a.size(); ++i) {
        bool diff = a.names[i].rfind("Diff", 0) == 0;
        bool entropy = a.names[i] == "Entropy";
        if (diff || entropy)
            CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-9));
    }
    CHECK(b.values[0] == doctest::Approx(a.values[0] + 500.0)); // mean shifts
}

TEST_CASE("intensity: Pixvalue uses strict inequality against whole-image percentiles") {
    Image2D img(10, 10, 5.0);
    RoiMask m = oracles::rect_mask(10, 2, 2, 7, 7);
    FeatureGroup g = intensity_features(img, m);
    CHECK(g.values[3] == doctest::Approx(0.0));
    CHECK(g.values[4] == doctest::Approx(0.0));
    CHECK(g.values[5] == doctest::Approx(0.0));
}

TEST_CASE("histogram: constant at lo lands in bin 0") {
    Image2D img = constant_image(16, 2.0);
    RoiMask m = oracles::rect_mask(16, 4, 4, 10, 10);
    FeatureGroup g = histogram_features(img, m, 2.0, 10.0);
    REQUIRE(g.size() == 128);
    CHECK(g.values[0] == doctest::Approx(1.0));
    double sum = 0.0;
    for (double v : g.values) sum += v;
    CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("histogram: bins approach uniform for uniform intensities") {
    Rng rng(42);
    Image2D img(1000, 1000);
    for (double& v : img.data) v = rng.uniform(0.0, 1.0);
    RoiMask m(1000, 1000);
    for (auto& b : m.bits) b = 1;
    FeatureGroup g = histogram_features(img, m, 0.0, 1.0);
    // independent counting pass
    std::vector<double> counts(128, 0.0);
    for (double v : img.data) {
        int b = std::min(127, static_cast<int>(v * 128.0));
        counts[static_cast<std::size_t>(b)] += 1.0;
    }
    for (std::size_t b = 0; b < 128; ++b) {
        CHECK(std::fabs(g.values[b] - 1.0 / 128.0) < 0.002);
        CHECK(g.values[b] == doctest::Approx(counts[b] / 1e6));
    }
}

TEST_CASE("histogram: degenerate range is rejected") {
    Image2D img = constant_image(8, 1.0);
    RoiMask m = oracles::rect_mask(8, 1, 1, 6, 6);
    CHECK_THROWS_AS(histogram_features(img, m, 3.0, 3.0), DegenerateRangeError);
}

TEST_CASE("histogram groups shift with a constant offset") {
    Rng rng(5);
    Image2D img(32, 32);
    for (double& v : img.data) v = rng.uniform(10.0, 20.0);
    RoiMask m = oracles::disc_mask(32, 16.0, 16.0, 9.0);
    FeatureGroup a = histogram_features(img, m, 10.0, 20.0);
    Image2D shifted = img;
    for (double& v : shifted.data) v += 100.0;
    FeatureGroup b = histogram_features(shifted, m, 110.0, 120.0);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.values[i] == doctest::Approx(b.values[i]));
}

TEST_CASE("lbp: constant image fires every bit (ties count as 1)") {
    Image2D img = constant_image(16, 9.0);
    RoiMask m = oracles::rect_mask(16, 4, 4, 11, 11);
    FeatureGroup g = lbp_features(img, m);
    REQUIRE(g.size() == 59);
    double sum = 0.0;
    for (double v : g.values) sum += v;
    CHECK(sum == doctest::Approx(1.0));
    // code 255 is the last uniform pattern in ascending order -> bin 57
    CHECK(g.values[57] == doctest::Approx(1.0));
}

TEST_CASE("lbp: bright isolated center maps to code 0") {
    Image2D img = constant_image(9, 0.0);
    img.at(4, 4) = 10.0;
    RoiMask m(9, 9);
    m.set(4, 4);
    FeatureGroup g = lbp_features(img, m);
    CHECK(g.values[0] == doctest::Approx(1.0)); // code 0 is the first uniform bin
}

TEST_CASE("lbp histogram sums to one on random content") {
    Rng rng(3);
    Image2D img(32, 32);
    for (double& v : img.data) v = rng.uniform(0.0, 1.0);
    RoiMask m = oracles::disc_mask(32, 16.0, 16.0, 10.0);
    FeatureGroup g = lbp_features(img, m);
    double sum = 0.0;
    for (double v : g.values) sum += v;
    CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("edge: constant image has zero sharpness everywhere") {
    Image2D img = constant_image(32, 5.0);
    RoiMask m = oracles::disc_mask(32, 16.0, 16.0, 8.0);
    ContourPath c = trace_boundary(m);
    FeatureGroup g = edge_features(img, m, c, 0.0, 10.0);
    REQUIRE(g.size() == 37);
    for (int i = 0; i < 5; ++i) CHECK(g.values[static_cast<std::size_t>(i)] == doctest::Approx(0.0));
    double sum = 0.0;
    for (std::size_t i = 5; i < 37; ++i) sum += g.values[i];
    CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("edge: step lesion has strictly positive sharpness along the contour") {
    Image2D img = constant_image(64, 0.0);
    RoiMask m = oracles::rect_mask(64, 20, 20, 44, 44);
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x)
            if (m.at(x, y)) img.at(x, y) = 100.0;
    ContourPath c = trace_boundary(m);
    FeatureGroup g = edge_features(img, m, c, 0.0, 100.0);
    CHECK(g.values[0] > 0.0); // mean
    CHECK(g.values[2] > 0.0); // min
}
