#pragma once

#include "mprad/feature_group.hpp"
#include "mprad/image.hpp"

namespace mprad {

// Basic sample statistics used across the feature families.
double mean_of(const std::vector<double>& v);
double median_of(std::vector<double> v);            // takes a copy, sorts
double stddev_pop(const std::vector<double>& v);    // population (n) denominator
// linear-interpolation percentile, p in [0, 100]
double percentile(std::vector<double> v, double p); // takes a copy, sorts
// Shannon entropy (natural log) of an equal-width histogram of v over [lo, hi]
double histogram_entropy(const std::vector<double>& v, int bins, double lo, double hi);

std::vector<double> mask_values(const Image2D& img, const RoiMask& mask);

// mean, median [InsM], entropy, 3x [Pixvalue], 9x [Diff]  (15 values)
FeatureGroup intensity_features(const Image2D& img, const RoiMask& mask);

// 128 normalized equal-width bins over [lo, hi]
FeatureGroup histogram_features(const Image2D& img, const RoiMask& mask, double lo, double hi);

// 59-bin uniform LBP histogram (58 uniform patterns + catch-all)
FeatureGroup lbp_features(const Image2D& img, const RoiMask& mask);

// 5 gradient-sharpness stats along the contour + 32-bin band histogram
FeatureGroup edge_features(const Image2D& img, const RoiMask& mask, const ContourPath& contour,
                           double lo, double hi);

} // namespace mprad
