#pragma once

#include "mprad/feature_group.hpp"
#include "mprad/image.hpp"

namespace mprad {

// Centroid-to-boundary distance sampled at 360 uniformly spaced angles.
struct RadialSignature {
    std::vector<double> angles;    // radians, [0, 2*pi)
    std::vector<double> distances; // pixels
};

RadialSignature radial_signature(const RoiMask& mask, bool* center_moved = nullptr);

// 4*pi*A / P^2 with a corner-corrected chain-code perimeter.
double compactness(const RoiMask& mask, const ContourPath& contour);

// sqrt(1 - lambda2/lambda1) from the pixel-coordinate covariance.
double eccentricity(const RoiMask& mask);

// Mean absolute deviation of the radial signature from its circular moving
// average (window 9), normalized by the mean radius.
double roughness(const RadialSignature& sig);

// Disc-coverage fraction stats at radii {0.1, 0.2, 0.3, 0.4} * r_eq (16 values).
FeatureGroup laii_stats(const RoiMask& mask, const ContourPath& contour);

// Statistics of the normalized radial distance signature (10 values).
FeatureGroup radial_distance_features(const RoiMask& mask, const ContourPath& contour);

// All shape features in profile order (29 values).
FeatureGroup shape_features(const RoiMask& mask, const ContourPath& contour);

} // namespace mprad
