#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mprad {

// Single-channel 2D intensity raster, row-major.
struct Image2D {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Image2D() = default;
    Image2D(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    std::size_t size() const { return data.size(); }
};

// Lesion outline in pixel units; implicitly closed, >= 3 vertices.
struct RoiPolygon {
    std::vector<std::pair<double, double>> vertices;
};

// Per-pixel boolean lesion region.
struct RoiMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    RoiMask() = default;
    RoiMask(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

    bool at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v = true) { bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    std::size_t area() const;
    // bounding box as (x0, y0, x1, y1) inclusive; requires nonempty mask
    void bounding_box(int& x0, int& y0, int& x1, int& y1) const;
};

// Closed boundary loop; consecutive points 8-adjacent, counterclockwise in
// a y-up frame.
struct ContourPath {
    std::vector<std::pair<int, int>> points;
};

// Gray-level codes in [0, levels) defined on in-mask pixels only.
struct QuantizedPatch {
    int levels = 0;
    std::vector<int> codes; // full-raster layout, -1 outside the mask
    RoiMask mask;

    int code(int x, int y) const { return codes[static_cast<std::size_t>(y) * mask.width + x]; }
};

// Pixel is true iff its center (integer coordinates) is inside the polygon
// under the even-odd rule.
RoiMask rasterize_polygon(const RoiPolygon& poly, int width, int height);

// Moore-neighbor tracing with Jacob's stopping criterion.
ContourPath trace_boundary(const RoiMask& mask);

// dilate(mask, width_px) AND NOT mask, Euclidean disc structuring element.
RoiMask ring_region(const RoiMask& mask, int width_px);

// Euclidean-disc dilation/erosion used by ring and band regions.
RoiMask dilate(const RoiMask& mask, int radius_px);
RoiMask erode(const RoiMask& mask, int radius_px);

QuantizedPatch quantize(const Image2D& img, const RoiMask& mask, int levels, double lo, double hi);

// 3x3 Sobel magnitude with edge-replication padding.
Image2D gradient_magnitude(const Image2D& img);

// Number of 8-connected components among true pixels.
int count_components(const RoiMask& mask);

} // namespace mprad
