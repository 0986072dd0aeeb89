#include "mprad/image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mprad/errors.hpp"

namespace mprad {

std::size_t RoiMask::area() const {
    std::size_t n = 0;
    for (auto b : bits) n += b != 0;
    return n;
}

void RoiMask::bounding_box(int& x0, int& y0, int& x1, int& y1) const {
    x0 = width;
    y0 = height;
    x1 = -1;
    y1 = -1;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (at(x, y)) {
                x0 = std::min(x0, x);
                y0 = std::min(y0, y);
                x1 = std::max(x1, x);
                y1 = std::max(y1, y);
            }
    if (x1 < 0) throw EmptyRoiError();
}

RoiMask rasterize_polygon(const RoiPolygon& poly, int width, int height) {
    if (poly.vertices.size() < 3) throw Error("polygon needs at least 3 vertices");
    double minx = std::numeric_limits<double>::max(), maxx = std::numeric_limits<double>::lowest();
    double miny = minx, maxy = maxx;
    for (const auto& [x, y] : poly.vertices) {
        minx = std::min(minx, x);
        maxx = std::max(maxx, x);
        miny = std::min(miny, y);
        maxy = std::max(maxy, y);
    }
    if (maxx < 0.0 || maxy < 0.0 || minx > width - 1.0 || miny > height - 1.0)
        throw OutOfBoundsError();

    RoiMask mask(width, height);
    int y_lo = std::max(0, static_cast<int>(std::floor(miny)));
    int y_hi = std::min(height - 1, static_cast<int>(std::ceil(maxy)));
    std::size_t count = 0;

    // scanline even-odd fill over pixel centers (integer coordinates)
    const auto& v = poly.vertices;
    std::size_t n = v.size();
    std::vector<double> crossings;
    for (int y = y_lo; y <= y_hi; ++y) {
        double py = static_cast<double>(y);
        crossings.clear();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            double xi = v[i].first, yi = v[i].second;
            double xj = v[j].first, yj = v[j].second;
            if ((yi > py) != (yj > py))
                crossings.push_back(xj + (py - yj) / (yi - yj) * (xi - xj));
        }
        std::sort(crossings.begin(), crossings.end());
        for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
            double c0 = crossings[k], c1 = crossings[k + 1];
            int x_lo = std::max(0, static_cast<int>(std::floor(c0)) + 1);
            int x_hi = std::min(width - 1, static_cast<int>(std::ceil(c1)) - 1);
            for (int x = x_lo; x <= x_hi; ++x) {
                if (static_cast<double>(x) > c0 && static_cast<double>(x) < c1 && !mask.at(x, y)) {
                    mask.set(x, y);
                    ++count;
                }
            }
        }
    }
    if (count == 0) throw EmptyRoiError("no pixel center falls inside the polygon");
    return mask;
}

namespace {

double shoelace_area(const std::vector<std::pair<int, int>>& pts) {
    double a = 0.0;
    std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = (i + 1) % n;
        a += static_cast<double>(pts[i].first) * pts[j].second -
             static_cast<double>(pts[j].first) * pts[i].second;
    }
    return 0.5 * a;
}

} // namespace

int count_components(const RoiMask& mask) {
    std::vector<std::uint8_t> seen(mask.bits.size(), 0);
    int components = 0;
    std::vector<std::pair<int, int>> stack;
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            std::size_t idx = static_cast<std::size_t>(y) * mask.width + x;
            if (!mask.at(x, y) || seen[idx]) continue;
            ++components;
            stack.push_back({x, y});
            seen[idx] = 1;
            while (!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        int nx = cx + dx, ny = cy + dy;
                        if (!mask.in_bounds(nx, ny) || !mask.at(nx, ny)) continue;
                        std::size_t nidx = static_cast<std::size_t>(ny) * mask.width + nx;
                        if (!seen[nidx]) {
                            seen[nidx] = 1;
                            stack.push_back({nx, ny});
                        }
                    }
            }
        }
    }
    return components;
}

ContourPath trace_boundary(const RoiMask& mask) {
    if (mask.area() == 0) throw EmptyRoiError();
    if (count_components(mask) > 1) throw MultipleComponentsError();

    // first true pixel in scan order; its west neighbor is guaranteed false
    int sx = -1, sy = -1;
    for (int y = 0; y < mask.height && sx < 0; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(x, y)) {
                sx = x;
                sy = y;
                break;
            }

    // Moore neighborhood in clockwise image-coordinate order starting west
    static const int mx[] = {-1, -1, 0, 1, 1, 1, 0, -1};
    static const int my[] = {0, -1, -1, -1, 0, 1, 1, 1};
    auto ring_index = [&](int fromx, int fromy, int tox, int toy) {
        for (int k = 0; k < 8; ++k)
            if (fromx + mx[k] == tox && fromy + my[k] == toy) return k;
        return -1;
    };

    ContourPath path;
    path.points.push_back({sx, sy});
    int cx = sx, cy = sy;
    int bx = sx - 1, by = sy; // backtrack cell (false pixel the scan starts after)
    int first_next_x = -2, first_next_y = -2;
    std::size_t guard = mask.bits.size() * 8 + 16;

    while (guard-- > 0) {
        int bidx = ring_index(cx, cy, bx, by);
        int nx = 0, ny = 0;
        bool found = false;
        int last_empty_x = bx, last_empty_y = by;
        for (int k = 1; k <= 8; ++k) {
            int idx = (bidx + k) % 8;
            int qx = cx + mx[idx], qy = cy + my[idx];
            if (mask.in_bounds(qx, qy) && mask.at(qx, qy)) {
                nx = qx;
                ny = qy;
                found = true;
                break;
            }
            last_empty_x = qx;
            last_empty_y = qy;
        }
        if (!found) break; // isolated pixel, degenerate loop of length 1
        // Jacob's criterion: stop when the initial (start, first-move) edge repeats
        if (cx == sx && cy == sy && nx == first_next_x && ny == first_next_y) break;
        if (first_next_x == -2) {
            first_next_x = nx;
            first_next_y = ny;
        }
        bx = last_empty_x;
        by = last_empty_y;
        cx = nx;
        cy = ny;
        path.points.push_back({cx, cy});
    }

    if (path.points.size() > 1 && path.points.front() == path.points.back()) path.points.pop_back();

    // counterclockwise orientation (y-up reading of the coordinates)
    if (path.points.size() >= 3 && shoelace_area(path.points) < 0.0)
        std::reverse(path.points.begin() + 1, path.points.end());
    return path;
}

namespace {

std::vector<std::pair<int, int>> disc_offsets(int radius_px) {
    std::vector<std::pair<int, int>> offs;
    for (int dy = -radius_px; dy <= radius_px; ++dy)
        for (int dx = -radius_px; dx <= radius_px; ++dx)
            if (dx * dx + dy * dy <= radius_px * radius_px) offs.push_back({dx, dy});
    return offs;
}

} // namespace

RoiMask dilate(const RoiMask& mask, int radius_px) {
    RoiMask out(mask.width, mask.height);
    auto offs = disc_offsets(radius_px);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x) {
            if (!mask.at(x, y)) continue;
            for (auto [dx, dy] : offs) {
                int nx = x + dx, ny = y + dy;
                if (mask.in_bounds(nx, ny)) out.set(nx, ny);
            }
        }
    return out;
}

RoiMask erode(const RoiMask& mask, int radius_px) {
    RoiMask out(mask.width, mask.height);
    auto offs = disc_offsets(radius_px);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x) {
            if (!mask.at(x, y)) continue;
            bool all = true;
            for (auto [dx, dy] : offs) {
                int nx = x + dx, ny = y + dy;
                if (!mask.in_bounds(nx, ny) || !mask.at(nx, ny)) {
                    all = false;
                    break;
                }
            }
            if (all) out.set(x, y);
        }
    return out;
}

RoiMask ring_region(const RoiMask& mask, int width_px) {
    if (mask.area() == 0) throw EmptyRoiError();
    if (width_px < 1) throw Error("ring width must be >= 1");
    RoiMask d = dilate(mask, width_px);
    RoiMask out(mask.width, mask.height);
    for (std::size_t i = 0; i < d.bits.size(); ++i)
        out.bits[i] = (d.bits[i] && !mask.bits[i]) ? 1 : 0;
    return out;
}

QuantizedPatch quantize(const Image2D& img, const RoiMask& mask, int levels, double lo, double hi) {
    if (lo >= hi) throw DegenerateRangeError();
    if (levels < 2) throw Error("need at least 2 gray levels");
    QuantizedPatch q;
    q.levels = levels;
    q.mask = mask;
    q.codes.assign(img.size(), -1);
    double scale = static_cast<double>(levels) / (hi - lo);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            if (!mask.at(x, y)) continue;
            int c = static_cast<int>(std::floor((img.at(x, y) - lo) * scale));
            q.codes[static_cast<std::size_t>(y) * img.width + x] = std::clamp(c, 0, levels - 1);
        }
    return q;
}

Image2D gradient_magnitude(const Image2D& img) {
    if (img.width < 3 || img.height < 3) throw ImageTooSmallError();
    Image2D out(img.width, img.height);
    auto sample = [&](int x, int y) {
        x = std::clamp(x, 0, img.width - 1);
        y = std::clamp(y, 0, img.height - 1);
        return img.at(x, y);
    };
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            double gx = -sample(x - 1, y - 1) + sample(x + 1, y - 1) - 2.0 * sample(x - 1, y) +
                        2.0 * sample(x + 1, y) - sample(x - 1, y + 1) + sample(x + 1, y + 1);
            double gy = -sample(x - 1, y - 1) - 2.0 * sample(x, y - 1) - sample(x + 1, y - 1) +
                        sample(x - 1, y + 1) + 2.0 * sample(x, y + 1) + sample(x + 1, y + 1);
            out.at(x, y) = std::sqrt(gx * gx + gy * gy);
        }
    return out;
}

} // namespace mprad
