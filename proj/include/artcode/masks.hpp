#pragma once

#include "artcode/image.hpp"

#include <vector>

namespace artcode {

/// Axis-aligned mask rectangle, half-open: [x0, x0+width) x [y0, y0+height).
struct MaskRect {
    int x0 = 0;
    int y0 = 0;
    int width = 0;
    int height = 0;

    bool contains(int x, int y) const {
        return x >= x0 && x < x0 + width && y >= y0 && y < y0 + height;
    }
    long long area() const { return static_cast<long long>(width) * height; }
    bool operator==(const MaskRect&) const = default;
};

/// Separation masks tile the canvas exactly; occlusion masks are the four
/// half-canvas rectangles (left, right, top, bottom), each covering half the
/// area up to one row/column for odd dimensions.
struct MaskSet {
    int canvas_width = 0;
    int canvas_height = 0;
    std::vector<MaskRect> separation;
    std::vector<MaskRect> occlusion;

    int n() const { return static_cast<int>(separation.size()); }
    int m() const { return static_cast<int>(occlusion.size()); }
};

/// Supported counts: n in {4, 9, 16} (square tilings), m = 4.
MaskSet build_masks(int canvas_width, int canvas_height, int n = 4, int m = 4);

} // namespace artcode
