#pragma once

#include "artcode/code.hpp"
#include "artcode/image.hpp"

#include <cstdint>
#include <vector>

namespace artcode {

/// Result of foreground labeling. Foreground (ink) components use
/// 4-connectivity, background uses 8-connectivity, so "hole" is well defined.
/// Component ids are assigned in first-touch raster order, starting at 1.
struct ComponentLabeling {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels; // per pixel: 0 = background, 1..count = foreground component
    int count = 0;
    std::vector<std::vector<int>> holes; // holes[i]: background component ids enclosed by component i+1
};

/// Full nesting structure of foreground and background components.
/// Depth alternates: outer background (0), top-level ink (1), holes (2), ...
struct ComponentHierarchy {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> fg_labels; // 0 where background
    std::vector<std::int32_t> bg_labels; // 0 where foreground
    int fg_count = 0;
    int bg_count = 0;
    std::vector<std::size_t> fg_area, bg_area;
    std::vector<std::size_t> fg_first, bg_first;       // first-touch raster index
    std::vector<int> fg_depth, bg_depth;               // see above; -1 if unreachable
    std::vector<int> fg_parent;                        // enclosing background component id (0 = outside)
    std::vector<int> bg_parent;                        // enclosing foreground component id (0 = none)
    std::vector<std::vector<int>> fg_holes;            // per fg id-1: background children
    std::vector<std::vector<int>> bg_children;         // per bg id-1: foreground children
};

/// Labels ink components of `img`. A pixel is foreground when its intensity
/// is strictly below `threshold`.
ComponentLabeling label_components(const GrayImage& img, int threshold);

/// Computes the full component nesting structure (used by decode and tests).
ComponentHierarchy analyze_components(const GrayImage& img, int threshold);

/// Finds the best depth-3 root (largest area, raster order on ties) and
/// returns its region adjacency tree. Throws NoForeground / NoValidRoot.
RegionAdjacencyTree decode_tree(const GrayImage& img, int threshold = 128);

/// Decodes an image to its code string via the region adjacency tree.
Code decode(const GrayImage& img, int threshold = 128);

} // namespace artcode
