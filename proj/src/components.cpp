#include "artcode/components.hpp"

#include "artcode/error.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace artcode {

namespace {

// Flood label in first-touch raster order. `mask[i] != 0` marks pixels of the
// class being labeled; connectivity is 4 or 8.
int flood_label(const std::vector<std::uint8_t>& mask, int w, int h, bool eight_connected,
                std::vector<std::int32_t>& labels, std::vector<std::size_t>& area,
                std::vector<std::size_t>& first) {
    labels.assign(mask.size(), 0);
    area.clear();
    first.clear();
    int count = 0;
    std::deque<std::size_t> queue;
    for (std::size_t start = 0; start < mask.size(); ++start) {
        if (!mask[start] || labels[start]) continue;
        ++count;
        labels[start] = count;
        first.push_back(start);
        std::size_t pixels = 0;
        queue.push_back(start);
        while (!queue.empty()) {
            const std::size_t idx = queue.front();
            queue.pop_front();
            ++pixels;
            const int x = static_cast<int>(idx % w);
            const int y = static_cast<int>(idx / w);
            auto visit = [&](int nx, int ny) {
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) return;
                const std::size_t n = static_cast<std::size_t>(ny) * w + nx;
                if (mask[n] && !labels[n]) {
                    labels[n] = count;
                    queue.push_back(n);
                }
            };
            visit(x + 1, y);
            visit(x - 1, y);
            visit(x, y + 1);
            visit(x, y - 1);
            if (eight_connected) {
                visit(x + 1, y + 1);
                visit(x + 1, y - 1);
                visit(x - 1, y + 1);
                visit(x - 1, y - 1);
            }
        }
        area.push_back(pixels);
    }
    return count;
}

void sorted_unique(std::vector<int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

ComponentHierarchy analyze_components(const GrayImage& img, int threshold) {
    if (threshold < 0 || threshold > 255) throw InvalidArgument("threshold must lie in [0, 255]");
    if (img.width < 1 || img.height < 1 || img.data.size() != img.pixel_count())
        throw InvalidArgument("malformed image");

    const int w = img.width;
    const int h = img.height;
    std::vector<std::uint8_t> fg_mask(img.data.size()), bg_mask(img.data.size());
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        fg_mask[i] = img.data[i] < threshold ? 1 : 0;
        bg_mask[i] = fg_mask[i] ^ 1;
    }

    ComponentHierarchy hy;
    hy.width = w;
    hy.height = h;
    hy.fg_count = flood_label(fg_mask, w, h, false, hy.fg_labels, hy.fg_area, hy.fg_first);
    hy.bg_count = flood_label(bg_mask, w, h, true, hy.bg_labels, hy.bg_area, hy.bg_first);

    // 4-adjacency between foreground and background components. Two distinct
    // fg components can never be 4-adjacent (they would have merged), same
    // for bg, so the component graph is bipartite.
    std::vector<std::vector<int>> fg_adj(hy.fg_count), bg_adj(hy.bg_count);
    auto note_edge = [&](std::size_t a, std::size_t b) {
        if (fg_mask[a] == fg_mask[b]) return;
        if (fg_mask[b]) std::swap(a, b); // a is fg, b is bg
        const int f = hy.fg_labels[a];
        const int g = hy.bg_labels[b];
        fg_adj[f - 1].push_back(g);
        bg_adj[g - 1].push_back(f);
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (x + 1 < w) note_edge(i, i + 1);
            if (y + 1 < h) note_edge(i, i + w);
        }
    for (auto& v : fg_adj) sorted_unique(v);
    for (auto& v : bg_adj) sorted_unique(v);

    // Breadth-first leveling from the outside. Border-touching background
    // components have depth 0; the parent of a component is its adjacent
    // component one level up (smallest first-touch pixel on ties).
    hy.fg_depth.assign(hy.fg_count, -1);
    hy.bg_depth.assign(hy.bg_count, -1);
    hy.fg_parent.assign(hy.fg_count, 0);
    hy.bg_parent.assign(hy.bg_count, 0);
    hy.fg_holes.assign(hy.fg_count, {});
    hy.bg_children.assign(hy.bg_count, {});

    std::deque<std::pair<bool, int>> queue; // (is_foreground, id)
    auto border_index = [&](int x, int y) { return static_cast<std::size_t>(y) * w + x; };
    std::vector<char> bg_on_border(hy.bg_count, 0);
    for (int x = 0; x < w; ++x) {
        if (int g = hy.bg_labels[border_index(x, 0)]; g) bg_on_border[g - 1] = 1;
        if (int g = hy.bg_labels[border_index(x, h - 1)]; g) bg_on_border[g - 1] = 1;
    }
    for (int y = 0; y < h; ++y) {
        if (int g = hy.bg_labels[border_index(0, y)]; g) bg_on_border[g - 1] = 1;
        if (int g = hy.bg_labels[border_index(w - 1, y)]; g) bg_on_border[g - 1] = 1;
    }
    for (int g = 1; g <= hy.bg_count; ++g)
        if (bg_on_border[g - 1]) {
            hy.bg_depth[g - 1] = 0;
            queue.emplace_back(false, g);
        }
    // Degenerate case: ink covers the whole canvas, so no background touches
    // the border and the largest ink component is the top level.
    if (queue.empty() && hy.fg_count > 0) {
        for (int f = 1; f <= hy.fg_count; ++f) {
            hy.fg_depth[f - 1] = 1;
            queue.emplace_back(true, f);
        }
    }

    while (!queue.empty()) {
        const auto [is_fg, id] = queue.front();
        queue.pop_front();
        if (is_fg) {
            for (int g : fg_adj[id - 1]) {
                if (hy.bg_depth[g - 1] != -1) continue;
                hy.bg_depth[g - 1] = hy.fg_depth[id - 1] + 1;
                hy.bg_parent[g - 1] = id;
                hy.fg_holes[id - 1].push_back(g);
                queue.emplace_back(false, g);
            }
        } else {
            for (int f : bg_adj[id - 1]) {
                if (hy.fg_depth[f - 1] != -1) continue;
                hy.fg_depth[f - 1] = hy.bg_depth[id - 1] + 1;
                hy.fg_parent[f - 1] = hy.bg_depth[id - 1] == 0 ? 0 : id;
                if (hy.bg_depth[id - 1] != 0) hy.bg_children[id - 1].push_back(f);
                queue.emplace_back(true, f);
            }
        }
    }
    return hy;
}

ComponentLabeling label_components(const GrayImage& img, int threshold) {
    ComponentHierarchy hy = analyze_components(img, threshold);
    ComponentLabeling out;
    out.width = hy.width;
    out.height = hy.height;
    out.labels = std::move(hy.fg_labels);
    out.count = hy.fg_count;
    out.holes = std::move(hy.fg_holes);
    return out;
}

RegionAdjacencyTree decode_tree(const GrayImage& img, int threshold) {
    const ComponentHierarchy hy = analyze_components(img, threshold);
    if (hy.fg_count == 0) throw NoForeground("image has no foreground at this threshold");

    int best = 0; // candidate fg id
    for (int f = 1; f <= hy.fg_count; ++f) {
        const auto& regions = hy.fg_holes[f - 1];
        if (regions.empty()) continue;
        bool valid = true;
        for (int g : regions) {
            const auto& blobs = hy.bg_children[g - 1];
            if (blobs.empty()) {
                valid = false; // an empty region breaks the depth-3 structure
                break;
            }
            for (int b : blobs)
                if (!hy.fg_holes[b - 1].empty()) {
                    valid = false; // blobs must be solid
                    break;
                }
            if (!valid) break;
        }
        if (!valid) continue;
        if (best == 0 || hy.fg_area[f - 1] > hy.fg_area[best - 1] ||
            (hy.fg_area[f - 1] == hy.fg_area[best - 1] && hy.fg_first[f - 1] < hy.fg_first[best - 1]))
            best = f;
    }
    if (best == 0) throw NoValidRoot("no depth-3 containment hierarchy found");

    RegionAdjacencyTree tree;
    tree.root = best;
    tree.regions = hy.fg_holes[best - 1];
    tree.blobs.reserve(tree.regions.size());
    for (int g : tree.regions) tree.blobs.push_back(hy.bg_children[g - 1]);
    return tree;
}

Code decode(const GrayImage& img, int threshold) { return decode_tree(img, threshold).code(); }

} // namespace artcode
