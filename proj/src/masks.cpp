#include "artcode/masks.hpp"

#include "artcode/error.hpp"

namespace artcode {

MaskSet build_masks(int canvas_width, int canvas_height, int n, int m) {
    if (canvas_width < 2 || canvas_height < 2)
        throw InvalidArgument("mask canvas must be at least 2x2");
    int k = 0;
    for (int side : {2, 3, 4})
        if (n == side * side) k = side;
    if (k == 0)
        throw UnsupportedMaskCount("separation supports n in {4, 9, 16}, got " + std::to_string(n));
    if (m != 4) throw UnsupportedMaskCount("occlusion supports m = 4, got " + std::to_string(m));

    MaskSet masks;
    masks.canvas_width = canvas_width;
    masks.canvas_height = canvas_height;

    for (int row = 0; row < k; ++row) {
        const int y0 = row * canvas_height / k;
        const int y1 = (row + 1) * canvas_height / k;
        for (int col = 0; col < k; ++col) {
            const int x0 = col * canvas_width / k;
            const int x1 = (col + 1) * canvas_width / k;
            masks.separation.push_back({x0, y0, x1 - x0, y1 - y0});
        }
    }

    const int half_w = (canvas_width + 1) / 2;
    const int half_h = (canvas_height + 1) / 2;
    masks.occlusion.push_back({0, 0, half_w, canvas_height});                      // left
    masks.occlusion.push_back({canvas_width - half_w, 0, half_w, canvas_height}); // right
    masks.occlusion.push_back({0, 0, canvas_width, half_h});                      // top
    masks.occlusion.push_back({0, canvas_height - half_h, canvas_width, half_h}); // bottom
    return masks;
}

} // namespace artcode
