#pragma once

#include "artcode/code.hpp"
#include "artcode/image.hpp"

#include <cstdint>

namespace artcode {

enum class GenStyle {
    artcode,            // valid marker; decodes back to the requested code
    non_artcode_random, // breaks at least one drawing rule; never forms a depth-3 root
    artcode_like        // repeated marker-like substructure with a broken root
};

/// Deterministic generation request. The seed fully determines the output.
struct GenSpec {
    Code code;                // required for style artcode, ignored otherwise
    int canvas_width = 256;
    int canvas_height = 256;
    std::uint64_t seed = 0;
    GenStyle style = GenStyle::artcode;
    double noise_level = 0.0; // fraction of pixels hit by salt-and-pepper noise
    bool background = false;  // decorative solid dabs outside the root boundary
};

/// Renders a synthetic image for the spec. Ink is 0, paper is 255; noise is
/// applied last. For style artcode with noise_level 0, decode(render(s))
/// equals s.code.
GrayImage render(const GenSpec& spec);

} // namespace artcode
