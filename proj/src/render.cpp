#include "artcode/render.hpp"

#include "artcode/error.hpp"
#include "artcode/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace artcode {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

// Rotated superellipse with a small low-harmonic radial wobble. Exponent 2 is
// an ellipse; large exponents approach a rectangle (used for bars).
struct WobblyShape {
    double cx = 0, cy = 0;
    double a = 1, b = 1;
    double rot = 0;
    double exponent = 2;
    std::array<double, 3> wobble_amp{};   // harmonics k = 2, 3, 4
    std::array<double, 3> wobble_phase{};

    double wobble_sum() const { return wobble_amp[0] + wobble_amp[1] + wobble_amp[2]; }

    double boundary_radius(double theta) const {
        const double alpha = theta - rot;
        const double ca = std::abs(std::cos(alpha)) / a;
        const double sa = std::abs(std::sin(alpha)) / b;
        const double base = std::pow(std::pow(ca, exponent) + std::pow(sa, exponent), -1.0 / exponent);
        double w = 1.0;
        for (int k = 0; k < 3; ++k) w += wobble_amp[k] * std::cos((k + 2) * alpha + wobble_phase[k]);
        return base * w;
    }

    bool contains(double px, double py, double margin = 0.0) const {
        const double dx = px - cx, dy = py - cy;
        const double r = std::hypot(dx, dy);
        if (r == 0.0) return margin <= min_radius();
        return r <= boundary_radius(std::atan2(dy, dx)) - margin;
    }

    /// A point on the boundary in direction theta from the center.
    std::array<double, 2> boundary_point(double theta) const {
        const double r = boundary_radius(theta);
        return {cx + r * std::cos(theta), cy + r * std::sin(theta)};
    }

    // Conservative bound: the superellipse bulge at 45 degrees is 2^(1/2-1/p).
    double max_radius() const {
        return std::max(a, b) * (1.0 + wobble_sum()) * std::pow(2.0, 0.5 - 1.0 / exponent);
    }
    double min_radius() const { return std::min(a, b) * (1.0 - wobble_sum()); }
};

struct Triangle {
    std::array<double, 2> v0, v1, v2;

    double cx() const { return (v0[0] + v1[0] + v2[0]) / 3.0; }
    double cy() const { return (v0[1] + v1[1] + v2[1]) / 3.0; }
    double max_radius() const {
        double m = 0;
        for (const auto& v : {v0, v1, v2}) m = std::max(m, std::hypot(v[0] - cx(), v[1] - cy()));
        return m;
    }
    bool contains(double px, double py) const {
        auto side = [&](const std::array<double, 2>& p, const std::array<double, 2>& q) {
            return (q[0] - p[0]) * (py - p[1]) - (q[1] - p[1]) * (px - p[0]);
        };
        const double d0 = side(v0, v1), d1 = side(v1, v2), d2 = side(v2, v0);
        const bool has_neg = d0 < 0 || d1 < 0 || d2 < 0;
        const bool has_pos = d0 > 0 || d1 > 0 || d2 > 0;
        return !(has_neg && has_pos);
    }
};

// Ink canvas: -1 is paper; anything else is an ink intensity. Ink values stay
// <= 56, far below any binarization threshold the decoder uses, so intensity
// variation never changes the topology.
struct InkMask {
    int w = 0, h = 0;
    std::vector<std::int16_t> ink;

    InkMask(int width, int height)
        : w(width), h(height), ink(static_cast<std::size_t>(width) * height, -1) {}
    std::int16_t& at(int x, int y) { return ink[static_cast<std::size_t>(y) * w + x]; }
};

constexpr std::int16_t kPaper = -1;

std::int16_t random_ink(Rng& rng) { return static_cast<std::int16_t>(rng.uniform_int(0, 40)); }

template <typename Shape>
void paint_box(InkMask& m, const Shape& s, std::int16_t value, double cx, double cy, double reach) {
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - reach - 1)));
    const int x1 = std::min(m.w - 1, static_cast<int>(std::ceil(cx + reach + 1)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - reach - 1)));
    const int y1 = std::min(m.h - 1, static_cast<int>(std::ceil(cy + reach + 1)));
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x)
            if (s.contains(x + 0.5, y + 0.5)) m.at(x, y) = value;
}

void paint(InkMask& m, const WobblyShape& s, std::int16_t value) {
    paint_box(m, s, value, s.cx, s.cy, s.max_radius());
}
void paint(InkMask& m, const Triangle& t, std::int16_t value) {
    paint_box(m, t, value, t.cx(), t.cy(), t.max_radius());
}

// ---------------------------------------------------------------------------
// Marker layout. A marker is a stroke drawing: a closed ring following a
// freeform outline, straight walls along Voronoi bisectors that partition the
// interior into one region per code digit, and solid dots inside each region.
// Strokes have two-sided edges, which keeps the orientation histogram of any
// crop balanced, the way hand-drawn markers behave.
// ---------------------------------------------------------------------------

// Freeform outline: a main lobe and up to two satellites. The interior used
// for regions is the eroded main lobe; satellite areas render as solid ink
// attached to the ring, so paper is exactly {outside} + {interior}.
struct MarkerOutline {
    std::vector<WobblyShape> lobes; // lobes[0] is the main lobe
    double ring_thickness = 6;

    bool inside_union(double px, double py) const {
        for (const auto& lobe : lobes)
            if (lobe.contains(px, py)) return true;
        return false;
    }
    bool inside_interior(double px, double py, double margin = 0.0) const {
        return lobes.front().contains(px, py, ring_thickness + margin);
    }
    bool is_ink(double px, double py) const {
        return inside_union(px, py) && !inside_interior(px, py);
    }
    double reach() const {
        double r = 0;
        for (const auto& lobe : lobes)
            r = std::max(r, std::hypot(lobe.cx - lobes.front().cx, lobe.cy - lobes.front().cy) +
                                lobe.max_radius());
        return r;
    }
};

struct MarkerLayout {
    MarkerOutline outline;
    double wall_thickness = 4;
    std::vector<std::array<double, 2>> seeds;    // one per region
    std::vector<int> counts;                     // blob counts, parallel to seeds
    std::vector<std::vector<WobblyShape>> blobs; // per region
    std::int16_t ring_value = 0;
    std::int16_t wall_value = 0;
    std::vector<std::vector<std::int16_t>> blob_values;
};

// Distance from p to the nearest and second-nearest seeds.
std::pair<double, double> two_nearest(const std::vector<std::array<double, 2>>& seeds, double px,
                                      double py) {
    double d1 = 1e30, d2 = 1e30;
    for (const auto& s : seeds) {
        const double d = std::hypot(px - s[0], py - s[1]);
        if (d < d1) {
            d2 = d1;
            d1 = d;
        } else if (d < d2) {
            d2 = d;
        }
    }
    return {d1, d2};
}

WobblyShape random_wobble(Rng& rng, double cx, double cy, double a, double b, double exponent,
                          double max_amp) {
    WobblyShape s;
    s.cx = cx;
    s.cy = cy;
    s.a = a;
    s.b = b;
    s.rot = rng.uniform(0.0, kTau);
    s.exponent = exponent;
    for (int k = 0; k < 3; ++k) {
        s.wobble_amp[k] = rng.uniform(0.0, max_amp);
        s.wobble_phase[k] = rng.uniform(0.0, kTau);
    }
    return s;
}

// Rough free radius around a region's seed for `count` blobs of radius rb.
// Placement itself validates against the true cell geometry, so this only
// has to be a workable starting point.
double cell_need(int count, double blob_r) {
    return (std::sqrt(static_cast<double>(count)) * 1.15 + 1.0) * (blob_r + 1.5) + 2.0;
}

// Places the blob dabs of one region. Blob centers stay in the seed's Voronoi
// cell with >= 2 px clearance from walls, ring and each other.
std::vector<WobblyShape> place_region_blobs(Rng& rng, const MarkerLayout& layout, std::size_t region,
                                            double blob_r) {
    const auto& seed = layout.seeds[region];
    const int count = layout.counts[region];
    const double span = cell_need(count, blob_r) + blob_r;
    std::vector<WobblyShape> blobs;
    for (int i = 0; i < count; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < 400 && !placed; ++attempt) {
            const double bx = rng.uniform(seed[0] - span, seed[0] + span);
            const double by = rng.uniform(seed[1] - span, seed[1] + span);
            const double rb = std::max(1.0, blob_r * rng.uniform(0.65, 1.0));
            WobblyShape blob = random_wobble(rng, bx, by, rb, rb * rng.uniform(0.55, 1.0), 2.0,
                                             rb >= 3.0 ? 0.03 : 0.0);
            const double extent = blob.max_radius();
            if (!layout.outline.inside_interior(bx, by, extent + 2.5)) continue;
            if (layout.seeds.size() > 1) {
                const auto [d1, d2] = two_nearest(layout.seeds, bx, by);
                const double own = std::hypot(bx - seed[0], by - seed[1]);
                if (own != d1) continue; // strayed into a neighboring cell
                if (d2 - d1 < layout.wall_thickness + 2.0 * (extent + 2.0)) continue;
            }
            bool clear = true;
            for (const auto& other : blobs)
                if (std::hypot(bx - other.cx, by - other.cy) <
                    extent + other.max_radius() + 2.0) {
                    clear = false;
                    break;
                }
            if (!clear) continue;
            blobs.push_back(blob);
            placed = true;
        }
        if (!placed) return {};
    }
    return blobs;
}

MarkerLayout plan_marker(Rng& rng, int w, int h, const std::vector<int>& counts) {
    const double scale = std::min(w, h);
    MarkerLayout layout;
    layout.counts = counts;
    std::sort(layout.counts.begin(), layout.counts.end(), std::greater<int>());

    const double thickness_scale = std::clamp(scale / 256.0, 0.5, 1.5);
    for (int grow = 0; grow < 3; ++grow) {
        const double frac = rng.uniform(0.30, 0.36) * (1.0 + 0.06 * grow);
        const double root_half = std::min(frac, 0.37) * scale;
        const double cx = w / 2.0 + rng.uniform(-0.015, 0.015) * scale;
        const double cy = h / 2.0 + rng.uniform(-0.015, 0.015) * scale;

        layout.outline.lobes.clear();
        layout.outline.ring_thickness = rng.uniform(4.5, 8.5) * thickness_scale;
        layout.outline.lobes.push_back(random_wobble(rng, cx, cy, root_half,
                                                     root_half * rng.uniform(0.62, 0.95),
                                                     rng.uniform(2.0, 2.6), 0.06));
        const int extra_lobes = static_cast<int>(rng.uniform_int(0, 2));
        for (int l = 0; l < extra_lobes; ++l) {
            const double dir = rng.uniform(0.0, kTau);
            const double dist = rng.uniform(0.5, 0.85) * root_half;
            double lobe_r = rng.uniform(0.25, 0.45) * root_half;
            lobe_r = std::min(lobe_r, (1.30 * root_half - dist) / 1.25);
            if (lobe_r < 0.15 * root_half) continue;
            layout.outline.lobes.push_back(
                random_wobble(rng, cx + dist * std::cos(dir), cy + dist * std::sin(dir), lobe_r,
                              lobe_r * rng.uniform(0.8, 1.0), rng.uniform(2.0, 2.6), 0.04));
        }
        layout.wall_thickness = rng.uniform(3.5, 6.0) * thickness_scale;
        layout.ring_value = random_ink(rng);
        layout.wall_value = random_ink(rng);

        double blob_r = std::clamp(root_half / 20.0, 2.0, 7.0);
        for (int shrink = 0; shrink < 5; ++shrink, blob_r = std::max(1.0, blob_r - 1.0)) {
            // Seed placement: every seed keeps enough clearance that its cell
            // can plausibly hold its blobs.
            std::vector<double> needs(layout.counts.size());
            for (std::size_t i = 0; i < layout.counts.size(); ++i)
                needs[i] = cell_need(layout.counts[i], blob_r);
            layout.seeds.clear();
            bool seeds_ok = true;
            for (std::size_t i = 0; i < layout.counts.size() && seeds_ok; ++i) {
                bool placed = false;
                for (int attempt = 0; attempt < 800 && !placed; ++attempt) {
                    const double span = layout.outline.lobes.front().max_radius();
                    const double sx = rng.uniform(cx - span, cx + span);
                    const double sy = rng.uniform(cy - span, cy + span);
                    if (!layout.outline.inside_interior(sx, sy, std::max(6.0, 0.5 * needs[i])))
                        continue;
                    bool clear = true;
                    for (std::size_t j = 0; j < layout.seeds.size(); ++j) {
                        const double min_dist =
                            0.9 * (needs[i] + needs[j]) + layout.wall_thickness + 2.0;
                        if (std::hypot(sx - layout.seeds[j][0], sy - layout.seeds[j][1]) < min_dist) {
                            clear = false;
                            break;
                        }
                    }
                    if (!clear) continue;
                    layout.seeds.push_back({sx, sy});
                    placed = true;
                }
                seeds_ok = placed;
            }
            if (!seeds_ok) continue;

            layout.blobs.assign(layout.counts.size(), {});
            layout.blob_values.assign(layout.counts.size(), {});
            bool blobs_ok = true;
            for (std::size_t i = 0; i < layout.counts.size() && blobs_ok; ++i) {
                layout.blobs[i] = place_region_blobs(rng, layout, i, blob_r);
                blobs_ok = !layout.blobs[i].empty() || layout.counts[i] == 0;
                for (std::size_t b = 0; b < layout.blobs[i].size(); ++b)
                    layout.blob_values[i].push_back(random_ink(rng));
            }
            if (blobs_ok) return layout;
        }
    }
    throw InvalidSpec("code is too dense for the requested canvas");
}

void paint_marker(InkMask& mask, const MarkerLayout& layout) {
    const auto& outline = layout.outline;
    const double reach = outline.reach();
    const double ox = outline.lobes.front().cx, oy = outline.lobes.front().cy;
    const int x0 = std::max(0, static_cast<int>(std::floor(ox - reach - 1)));
    const int x1 = std::min(mask.w - 1, static_cast<int>(std::ceil(ox + reach + 1)));
    const int y0 = std::max(0, static_cast<int>(std::floor(oy - reach - 1)));
    const int y1 = std::min(mask.h - 1, static_cast<int>(std::ceil(oy + reach + 1)));
    const bool walled = layout.seeds.size() > 1;
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) {
            const double px = x + 0.5, py = y + 0.5;
            if (outline.inside_interior(px, py)) {
                if (walled) {
                    const auto [d1, d2] = two_nearest(layout.seeds, px, py);
                    if (d2 - d1 <= layout.wall_thickness) mask.at(x, y) = layout.wall_value;
                }
            } else if (outline.inside_union(px, py)) {
                mask.at(x, y) = layout.ring_value;
            }
        }
    for (std::size_t i = 0; i < layout.blobs.size(); ++i)
        for (std::size_t b = 0; b < layout.blobs[i].size(); ++b)
            paint(mask, layout.blobs[i][b], layout.blob_values[i][b]);
}

// Erases a straight channel of the given width from (x, y) to the nearest
// canvas edge, opening the enclosing boundary.
void carve_channel(InkMask& mask, double x, double y, int width_px) {
    const int ix = std::clamp(static_cast<int>(x), 0, mask.w - 1);
    const int iy = std::clamp(static_cast<int>(y), 0, mask.h - 1);
    const int d_left = ix, d_right = mask.w - 1 - ix, d_top = iy, d_bottom = mask.h - 1 - iy;
    const int m = std::min(std::min(d_left, d_right), std::min(d_top, d_bottom));
    const int half = width_px / 2;
    auto erase = [&](int px, int py) {
        if (px >= 0 && px < mask.w && py >= 0 && py < mask.h) mask.at(px, py) = kPaper;
    };
    if (m == d_top) {
        for (int yy = iy; yy >= 0; --yy)
            for (int xx = ix - half; xx < ix - half + width_px; ++xx) erase(xx, yy);
    } else if (m == d_bottom) {
        for (int yy = iy; yy < mask.h; ++yy)
            for (int xx = ix - half; xx < ix - half + width_px; ++xx) erase(xx, yy);
    } else if (m == d_left) {
        for (int xx = ix; xx >= 0; --xx)
            for (int yy = iy - half; yy < iy - half + width_px; ++yy) erase(xx, yy);
    } else {
        for (int xx = ix; xx < mask.w; ++xx)
            for (int yy = iy - half; yy < iy - half + width_px; ++yy) erase(xx, yy);
    }
}

// Scattered convex solids that never overlap: filled angular bars, triangles
// and skinny ellipses, whose one-sided edges leave a peaked, asymmetric
// orientation histogram, unlike a marker's stroke work.
void paint_scattered(InkMask& mask, Rng& rng, int w, int h) {
    const double scale = std::min(w, h);
    const int target = static_cast<int>(rng.uniform_int(7, 14));
    struct Placed {
        double x, y, r;
    };
    std::vector<Placed> placed;
    for (int i = 0; i < target; ++i) {
        for (int attempt = 0; attempt < 120; ++attempt) {
            const double r = rng.uniform(0.05, 0.16) * scale;
            const double x = rng.uniform(r + 3, w - r - 3);
            const double y = rng.uniform(r + 3, h - r - 3);
            bool clear = true;
            for (const auto& p : placed)
                if (std::hypot(x - p.x, y - p.y) < r + p.r + 2.0) {
                    clear = false;
                    break;
                }
            if (!clear) continue;
            const double kind = rng.unit();
            if (kind < 0.6) { // bar
                WobblyShape bar;
                bar.cx = x;
                bar.cy = y;
                bar.a = r;
                bar.b = std::max(2.0, r * rng.uniform(0.1, 0.22));
                bar.rot = rng.uniform(0.0, kTau);
                bar.exponent = 8.0;
                paint(mask, bar, random_ink(rng));
                placed.push_back({x, y, bar.max_radius()});
            } else if (kind < 0.9) { // triangle
                Triangle t;
                std::array<std::array<double, 2>*, 3> vs{&t.v0, &t.v1, &t.v2};
                for (int v = 0; v < 3; ++v) {
                    const double ang = kTau * (v + rng.uniform(0.0, 0.6)) / 3.0;
                    const double vr = r * rng.uniform(0.6, 1.0);
                    (*vs[v])[0] = x + vr * std::cos(ang);
                    (*vs[v])[1] = y + vr * std::sin(ang);
                }
                paint(mask, t, random_ink(rng));
                placed.push_back({x, y, r});
            } else { // skinny ellipse
                WobblyShape e = random_wobble(rng, x, y, r, std::max(2.0, r * rng.uniform(0.2, 0.4)),
                                              2.0, 0.03);
                paint(mask, e, random_ink(rng));
                placed.push_back({x, y, e.max_radius()});
            }
            break;
        }
    }
}

std::vector<int> random_counts(Rng& rng, int regions, int max_count) {
    std::vector<int> counts(static_cast<std::size_t>(regions));
    for (auto& c : counts) c = static_cast<int>(rng.uniform_int(1, max_count));
    std::sort(counts.begin(), counts.end());
    return counts;
}

void apply_noise(GrayImage& img, double level, Rng& rng) {
    if (level <= 0.0) return;
    const std::size_t n = img.pixel_count();
    const std::size_t hits = static_cast<std::size_t>(std::llround(level * static_cast<double>(n)));
    if (hits == 0) return;
    const auto idx = rng.sample_without_replacement(n, std::min(hits, n));
    for (std::size_t i : idx) img.data[i] = rng.coin() ? 255 : 0;
}

void paint_background_dabs(InkMask& mask, Rng& rng, const MarkerOutline& outline) {
    const int count = static_cast<int>(rng.uniform_int(1, 3));
    for (int i = 0; i < count; ++i) {
        for (int attempt = 0; attempt < 80; ++attempt) {
            const double r = rng.uniform(3.0, 7.0);
            const double x = rng.uniform(r + 2, mask.w - r - 2);
            const double y = rng.uniform(r + 2, mask.h - r - 2);
            if (std::hypot(x - outline.lobes.front().cx, y - outline.lobes.front().cy) <
                outline.reach() + r + 6.0)
                continue;
            WobblyShape dab = random_wobble(rng, x, y, r, r * rng.uniform(0.8, 1.0), 2.0, 0.03);
            paint(mask, dab, random_ink(rng));
            break;
        }
    }
}

// Moves every blob onto the inner edge of the ring, merging it with the
// stroke work: all regions end up without separate blobs.
void push_blobs_onto_ring(MarkerLayout& layout, Rng& rng) {
    const auto& main_lobe = layout.outline.lobes.front();
    for (auto& region : layout.blobs)
        for (auto& blob : region) {
            const double ang = rng.uniform(0.0, kTau);
            const double r = main_lobe.boundary_radius(ang) - layout.outline.ring_thickness;
            blob.cx = main_lobe.cx + r * std::cos(ang);
            blob.cy = main_lobe.cy + r * std::sin(ang);
        }
}

} // namespace

GrayImage render(const GenSpec& spec) {
    if (spec.canvas_width < 64 || spec.canvas_height < 64)
        throw InvalidSpec("canvas must be at least 64x64");
    if (spec.noise_level < 0.0 || spec.noise_level > 1.0)
        throw InvalidSpec("noise_level must lie in [0, 1]");
    if (spec.style == GenStyle::artcode && spec.code.empty())
        throw InvalidSpec("artcode style requires a non-empty code");

    Rng rng(spec.seed);
    InkMask mask(spec.canvas_width, spec.canvas_height);

    switch (spec.style) {
    case GenStyle::artcode: {
        const MarkerLayout layout = plan_marker(rng, mask.w, mask.h, spec.code.counts());
        paint_marker(mask, layout);
        if (spec.background) paint_background_dabs(mask, rng, layout.outline);
        break;
    }
    case GenStyle::non_artcode_random: {
        const double variant = rng.unit();
        if (variant < 0.85) {
            paint_scattered(mask, rng, mask.w, mask.h);
        } else if (variant < 0.90) {
            // Empty region: a marker whose largest region has no blobs.
            auto counts = random_counts(rng, static_cast<int>(rng.uniform_int(4, 6)), 5);
            MarkerLayout layout = plan_marker(rng, mask.w, mask.h, counts);
            layout.blobs.front().clear();
            layout.blob_values.front().clear();
            paint_marker(mask, layout);
        } else if (variant < 0.97) {
            // Open boundary: every region leaks outside through a wide channel.
            auto counts = random_counts(rng, static_cast<int>(rng.uniform_int(4, 6)), 5);
            const MarkerLayout layout = plan_marker(rng, mask.w, mask.h, counts);
            paint_marker(mask, layout);
            for (const auto& seed : layout.seeds) carve_channel(mask, seed[0], seed[1], 3);
        } else {
            // Blobs touching the region edge: all blobs merge with the ring.
            auto counts = random_counts(rng, static_cast<int>(rng.uniform_int(4, 6)), 3);
            MarkerLayout layout = plan_marker(rng, mask.w, mask.h, counts);
            push_blobs_onto_ring(layout, rng);
            paint_marker(mask, layout);
        }
        break;
    }
    case GenStyle::artcode_like: {
        // Repeated substructure (equal blob counts per region), then a 1 px
        // gap per region breaks the root so the whole image is not a marker.
        const int per_region = static_cast<int>(rng.uniform_int(1, 3));
        const std::vector<int> counts(4, per_region);
        const MarkerLayout layout = plan_marker(rng, mask.w, mask.h, counts);
        paint_marker(mask, layout);
        for (const auto& seed : layout.seeds) carve_channel(mask, seed[0], seed[1], 1);
        break;
    }
    }

    GrayImage img(spec.canvas_width, spec.canvas_height, 255);
    for (std::size_t i = 0; i < img.data.size(); ++i)
        if (mask.ink[i] >= 0) img.data[i] = static_cast<std::uint8_t>(mask.ink[i]);
    apply_noise(img, spec.noise_level, rng);
    return img;
}

} // namespace artcode
