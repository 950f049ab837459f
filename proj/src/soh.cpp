#include "artcode/soh.hpp"

#include "artcode/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace artcode {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

double shifted(const std::vector<double>& v, std::size_t i, int s) {
    const std::size_t n = v.size();
    return v[(i + n - static_cast<std::size_t>(s) % n) % n];
}

} // namespace

double OrientationHistogram::total_mass() const {
    double m = 0;
    for (double b : bins) m += b;
    return m;
}

OrientationHistogram orientation_histogram(const GrayImage& img, const SohConfig& cfg) {
    if (img.width < 3 || img.height < 3)
        throw ImageTooSmall("orientation histogram needs at least a 3x3 image");
    if (cfg.bin_count < 4) throw InvalidArgument("bin_count must be >= 4");

    OrientationHistogram h;
    h.bin_count = cfg.bin_count;
    h.signed_orientations = cfg.signed_orientations;
    h.bins.assign(static_cast<std::size_t>(cfg.bin_count), 0.0);

    const double full_circle = cfg.signed_orientations ? 360.0 : 180.0;
    const double bin_width = full_circle / cfg.bin_count;
    // Central differences of 8-bit data span [-255, 255] per axis.
    const double mag_threshold = cfg.mag_threshold_frac * 255.0 * std::numbers::sqrt2;

    auto deposit = [&](double angle_deg, double mass) {
        double u = angle_deg / bin_width + 0.5;
        u -= std::floor(u / cfg.bin_count) * cfg.bin_count;
        const double nearest = std::round(u);
        if (std::abs(u - nearest) < 1e-9) {
            // Exactly on a bin edge (realizable only for diagonal gradients):
            // split the mass so flips permute bins exactly.
            const int hi = static_cast<int>(nearest) % cfg.bin_count;
            const int lo = (hi + cfg.bin_count - 1) % cfg.bin_count;
            h.bins[static_cast<std::size_t>(lo)] += 0.5 * mass;
            h.bins[static_cast<std::size_t>(hi)] += 0.5 * mass;
        } else {
            const int k = static_cast<int>(std::floor(u)) % cfg.bin_count;
            h.bins[static_cast<std::size_t>(k)] += mass;
        }
    };

    for (int y = 1; y < img.height - 1; ++y) {
        for (int x = 1; x < img.width - 1; ++x) {
            const int gx = static_cast<int>(img.at(x + 1, y)) - static_cast<int>(img.at(x - 1, y));
            const int gy = static_cast<int>(img.at(x, y + 1)) - static_cast<int>(img.at(x, y - 1));
            if (gx == 0 && gy == 0) continue;
            const double mag = std::hypot(static_cast<double>(gx), static_cast<double>(gy));
            if (mag < mag_threshold) continue;
            double angle = std::atan2(static_cast<double>(gy), static_cast<double>(gx)) * kDegPerRad;
            if (angle < 0) angle += 360.0;
            if (!cfg.signed_orientations && angle >= 180.0) angle -= 180.0;
            deposit(angle, mag);
        }
    }
    return h;
}

std::vector<double> symmetry_profile(const OrientationHistogram& h, const SohConfig& cfg) {
    const auto shifts = cfg.resolved_shifts();
    std::vector<double> out(shifts.size(), 0.0);
    double norm_sq = 0;
    for (double b : h.bins) norm_sq += b * b;
    if (norm_sq <= 0.0) return out; // all-zero histogram: perfectly symmetric by convention
    for (std::size_t si = 0; si < shifts.size(); ++si) {
        double dot = 0;
        for (std::size_t i = 0; i < h.bins.size(); ++i)
            dot += h.bins[i] * shifted(h.bins, i, shifts[si]);
        out[si] = std::clamp(1.0 - dot / norm_sq, 0.0, 1.0);
    }
    return out;
}

namespace {

double chi_squared_normalized(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0, mass = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double s = a[i] + b[i];
        mass += s;
        if (s > 0) sum += (a[i] - b[i]) * (a[i] - b[i]) / s;
    }
    return mass > 0 ? sum / mass : 0.0;
}

} // namespace

std::vector<double> smoothness_profile(const OrientationHistogram& h) {
    const std::size_t n = h.bins.size();
    std::vector<double> shift1(n), smooth(n);
    for (std::size_t i = 0; i < n; ++i) {
        shift1[i] = shifted(h.bins, i, 1);
        smooth[i] = (h.bins[(i + n - 1) % n] + h.bins[i] + h.bins[(i + 1) % n]) / 3.0;
    }
    return {chi_squared_normalized(h.bins, shift1), chi_squared_normalized(h.bins, smooth)};
}

SohVector extract_soh(const GrayImage& img, const SohConfig& cfg) {
    const OrientationHistogram h = orientation_histogram(img, cfg);

    SohVector v;
    const auto sym = symmetry_profile(h, cfg);
    const auto smooth = smoothness_profile(h);
    v.values.insert(v.values.end(), sym.begin(), sym.end());
    v.values.insert(v.values.end(), smooth.begin(), smooth.end());

    const double mass = h.total_mass();
    double entropy = 0;
    if (mass > 0) {
        for (double b : h.bins) {
            if (b <= 0) continue;
            const double p = b / mass;
            entropy -= p * std::log2(p);
        }
    }
    v.values.push_back(entropy);

    double top4 = 0;
    if (mass > 0) {
        std::vector<double> sorted = h.bins;
        std::partial_sort(sorted.begin(), sorted.begin() + std::min<std::size_t>(4, sorted.size()),
                          sorted.end(), std::greater<double>());
        for (std::size_t i = 0; i < std::min<std::size_t>(4, sorted.size()); ++i) top4 += sorted[i];
        top4 /= mass;
    }
    v.values.push_back(std::min(top4, 1.0));
    return v;
}

} // namespace artcode
