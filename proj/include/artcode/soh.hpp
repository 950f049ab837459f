#pragma once

#include "artcode/image.hpp"

#include <vector>

namespace artcode {

struct SohConfig {
    int bin_count = 36;
    bool signed_orientations = true;    // bins cover [0, 360); unsigned folds to [0, 180)
    double mag_threshold_frac = 8.0 / 255.0; // of the maximum attainable gradient magnitude
    std::vector<int> shifts;            // empty: defaults to {bin_count/4, bin_count/2}

    std::vector<int> resolved_shifts() const {
        if (!shifts.empty()) return shifts;
        return {bin_count / 4, bin_count / 2};
    }
    /// Feature dimensionality: one symmetry score per shift, two smoothness
    /// scores, entropy and top-4 mass fraction.
    int feature_dim() const { return static_cast<int>(resolved_shifts().size()) + 2 + 2; }
};

/// Magnitude-weighted gradient orientation histogram. Bin k is centered on
/// angle k * (360 / bin_count); mass landing exactly on a bin boundary
/// (diagonal gradients) is split evenly between the two adjacent bins, which
/// keeps the histogram exactly covariant under image flips.
struct OrientationHistogram {
    std::vector<double> bins;
    int bin_count = 0;
    bool signed_orientations = true;

    double total_mass() const;
};

/// Central-difference gradients over interior pixels; magnitudes below the
/// configured threshold are ignored. Throws ImageTooSmall below 3x3.
OrientationHistogram orientation_histogram(const GrayImage& img, const SohConfig& cfg = {});

/// Normalized circular-shift distances (1 - cosine of L2-normalized bins) for
/// each configured shift. All-zero histograms score 0 by convention.
std::vector<double> symmetry_profile(const OrientationHistogram& h, const SohConfig& cfg = {});

/// Mass-normalized chi-squared distances between the histogram and (a) its
/// 1-bin circular shift, (b) its window-3 circular moving average.
std::vector<double> smoothness_profile(const OrientationHistogram& h);

/// The SOH feature vector:
/// [symmetry per shift || smoothness pair || entropy bits || top-4 mass share].
struct SohVector {
    std::vector<double> values;

    int dim() const { return static_cast<int>(values.size()); }
};

SohVector extract_soh(const GrayImage& img, const SohConfig& cfg = {});

} // namespace artcode
