#pragma once

#include "artcode/classifier.hpp"
#include "artcode/image.hpp"
#include "artcode/masks.hpp"
#include "artcode/soh.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace artcode {

/// Block weights: the first n entries carry the separation weight, the last m
/// the occlusion weight, with w_o >= w_s > 0.
class WeightVector {
public:
    WeightVector(int n, int m, double w_s, double w_o);
    static WeightVector defaults(int n = 4, int m = 4) { return {n, m, 0.1, 0.15}; }

    int n() const { return n_; }
    int m() const { return m_; }
    double w_s() const { return w_s_; }
    double w_o() const { return w_o_; }
    std::size_t size() const { return static_cast<std::size_t>(n_ + m_); }
    double at(std::size_t i) const { return i < static_cast<std::size_t>(n_) ? w_s_ : w_o_; }
    double rho_max() const { return n_ * w_s_ + m_ * w_o_; }

private:
    int n_, m_;
    double w_s_, w_o_;
};

/// Rectification thresholds; valid when 0 <= t1 <= t2 <= rho_max.
struct Thresholds {
    double t1 = 0.2;
    double t2 = 0.2;

    void validate(double rho_max) const;
};

/// One classified image: block votes, aggregated likelihood and the final
/// (possibly rectified) label.
struct RhoRecord {
    std::string image_id;
    std::vector<int> p; // 1 = block predicted artcode
    double rho = 0.0;
    Label original_label = Label::non_artcode;
    Label final_label = Label::non_artcode;
    bool rectified = false;
};

struct AugmentConfig {
    MaskSet masks;
    WeightVector weights = WeightVector::defaults();
    Thresholds thresholds;
    bool binarize_votes = true; // false: aggregate raw block probabilities instead
};

/// Cuts the image into n separation blocks (cropped tiles) followed by m
/// occlusion blocks (full canvas, complement whitened).
std::vector<GrayImage> generate_followups(const GrayImage& img, const MaskSet& masks);

/// Inner product of a binary prediction vector with the weights, evaluated
/// per weight level so the defaults stay exact in floating point.
double aggregate_rho(const std::vector<int>& p, const WeightVector& w);

/// Same aggregation over raw block probabilities (non-default mode).
double aggregate_rho_raw(const std::vector<double>& probas, const WeightVector& w);

/// Applies the decision rules: rho < t1 -> non-artcode, rho >= t2 -> artcode,
/// otherwise keep the original label. Returns (final label, rectified).
std::pair<Label, bool> rectify(double rho, const Prediction& original, const Thresholds& t);

/// Full pipeline for one image: follow-up generation, per-block prediction,
/// aggregation, rectification.
RhoRecord classify_augmented(const GrayImage& img, const TrainedModel& model,
                             const AugmentConfig& cfg, const SohConfig& soh_cfg = {},
                             const std::string& image_id = {});

void write_rho_records(const std::vector<RhoRecord>& records, const std::filesystem::path& path);
std::vector<RhoRecord> read_rho_records(const std::filesystem::path& path);

} // namespace artcode
