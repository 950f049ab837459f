#pragma once

#include "artcode/augment.hpp"
#include "artcode/classifier.hpp"
#include "artcode/dataset.hpp"
#include "artcode/masks.hpp"
#include "artcode/metrics.hpp"
#include "artcode/soh.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace artcode {

struct CvPlan {
    int k = 5;
    int repeats = 5;
    bool stratified = true;
    std::uint64_t seed = 0;
};

/// SOH vectors for every image and (optionally) its follow-up blocks, so the
/// cross-validation loop never re-reads pixels.
struct FeatureCache {
    std::vector<std::string> ids;
    std::vector<int> labels; // 1 = artcode
    std::vector<std::vector<double>> full;
    std::vector<std::vector<std::vector<double>>> blocks; // empty when masks were not given

    std::size_t size() const { return ids.size(); }
};

FeatureCache build_feature_cache(const std::filesystem::path& manifest_path,
                                 const DatasetManifest& manifest, const SohConfig& soh_cfg = {},
                                 const MaskSet* masks = nullptr);

struct RectificationClassSummary {
    double correct = 0;       // rectifications toward the true label, per repeat
    double incorrect = 0;     // rectifications away from the true label, per repeat
    double correct_pct = 0;   // correct / class size, in percent
    double incorrect_pct = 0;
    long long class_size = 0;
};

struct RectificationSummary {
    RectificationClassSummary artcode;
    RectificationClassSummary non_artcode;
    double net_correct_pct = 0;
    long long total = 0;
};

struct CvMetrics {
    MetricSet mean;                    // arithmetic mean over repeats
    std::vector<MetricSet> per_repeat; // pooled over the k folds of each repeat
};

struct CvResult {
    CvMetrics original;
    std::optional<CvMetrics> augmented;
    std::optional<RectificationSummary> rectification;
    std::vector<RhoRecord> records; // every repeat's held-out classifications
};

struct AugmentRunConfig {
    WeightVector weights = WeightVector::defaults();
    Thresholds thresholds;
    bool binarize_votes = true;
};

/// Repeated stratified k-fold cross-validation: per repeat, every sample is
/// scored once by a model that never saw it; metrics are computed per repeat
/// and macro-averaged. With `augment`, the MR pipeline is evaluated alongside
/// the original classifier.
CvResult run_cv(const FeatureCache& cache, const TrainConfig& train_cfg,
                const std::optional<AugmentRunConfig>& augment, const CvPlan& plan,
                double f_beta = 2.0);

/// Tallies correct/incorrect rectifications against ground truth. Records may
/// contain several repeats (each id the same number of times); counts are
/// averaged per repeat.
RectificationSummary rectification_report(const std::vector<RhoRecord>& records,
                                          const DatasetManifest& truth);

} // namespace artcode
