#pragma once

#include "artcode/label.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace artcode {

enum class Algo { rf, svm };

std::string to_string(Algo algo);
Algo algo_from_string(const std::string& text);

struct TrainConfig {
    Algo algo = Algo::rf;
    int n_trees = 30;
    int max_depth = 8;
    int min_leaf = 2;
    int feature_subsample = 0; // 0: ceil(sqrt(feature_dim))
    double svm_cost_pos = 2.0; // cost of misclassifying an artcode
    double svm_cost_neg = 1.0;
    int svm_epochs = 200;
    double svm_lr = 0.1;
    double svm_reg = 0.01; // L2 regularization strength
    std::uint64_t seed = 0;
};

/// Axis-aligned decision tree node. feature < 0 marks a leaf; leaves store the
/// fraction of artcode training samples that reached them.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double artcode_fraction = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct Prediction {
    Label label = Label::non_artcode;
    double proba = 0.0; // probability of artcode

    bool operator==(const Prediction&) const = default;
};

/// A trained random forest or linear SVM (with Platt calibration). Immutable
/// after training; safe to share across threads for prediction.
struct TrainedModel {
    Algo algo = Algo::rf;
    int feature_dim = 0;
    TrainConfig config;

    std::vector<std::vector<TreeNode>> trees; // rf

    std::vector<double> weights; // svm, in raw feature space
    double bias = 0.0;
    double platt_a = 0.0;
    double platt_b = 0.0;
};

/// Trains on labeled feature vectors (labels: 1 = artcode, 0 = non-artcode).
/// Deterministic for a fixed config seed.
TrainedModel train(const std::vector<std::vector<double>>& features,
                   const std::vector<int>& labels, const TrainConfig& cfg);

Prediction predict_proba(const TrainedModel& model, const std::vector<double>& x);

/// Versioned JSON persistence; a load(save(m)) round trip yields bit-identical
/// predictions.
void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

} // namespace artcode
