#include "artcode/classifier.hpp"

#include "artcode/error.hpp"
#include "artcode/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace artcode {

std::string to_string(Algo algo) { return algo == Algo::rf ? "rf" : "svm"; }

Algo algo_from_string(const std::string& text) {
    if (text == "rf") return Algo::rf;
    if (text == "svm") return Algo::svm;
    throw InvalidArgument("unknown algorithm: '" + text + "'");
}

namespace {

void check_training_set(const std::vector<std::vector<double>>& x, const std::vector<int>& y) {
    if (x.size() != y.size()) throw DimensionMismatch("features and labels differ in length");
    if (x.empty()) throw DegenerateTrainingSet("empty training set");
    const std::size_t dim = x.front().size();
    if (dim == 0) throw DimensionMismatch("feature vectors must be non-empty");
    for (const auto& row : x)
        if (row.size() != dim) throw DimensionMismatch("feature vectors differ in dimension");
    std::size_t pos = 0, neg = 0;
    for (int label : y) {
        if (label != 0 && label != 1) throw InvalidArgument("labels must be 0 or 1");
        (label ? pos : neg)++;
    }
    if (pos < 2 || neg < 2)
        throw DegenerateTrainingSet("need at least two samples of each class (artcode=" +
                                    std::to_string(pos) + ", non_artcode=" + std::to_string(neg) +
                                    ")");
}

// ----------------------------------------------------------------- forest --

struct TreeBuilder {
    const std::vector<std::vector<double>>& x;
    const std::vector<int>& y;
    const TrainConfig& cfg;
    int feature_count;
    int subsample;
    Rng& rng;
    std::vector<TreeNode> nodes;

    static double gini(std::size_t pos, std::size_t total) {
        if (total == 0) return 0.0;
        const double p = static_cast<double>(pos) / static_cast<double>(total);
        return 2.0 * p * (1.0 - p);
    }

    int build(std::vector<std::size_t>& idx, int depth) {
        const std::size_t total = idx.size();
        std::size_t pos = 0;
        for (std::size_t i : idx) pos += static_cast<std::size_t>(y[i]);

        const int node_id = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes[node_id].artcode_fraction = total ? static_cast<double>(pos) / total : 0.0;

        if (depth >= cfg.max_depth || pos == 0 || pos == total ||
            total < 2 * static_cast<std::size_t>(cfg.min_leaf))
            return node_id;

        // Gini split over a random feature subset.
        const double node_gini = gini(pos, total);
        int best_feature = -1;
        double best_threshold = 0.0, best_decrease = 1e-12;
        std::vector<std::size_t> order(idx);
        for (std::size_t f_slot : rng.sample_without_replacement(
                 static_cast<std::size_t>(feature_count), static_cast<std::size_t>(subsample))) {
            const int f = static_cast<int>(f_slot);
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return x[a][f] < x[b][f] || (x[a][f] == x[b][f] && a < b);
            });
            std::size_t left_pos = 0;
            for (std::size_t i = 0; i + 1 < total; ++i) {
                left_pos += static_cast<std::size_t>(y[order[i]]);
                if (x[order[i]][f] == x[order[i + 1]][f]) continue;
                const std::size_t nl = i + 1, nr = total - nl;
                if (nl < static_cast<std::size_t>(cfg.min_leaf) ||
                    nr < static_cast<std::size_t>(cfg.min_leaf))
                    continue;
                const double weighted = (nl * gini(left_pos, nl) + nr * gini(pos - left_pos, nr)) /
                                        static_cast<double>(total);
                const double decrease = node_gini - weighted;
                if (decrease > best_decrease) {
                    best_decrease = decrease;
                    best_feature = f;
                    best_threshold = 0.5 * (x[order[i]][f] + x[order[i + 1]][f]);
                }
            }
        }
        if (best_feature < 0) return node_id;

        std::vector<std::size_t> left, right;
        for (std::size_t i : idx)
            (x[i][best_feature] < best_threshold ? left : right).push_back(i);
        if (left.empty() || right.empty()) return node_id; // threshold degenerated numerically

        nodes[node_id].feature = best_feature;
        nodes[node_id].threshold = best_threshold;
        const int l = build(left, depth + 1);
        nodes[node_id].left = l;
        const int r = build(right, depth + 1);
        nodes[node_id].right = r;
        return node_id;
    }
};

TrainedModel train_forest(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                          const TrainConfig& cfg) {
    if (cfg.n_trees < 1) throw InvalidArgument("n_trees must be >= 1");
    const int dim = static_cast<int>(x.front().size());
    const int subsample = cfg.feature_subsample > 0
                              ? std::min(cfg.feature_subsample, dim)
                              : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(dim))));

    TrainedModel model;
    model.algo = Algo::rf;
    model.feature_dim = dim;
    model.config = cfg;
    model.trees.reserve(static_cast<std::size_t>(cfg.n_trees));
    for (int t = 0; t < cfg.n_trees; ++t) {
        Rng rng(cfg.seed + static_cast<std::uint64_t>(t)); // per-tree stream
        std::vector<std::size_t> bootstrap(x.size());
        for (auto& i : bootstrap) i = static_cast<std::size_t>(rng.below(x.size()));
        TreeBuilder builder{x, y, cfg, dim, subsample, rng, {}};
        builder.build(bootstrap, 0);
        model.trees.push_back(std::move(builder.nodes));
    }
    return model;
}

double tree_fraction(const std::vector<TreeNode>& tree, const std::vector<double>& v) {
    int node = 0;
    while (!tree[static_cast<std::size_t>(node)].is_leaf()) {
        const TreeNode& n = tree[static_cast<std::size_t>(node)];
        node = v[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left : n.right;
    }
    return tree[static_cast<std::size_t>(node)].artcode_fraction;
}

// -------------------------------------------------------------------- svm --

// Platt calibration: fits sigma(s) = 1 / (1 + exp(A s + B)) to scores by
// regularized maximum likelihood (Newton with backtracking).
std::pair<double, double> fit_platt(const std::vector<double>& scores, const std::vector<int>& y) {
    const std::size_t n = scores.size();
    double np = 0, nn = 0;
    for (int label : y) (label ? np : nn)++;
    const double t_pos = (np + 1.0) / (np + 2.0);
    const double t_neg = 1.0 / (nn + 2.0);

    double a = 0.0, b = std::log((nn + 1.0) / (np + 1.0));
    auto objective = [&](double aa, double bb) {
        double obj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = y[i] ? t_pos : t_neg;
            const double f = aa * scores[i] + bb;
            obj += f >= 0 ? t * f + std::log1p(std::exp(-f))
                          : (t - 1.0) * f + std::log1p(std::exp(f));
        }
        return obj;
    };

    double fval = objective(a, b);
    for (int iter = 0; iter < 100; ++iter) {
        double h11 = 1e-12, h22 = 1e-12, h21 = 0, g1 = 0, g2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double f = a * scores[i] + b;
            double p, q;
            if (f >= 0) {
                const double e = std::exp(-f);
                p = e / (1.0 + e);
                q = 1.0 / (1.0 + e);
            } else {
                const double e = std::exp(f);
                p = 1.0 / (1.0 + e);
                q = e / (1.0 + e);
            }
            const double t = y[i] ? t_pos : t_neg;
            const double d1 = t - p; // d(obj)/d(f), with p = P(y=1 | f)
            const double d2 = p * q;
            g1 += scores[i] * d1;
            g2 += d1;
            h11 += scores[i] * scores[i] * d2;
            h22 += d2;
            h21 += scores[i] * d2;
        }
        if (std::abs(g1) < 1e-10 && std::abs(g2) < 1e-10) break;
        const double det = h11 * h22 - h21 * h21;
        const double da = -(h22 * g1 - h21 * g2) / det;
        const double db = -(-h21 * g1 + h11 * g2) / det;
        const double grad_dot_step = g1 * da + g2 * db;

        double step = 1.0;
        bool moved = false;
        while (step >= 1e-10) {
            const double na = a + step * da, nb = b + step * db;
            const double nf = objective(na, nb);
            if (nf < fval + 1e-4 * step * grad_dot_step) {
                a = na;
                b = nb;
                fval = nf;
                moved = true;
                break;
            }
            step /= 2.0;
        }
        if (!moved) break;
    }
    return {a, b};
}

TrainedModel train_svm(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                       const TrainConfig& cfg) {
    if (cfg.svm_cost_pos <= 0 || cfg.svm_cost_neg <= 0)
        throw InvalidArgument("svm costs must be positive");
    if (cfg.svm_epochs < 1) throw InvalidArgument("svm_epochs must be >= 1");
    const std::size_t n = x.size();
    const std::size_t dim = x.front().size();

    // Standardize for stable steps; the affine map folds back into (w, b).
    std::vector<double> mean(dim, 0.0), scale(dim, 0.0);
    for (const auto& row : x)
        for (std::size_t j = 0; j < dim; ++j) mean[j] += row[j];
    for (auto& m : mean) m /= static_cast<double>(n);
    for (const auto& row : x)
        for (std::size_t j = 0; j < dim; ++j) {
            const double d = row[j] - mean[j];
            scale[j] += d * d;
        }
    for (auto& s : scale) {
        s = std::sqrt(s / static_cast<double>(n));
        if (s < 1e-12) s = 1.0;
    }

    std::vector<double> w(dim, 0.0);
    double b = 0.0;
    const double lambda = cfg.svm_reg;
    for (int epoch = 0; epoch < cfg.svm_epochs; ++epoch) {
        const double lr = cfg.svm_lr / (1.0 + cfg.svm_lr * lambda * epoch);
        std::vector<double> grad(dim, 0.0);
        double grad_b = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double label = y[i] ? 1.0 : -1.0;
            const double cost = y[i] ? cfg.svm_cost_pos : cfg.svm_cost_neg;
            double s = b;
            for (std::size_t j = 0; j < dim; ++j) s += w[j] * (x[i][j] - mean[j]) / scale[j];
            if (label * s < 1.0) {
                for (std::size_t j = 0; j < dim; ++j)
                    grad[j] -= cost * label * (x[i][j] - mean[j]) / scale[j];
                grad_b -= cost * label;
            }
        }
        for (std::size_t j = 0; j < dim; ++j)
            w[j] -= lr * (lambda * w[j] + grad[j] / static_cast<double>(n));
        b -= lr * grad_b / static_cast<double>(n);
    }

    // Raw-space parameters: w'_j = w_j / scale_j, b' = b - sum w_j mean_j / scale_j.
    TrainedModel model;
    model.algo = Algo::svm;
    model.feature_dim = static_cast<int>(dim);
    model.config = cfg;
    model.weights.assign(dim, 0.0);
    model.bias = b;
    for (std::size_t j = 0; j < dim; ++j) {
        model.weights[j] = w[j] / scale[j];
        model.bias -= w[j] * mean[j] / scale[j];
    }

    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = model.bias;
        for (std::size_t j = 0; j < dim; ++j) s += model.weights[j] * x[i][j];
        scores[i] = s;
    }
    const auto [pa, pb] = fit_platt(scores, y);
    model.platt_a = pa;
    model.platt_b = pb;
    return model;
}

} // namespace

TrainedModel train(const std::vector<std::vector<double>>& features, const std::vector<int>& labels,
                   const TrainConfig& cfg) {
    check_training_set(features, labels);
    return cfg.algo == Algo::rf ? train_forest(features, labels, cfg)
                                : train_svm(features, labels, cfg);
}

Prediction predict_proba(const TrainedModel& model, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != model.feature_dim)
        throw DimensionMismatch("expected " + std::to_string(model.feature_dim) +
                                " features, got " + std::to_string(x.size()));
    double proba = 0.0;
    if (model.algo == Algo::rf) {
        for (const auto& tree : model.trees) proba += tree_fraction(tree, x);
        proba /= static_cast<double>(model.trees.size());
    } else {
        double s = model.bias;
        for (std::size_t j = 0; j < x.size(); ++j) s += model.weights[j] * x[j];
        const double f = model.platt_a * s + model.platt_b;
        proba = f >= 0 ? std::exp(-f) / (1.0 + std::exp(-f)) : 1.0 / (1.0 + std::exp(f));
    }
    Prediction out;
    out.proba = proba;
    out.label = proba >= 0.5 ? Label::artcode : Label::non_artcode; // tie favors recall
    return out;
}

} // namespace artcode
