#include "artcode/classifier.hpp"
#include "artcode/error.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace artcode {

namespace {

constexpr int kModelVersion = 1;

nlohmann::json config_to_json(const TrainConfig& cfg) {
    return {
        {"algo", to_string(cfg.algo)},
        {"n_trees", cfg.n_trees},
        {"max_depth", cfg.max_depth},
        {"min_leaf", cfg.min_leaf},
        {"feature_subsample", cfg.feature_subsample},
        {"svm_cost_pos", cfg.svm_cost_pos},
        {"svm_cost_neg", cfg.svm_cost_neg},
        {"svm_epochs", cfg.svm_epochs},
        {"svm_lr", cfg.svm_lr},
        {"svm_reg", cfg.svm_reg},
        {"seed", cfg.seed},
    };
}

TrainConfig config_from_json(const nlohmann::json& j) {
    TrainConfig cfg;
    cfg.algo = algo_from_string(j.at("algo").get<std::string>());
    cfg.n_trees = j.at("n_trees").get<int>();
    cfg.max_depth = j.at("max_depth").get<int>();
    cfg.min_leaf = j.at("min_leaf").get<int>();
    cfg.feature_subsample = j.at("feature_subsample").get<int>();
    cfg.svm_cost_pos = j.at("svm_cost_pos").get<double>();
    cfg.svm_cost_neg = j.at("svm_cost_neg").get<double>();
    cfg.svm_epochs = j.at("svm_epochs").get<int>();
    cfg.svm_lr = j.at("svm_lr").get<double>();
    cfg.svm_reg = j.at("svm_reg").get<double>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    return cfg;
}

} // namespace

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
    nlohmann::json j;
    j["version"] = kModelVersion;
    j["algo"] = to_string(model.algo);
    j["feature_dim"] = model.feature_dim;
    j["config"] = config_to_json(model.config);
    if (model.algo == Algo::rf) {
        nlohmann::json trees = nlohmann::json::array();
        for (const auto& tree : model.trees) {
            nlohmann::json nodes = nlohmann::json::array();
            for (const auto& n : tree)
                nodes.push_back({{"f", n.feature},
                                 {"t", n.threshold},
                                 {"l", n.left},
                                 {"r", n.right},
                                 {"p", n.artcode_fraction}});
            trees.push_back(std::move(nodes));
        }
        j["trees"] = std::move(trees);
    } else {
        j["weights"] = {{"w", model.weights},
                        {"bias", model.bias},
                        {"platt_a", model.platt_a},
                        {"platt_b", model.platt_b}};
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot create " + path.string());
    out << j.dump(2) << "\n";
    if (!out) throw IoError("short write to " + path.string());
}

TrainedModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw CorruptModel("unparseable model file " + path.string() + ": " + ex.what());
    }
    try {
        const int version = j.at("version").get<int>();
        if (version != kModelVersion)
            throw VersionMismatch("model version " + std::to_string(version) + " unsupported (want " +
                                  std::to_string(kModelVersion) + ")");
        TrainedModel model;
        model.algo = algo_from_string(j.at("algo").get<std::string>());
        model.feature_dim = j.at("feature_dim").get<int>();
        model.config = config_from_json(j.at("config"));
        if (model.algo == Algo::rf) {
            for (const auto& tree_json : j.at("trees")) {
                std::vector<TreeNode> tree;
                for (const auto& nj : tree_json) {
                    TreeNode n;
                    n.feature = nj.at("f").get<int>();
                    n.threshold = nj.at("t").get<double>();
                    n.left = nj.at("l").get<int>();
                    n.right = nj.at("r").get<int>();
                    n.artcode_fraction = nj.at("p").get<double>();
                    tree.push_back(n);
                }
                if (tree.empty()) throw CorruptModel("empty tree in " + path.string());
                model.trees.push_back(std::move(tree));
            }
            if (model.trees.empty()) throw CorruptModel("forest without trees in " + path.string());
        } else {
            const auto& wj = j.at("weights");
            model.weights = wj.at("w").get<std::vector<double>>();
            model.bias = wj.at("bias").get<double>();
            model.platt_a = wj.at("platt_a").get<double>();
            model.platt_b = wj.at("platt_b").get<double>();
            if (static_cast<int>(model.weights.size()) != model.feature_dim)
                throw CorruptModel("weight vector length mismatch in " + path.string());
        }
        return model;
    } catch (const nlohmann::json::exception& ex) {
        throw CorruptModel("malformed model file " + path.string() + ": " + ex.what());
    }
}

} // namespace artcode
