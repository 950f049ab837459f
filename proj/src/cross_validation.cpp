#include "artcode/cross_validation.hpp"

#include "artcode/error.hpp"
#include "artcode/rng.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace artcode {

FeatureCache build_feature_cache(const std::filesystem::path& manifest_path,
                                 const DatasetManifest& manifest, const SohConfig& soh_cfg,
                                 const MaskSet* masks) {
    FeatureCache cache;
    cache.ids.reserve(manifest.entries.size());
    for (const auto& entry : manifest.entries) {
        const GrayImage img = load_entry_image(manifest_path, entry);
        cache.ids.push_back(entry.id);
        cache.labels.push_back(entry.label == Label::artcode ? 1 : 0);
        cache.full.push_back(extract_soh(img, soh_cfg).values);
        if (masks) {
            const auto blocks = generate_followups(img, *masks);
            std::vector<std::vector<double>> block_features;
            block_features.reserve(blocks.size());
            for (const auto& block : blocks)
                block_features.push_back(extract_soh(block, soh_cfg).values);
            cache.blocks.push_back(std::move(block_features));
        }
    }
    return cache;
}

namespace {

// Fold assignment: shuffle within each class, then deal round-robin, so fold
// class ratios stay within one sample of the global ratio.
std::vector<int> assign_folds(const std::vector<int>& labels, const CvPlan& plan, int repeat) {
    const int k = plan.k;
    if (k < 2) throw InvalidArgument("cross-validation needs k >= 2");
    std::vector<int> folds(labels.size(), -1);
    Rng rng(derive_seed(plan.seed, static_cast<std::uint64_t>(repeat)));
    if (plan.stratified) {
        for (int cls = 0; cls <= 1; ++cls) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < labels.size(); ++i)
                if (labels[i] == cls) members.push_back(i);
            if (members.size() < static_cast<std::size_t>(k))
                throw FoldTooSmall("class with " + std::to_string(members.size()) +
                                   " samples cannot fill " + std::to_string(k) + " folds");
            rng.shuffle(members);
            for (std::size_t i = 0; i < members.size(); ++i)
                folds[members[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
        }
    } else {
        if (labels.size() < static_cast<std::size_t>(k))
            throw FoldTooSmall("dataset smaller than the number of folds");
        std::vector<std::size_t> members(labels.size());
        for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
        rng.shuffle(members);
        for (std::size_t i = 0; i < members.size(); ++i)
            folds[members[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
    }
    return folds;
}

MetricSet mean_metrics(const std::vector<MetricSet>& sets) {
    MetricSet mean;
    mean.beta = sets.front().beta;
    for (const auto& m : sets) {
        mean.precision += m.precision;
        mean.recall += m.recall;
        mean.accuracy += m.accuracy;
        mean.tnr += m.tnr;
        mean.f_beta += m.f_beta;
        mean.mcc += m.mcc;
    }
    const double n = static_cast<double>(sets.size());
    mean.precision /= n;
    mean.recall /= n;
    mean.accuracy /= n;
    mean.tnr /= n;
    mean.f_beta /= n;
    mean.mcc /= n;
    return mean;
}

void count_prediction(ConfusionCounts& c, int truth, Label predicted) {
    const bool positive = predicted == Label::artcode;
    if (truth == 1)
        positive ? ++c.tp : ++c.fn;
    else
        positive ? ++c.fp : ++c.tn;
}

} // namespace

CvResult run_cv(const FeatureCache& cache, const TrainConfig& train_cfg,
                const std::optional<AugmentRunConfig>& augment, const CvPlan& plan,
                double f_beta) {
    if (cache.size() == 0) throw InvalidArgument("empty feature cache");
    if (plan.repeats < 1) throw InvalidArgument("repeats must be >= 1");
    if (augment) {
        if (cache.blocks.size() != cache.size())
            throw InvalidArgument("augmented evaluation needs cached block features");
        augment->thresholds.validate(augment->weights.rho_max());
        if (!cache.blocks.empty() &&
            cache.blocks.front().size() != augment->weights.size())
            throw DimensionMismatch("weight vector does not match cached block count");
    }

    CvResult result;
    double rect_correct_pos = 0, rect_incorrect_pos = 0;
    double rect_correct_neg = 0, rect_incorrect_neg = 0;

    for (int repeat = 0; repeat < plan.repeats; ++repeat) {
        const std::vector<int> folds = assign_folds(cache.labels, plan, repeat);
        ConfusionCounts confusion_orig, confusion_aug;
        for (int fold = 0; fold < plan.k; ++fold) {
            std::vector<std::vector<double>> train_x;
            std::vector<int> train_y;
            std::vector<std::size_t> test_idx;
            for (std::size_t i = 0; i < cache.size(); ++i) {
                if (folds[i] == fold) {
                    test_idx.push_back(i);
                } else {
                    train_x.push_back(cache.full[i]);
                    train_y.push_back(cache.labels[i]);
                }
            }
            TrainConfig fold_cfg = train_cfg;
            fold_cfg.seed = derive_seed(train_cfg.seed,
                                        static_cast<std::uint64_t>(repeat * plan.k + fold));
            const TrainedModel model = train(train_x, train_y, fold_cfg);

            for (std::size_t i : test_idx) {
                const Prediction original = predict_proba(model, cache.full[i]);
                count_prediction(confusion_orig, cache.labels[i], original.label);
                if (!augment) continue;

                const auto& blocks = cache.blocks[i];
                std::vector<int> p(blocks.size());
                std::vector<double> probas(blocks.size());
                for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
                    probas[bi] = predict_proba(model, blocks[bi]).proba;
                    p[bi] = probas[bi] >= 0.5 ? 1 : 0;
                }
                RhoRecord rec;
                rec.image_id = cache.ids[i];
                rec.p = std::move(p);
                rec.rho = augment->binarize_votes ? aggregate_rho(rec.p, augment->weights)
                                                  : aggregate_rho_raw(probas, augment->weights);
                rec.original_label = original.label;
                const auto [final_label, rectified] =
                    rectify(rec.rho, original, augment->thresholds);
                rec.final_label = final_label;
                rec.rectified = rectified;
                count_prediction(confusion_aug, cache.labels[i], rec.final_label);
                if (rectified) {
                    const bool toward_truth =
                        (rec.final_label == Label::artcode) == (cache.labels[i] == 1);
                    if (cache.labels[i] == 1)
                        (toward_truth ? rect_correct_pos : rect_incorrect_pos) += 1.0;
                    else
                        (toward_truth ? rect_correct_neg : rect_incorrect_neg) += 1.0;
                }
                result.records.push_back(std::move(rec));
            }
        }
        result.original.per_repeat.push_back(compute_metrics(confusion_orig, f_beta));
        if (augment) {
            if (!result.augmented) result.augmented.emplace();
            result.augmented->per_repeat.push_back(compute_metrics(confusion_aug, f_beta));
        }
    }

    result.original.mean = mean_metrics(result.original.per_repeat);
    if (result.augmented) {
        result.augmented->mean = mean_metrics(result.augmented->per_repeat);

        RectificationSummary rect;
        long long pos_size = 0, neg_size = 0;
        for (int label : cache.labels) (label == 1 ? pos_size : neg_size)++;
        const double reps = static_cast<double>(plan.repeats);
        rect.artcode.class_size = pos_size;
        rect.artcode.correct = rect_correct_pos / reps;
        rect.artcode.incorrect = rect_incorrect_pos / reps;
        rect.artcode.correct_pct = rect.artcode.correct / static_cast<double>(pos_size) * 100.0;
        rect.artcode.incorrect_pct = rect.artcode.incorrect / static_cast<double>(pos_size) * 100.0;
        rect.non_artcode.class_size = neg_size;
        rect.non_artcode.correct = rect_correct_neg / reps;
        rect.non_artcode.incorrect = rect_incorrect_neg / reps;
        rect.non_artcode.correct_pct =
            rect.non_artcode.correct / static_cast<double>(neg_size) * 100.0;
        rect.non_artcode.incorrect_pct =
            rect.non_artcode.incorrect / static_cast<double>(neg_size) * 100.0;
        rect.total = pos_size + neg_size;
        rect.net_correct_pct = net_rectification_percent(
            rect.artcode.correct, rect.artcode.incorrect, rect.non_artcode.correct,
            rect.non_artcode.incorrect, static_cast<double>(rect.total));
        result.rectification = rect;
    }
    return result;
}

RectificationSummary rectification_report(const std::vector<RhoRecord>& records,
                                          const DatasetManifest& truth) {
    if (records.empty()) throw InvalidArgument("no records to report on");
    std::map<std::string, int> truth_by_id;
    for (const auto& e : truth.entries)
        truth_by_id[e.id] = e.label == Label::artcode ? 1 : 0;

    std::set<std::string> distinct;
    for (const auto& r : records) {
        if (!truth_by_id.count(r.image_id))
            throw InvalidArgument("record id '" + r.image_id + "' missing from the manifest");
        distinct.insert(r.image_id);
    }
    if (records.size() % distinct.size() != 0)
        throw InvalidArgument("records do not cover every id the same number of times");
    const double repeats = static_cast<double>(records.size() / distinct.size());

    RectificationSummary rect;
    long long pos_size = 0, neg_size = 0;
    for (const auto& id : distinct) (truth_by_id[id] == 1 ? pos_size : neg_size)++;

    double cp = 0, ip = 0, cn = 0, in = 0;
    for (const auto& r : records) {
        if (!r.rectified) continue;
        const int truth_label = truth_by_id[r.image_id];
        const bool toward_truth = (r.final_label == Label::artcode) == (truth_label == 1);
        if (truth_label == 1)
            (toward_truth ? cp : ip) += 1.0;
        else
            (toward_truth ? cn : in) += 1.0;
    }
    cp /= repeats;
    ip /= repeats;
    cn /= repeats;
    in /= repeats;

    rect.artcode.class_size = pos_size;
    rect.artcode.correct = cp;
    rect.artcode.incorrect = ip;
    if (pos_size > 0) {
        rect.artcode.correct_pct = cp / static_cast<double>(pos_size) * 100.0;
        rect.artcode.incorrect_pct = ip / static_cast<double>(pos_size) * 100.0;
    }
    rect.non_artcode.class_size = neg_size;
    rect.non_artcode.correct = cn;
    rect.non_artcode.incorrect = in;
    if (neg_size > 0) {
        rect.non_artcode.correct_pct = cn / static_cast<double>(neg_size) * 100.0;
        rect.non_artcode.incorrect_pct = in / static_cast<double>(neg_size) * 100.0;
    }
    rect.total = pos_size + neg_size;
    rect.net_correct_pct =
        net_rectification_percent(cp, ip, cn, in, static_cast<double>(rect.total));
    return rect;
}

} // namespace artcode
