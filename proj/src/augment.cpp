#include "artcode/augment.hpp"

#include "artcode/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace artcode {

WeightVector::WeightVector(int n, int m, double w_s, double w_o)
    : n_(n), m_(m), w_s_(w_s), w_o_(w_o) {
    if (n < 1 || m < 1) throw InvalidArgument("weight vector needs n >= 1 and m >= 1");
    if (!(w_s > 0.0) || !(w_o >= w_s))
        throw InvalidArgument("weights must satisfy w_o >= w_s > 0");
}

void Thresholds::validate(double rho_max) const {
    if (!(t1 >= 0.0) || !(t1 <= t2) || !(t2 <= rho_max))
        throw InvalidArgument("thresholds must satisfy 0 <= t1 <= t2 <= rho_max");
}

std::vector<GrayImage> generate_followups(const GrayImage& img, const MaskSet& masks) {
    if (img.width != masks.canvas_width || img.height != masks.canvas_height)
        throw DimensionMismatch("image dimensions do not match the mask canvas");

    std::vector<GrayImage> blocks;
    blocks.reserve(masks.separation.size() + masks.occlusion.size());
    for (const auto& rect : masks.separation) {
        GrayImage block(rect.width, rect.height);
        for (int y = 0; y < rect.height; ++y)
            for (int x = 0; x < rect.width; ++x)
                block.at(x, y) = img.at(rect.x0 + x, rect.y0 + y);
        blocks.push_back(std::move(block));
    }
    for (const auto& rect : masks.occlusion) {
        GrayImage block(img.width, img.height, 255); // masked-out area stays white
        for (int y = rect.y0; y < rect.y0 + rect.height; ++y)
            for (int x = rect.x0; x < rect.x0 + rect.width; ++x) block.at(x, y) = img.at(x, y);
        blocks.push_back(std::move(block));
    }
    return blocks;
}

double aggregate_rho(const std::vector<int>& p, const WeightVector& w) {
    if (p.size() != w.size())
        throw DimensionMismatch("prediction vector length does not match weights");
    int count_s = 0, count_o = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != 0 && p[i] != 1) throw InvalidArgument("prediction vector must be binary");
        if (p[i]) (i < static_cast<std::size_t>(w.n()) ? count_s : count_o)++;
    }
    return count_s * w.w_s() + count_o * w.w_o();
}

double aggregate_rho_raw(const std::vector<double>& probas, const WeightVector& w) {
    if (probas.size() != w.size())
        throw DimensionMismatch("probability vector length does not match weights");
    double sum_s = 0, sum_o = 0;
    for (std::size_t i = 0; i < probas.size(); ++i)
        (i < static_cast<std::size_t>(w.n()) ? sum_s : sum_o) += probas[i];
    return sum_s * w.w_s() + sum_o * w.w_o();
}

std::pair<Label, bool> rectify(double rho, const Prediction& original, const Thresholds& t) {
    Label final_label;
    if (rho < t.t1)
        final_label = Label::non_artcode;
    else if (rho >= t.t2)
        final_label = Label::artcode;
    else
        final_label = original.label;
    return {final_label, final_label != original.label};
}

RhoRecord classify_augmented(const GrayImage& img, const TrainedModel& model,
                             const AugmentConfig& cfg, const SohConfig& soh_cfg,
                             const std::string& image_id) {
    cfg.thresholds.validate(cfg.weights.rho_max());
    if (cfg.weights.n() != cfg.masks.n() || cfg.weights.m() != cfg.masks.m())
        throw DimensionMismatch("weight vector does not match the mask set");

    const Prediction original = predict_proba(model, extract_soh(img, soh_cfg).values);

    const auto blocks = generate_followups(img, cfg.masks);
    std::vector<int> p(blocks.size(), 0);
    std::vector<double> probas(blocks.size(), 0.0);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        probas[i] = predict_proba(model, extract_soh(blocks[i], soh_cfg).values).proba;
        p[i] = probas[i] >= 0.5 ? 1 : 0;
    }

    RhoRecord rec;
    rec.image_id = image_id;
    rec.p = std::move(p);
    rec.rho = cfg.binarize_votes ? aggregate_rho(rec.p, cfg.weights)
                                 : aggregate_rho_raw(probas, cfg.weights);
    rec.original_label = original.label;
    const auto [final_label, rectified] = rectify(rec.rho, original, cfg.thresholds);
    rec.final_label = final_label;
    rec.rectified = rectified;
    return rec;
}

void write_rho_records(const std::vector<RhoRecord>& records, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot create " + path.string());
    const std::size_t block_count = records.empty() ? 8 : records.front().p.size();
    out << "id,rho";
    for (std::size_t i = 0; i < block_count; ++i) out << ",p" << i;
    out << ",original,final,rectified\n";
    char buf[32];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%.6f", r.rho);
        out << r.image_id << ',' << buf;
        for (int v : r.p) out << ',' << v;
        out << ',' << to_string(r.original_label) << ',' << to_string(r.final_label) << ','
            << (r.rectified ? 1 : 0) << '\n';
    }
    if (!out) throw IoError("short write to " + path.string());
}

std::vector<RhoRecord> read_rho_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty rho record file " + path.string());
    std::vector<RhoRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() < 5) throw IoError("malformed rho record line: " + line);
        RhoRecord r;
        r.image_id = fields[0];
        r.rho = std::stod(fields[1]);
        for (std::size_t i = 2; i + 3 < fields.size(); ++i)
            r.p.push_back(std::stoi(fields[i]));
        r.original_label = label_from_string(fields[fields.size() - 3]);
        r.final_label = label_from_string(fields[fields.size() - 2]);
        r.rectified = fields.back() == "1";
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace artcode
