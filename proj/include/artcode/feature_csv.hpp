#pragma once

#include "artcode/label.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace artcode {

/// Labeled feature rows as exchanged through CSV (header: id,label,f0..f{d-1}).
struct FeatureTable {
    std::vector<std::string> ids;
    std::vector<int> labels; // 1 = artcode
    std::vector<std::vector<double>> rows;

    std::size_t size() const { return ids.size(); }
    int dim() const { return rows.empty() ? 0 : static_cast<int>(rows.front().size()); }
};

void write_feature_csv(const FeatureTable& table, const std::filesystem::path& path);
FeatureTable read_feature_csv(const std::filesystem::path& path);

} // namespace artcode
