#include "artcode/feature_csv.hpp"

#include "artcode/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace artcode {

void write_feature_csv(const FeatureTable& table, const std::filesystem::path& path) {
    if (table.ids.size() != table.labels.size() || table.ids.size() != table.rows.size())
        throw InvalidArgument("feature table columns differ in length");
    std::ofstream out(path);
    if (!out) throw IoError("cannot create " + path.string());
    out << "id,label";
    for (int f = 0; f < table.dim(); ++f) out << ",f" << f;
    out << "\n";
    char buf[40];
    for (std::size_t i = 0; i < table.ids.size(); ++i) {
        out << table.ids[i] << ',' << to_string(static_cast<Label>(table.labels[i]));
        for (double v : table.rows[i]) {
            std::snprintf(buf, sizeof(buf), "%.17g", v); // lossless double round trip
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError("short write to " + path.string());
}

FeatureTable read_feature_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("id,label", 0) != 0)
        throw IoError("missing feature CSV header in " + path.string());
    FeatureTable table;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        if (!std::getline(ss, field, ',')) throw IoError("malformed feature row: " + line);
        table.ids.push_back(field);
        if (!std::getline(ss, field, ',')) throw IoError("malformed feature row: " + line);
        table.labels.push_back(label_from_string(field) == Label::artcode ? 1 : 0);
        std::vector<double> row;
        while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
        if (!table.rows.empty() && row.size() != table.rows.front().size())
            throw IoError("inconsistent feature dimension in " + path.string());
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace artcode
