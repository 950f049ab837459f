#include "artcode/code.hpp"

#include "artcode/error.hpp"

#include <algorithm>

namespace artcode {

Code::Code(std::vector<int> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw InvalidArgument("a code needs at least one region count");
    for (int c : counts_)
        if (c < 1) throw InvalidArgument("blob counts must be >= 1");
    std::sort(counts_.begin(), counts_.end());
}

Code Code::parse(const std::string& text) {
    std::vector<int> counts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t dash = text.find('-', pos);
        if (dash == std::string::npos) dash = text.size();
        const std::string token = text.substr(pos, dash - pos);
        if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidArgument("malformed code string: '" + text + "'");
        counts.push_back(std::stoi(token));
        pos = dash + 1;
        if (dash == text.size()) break;
    }
    return Code(std::move(counts));
}

std::string Code::str() const {
    std::string out;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (i) out += '-';
        out += std::to_string(counts_[i]);
    }
    return out;
}

Code RegionAdjacencyTree::code() const {
    std::vector<int> counts;
    counts.reserve(blobs.size());
    for (const auto& region_blobs : blobs) counts.push_back(static_cast<int>(region_blobs.size()));
    return Code(std::move(counts));
}

} // namespace artcode
