#pragma once

#include <string>
#include <vector>

namespace artcode {

/// An Artcode's code: per-region blob counts, kept sorted ascending.
/// Canonical text form joins the counts with '-', e.g. "1-1-2-3-5".
class Code {
public:
    Code() = default;

    /// Builds from counts (sorted internally). Every count must be >= 1.
    explicit Code(std::vector<int> counts);

    /// Parses the canonical "a-b-c" form.
    static Code parse(const std::string& text);

    const std::vector<int>& counts() const { return counts_; }
    std::size_t region_count() const { return counts_.size(); }
    bool empty() const { return counts_.empty(); }
    std::string str() const;

    bool operator==(const Code&) const = default;

private:
    std::vector<int> counts_;
};

/// Containment hierarchy of a marker: root boundary -> regions -> blobs.
/// Node ids refer to components of the image the tree was derived from
/// (foreground component ids for root/blobs, background ids for regions).
struct RegionAdjacencyTree {
    int root = 0;                               // foreground component id of the root boundary
    std::vector<int> regions;                   // background component ids (holes of the root)
    std::vector<std::vector<int>> blobs;        // per region: foreground component ids inside

    /// The code this tree encodes: sorted per-region blob counts.
    Code code() const;
};

} // namespace artcode
