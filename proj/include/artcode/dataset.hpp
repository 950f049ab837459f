#pragma once

#include "artcode/image.hpp"
#include "artcode/label.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace artcode {

struct ManifestEntry {
    std::string id;
    std::string path; // relative to the manifest's directory
    Label label = Label::non_artcode;
    std::optional<std::string> code; // set for artcode entries
    std::uint64_t seed = 0;
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;

    std::size_t count(Label label) const;
};

struct DatasetGenOptions {
    int canvas_width = 256;
    int canvas_height = 256;
    double noise_level = 0.0;
    int regions = 5;                   // regions per generated code
    int max_blob_count = 5;            // per-region blob count upper bound
    double artcode_like_fraction = 0.1; // share of non-artcodes that mimic markers
};

/// Renders n_artcode + n_non_artcode PGM images into out_dir and writes
/// manifest.json next to them. Deterministic for a fixed seed: running twice
/// produces byte-identical files.
DatasetManifest generate_dataset(int n_artcode, int n_non_artcode, std::uint64_t seed,
                                 const std::filesystem::path& out_dir,
                                 const DatasetGenOptions& options = {});

DatasetManifest load_manifest(const std::filesystem::path& manifest_path);
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& manifest_path);

/// Loads the image a manifest entry refers to (path resolved against the
/// manifest's directory).
GrayImage load_entry_image(const std::filesystem::path& manifest_path, const ManifestEntry& entry);

} // namespace artcode
