#include "artcode/dataset.hpp"

#include "artcode/error.hpp"
#include "artcode/render.hpp"
#include "artcode/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>

namespace artcode {

namespace {

std::string zero_pad(int value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

Code random_code(Rng& rng, int regions, int max_count) {
    std::vector<int> counts(static_cast<std::size_t>(regions));
    for (auto& c : counts) c = static_cast<int>(rng.uniform_int(1, max_count));
    return Code(std::move(counts));
}

} // namespace

std::string to_string(Label label) {
    return label == Label::artcode ? "artcode" : "non_artcode";
}

Label label_from_string(const std::string& text) {
    if (text == "artcode") return Label::artcode;
    if (text == "non_artcode") return Label::non_artcode;
    throw InvalidArgument("unknown label: '" + text + "'");
}

std::size_t DatasetManifest::count(Label label) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(),
                      [&](const ManifestEntry& e) { return e.label == label; }));
}

DatasetManifest generate_dataset(int n_artcode, int n_non_artcode, std::uint64_t seed,
                                 const std::filesystem::path& out_dir,
                                 const DatasetGenOptions& options) {
    if (n_artcode < 1 || n_non_artcode < 1)
        throw InvalidArgument("dataset needs at least one sample of each class");

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    Rng code_rng(derive_seed(seed, 0xC0DE));
    DatasetManifest manifest;
    manifest.entries.reserve(static_cast<std::size_t>(n_artcode + n_non_artcode));

    const int like_every =
        options.artcode_like_fraction > 0.0
            ? std::max(1, static_cast<int>(std::lround(1.0 / options.artcode_like_fraction)))
            : 0;

    for (int i = 0; i < n_artcode; ++i) {
        ManifestEntry e;
        e.id = "a" + zero_pad(i, 3);
        e.path = "artcode_" + zero_pad(i, 3) + ".pgm";
        e.label = Label::artcode;
        e.seed = derive_seed(seed, static_cast<std::uint64_t>(i));
        const Code code = random_code(code_rng, options.regions, options.max_blob_count);
        e.code = code.str();
        GenSpec spec;
        spec.code = code;
        spec.canvas_width = options.canvas_width;
        spec.canvas_height = options.canvas_height;
        spec.seed = e.seed;
        spec.style = GenStyle::artcode;
        spec.noise_level = options.noise_level;
        write_pgm(render(spec), out_dir / e.path);
        manifest.entries.push_back(std::move(e));
    }
    for (int i = 0; i < n_non_artcode; ++i) {
        ManifestEntry e;
        e.id = "n" + zero_pad(i, 3);
        e.path = "non_artcode_" + zero_pad(i, 3) + ".pgm";
        e.label = Label::non_artcode;
        e.seed = derive_seed(seed, static_cast<std::uint64_t>(n_artcode + i));
        GenSpec spec;
        spec.canvas_width = options.canvas_width;
        spec.canvas_height = options.canvas_height;
        spec.seed = e.seed;
        spec.style = (like_every > 0 && i % like_every == like_every - 1)
                         ? GenStyle::artcode_like
                         : GenStyle::non_artcode_random;
        spec.noise_level = options.noise_level;
        write_pgm(render(spec), out_dir / e.path);
        manifest.entries.push_back(std::move(e));
    }

    save_manifest(manifest, out_dir / "manifest.json");
    return manifest;
}

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& manifest_path) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : manifest.entries) {
        nlohmann::json obj;
        obj["id"] = e.id;
        obj["path"] = e.path;
        obj["label"] = to_string(e.label);
        if (e.code)
            obj["code"] = *e.code;
        else
            obj["code"] = nullptr;
        obj["seed"] = e.seed;
        arr.push_back(std::move(obj));
    }
    std::ofstream out(manifest_path);
    if (!out) throw IoError("cannot create " + manifest_path.string());
    out << arr.dump(2) << "\n";
    if (!out) throw IoError("short write to " + manifest_path.string());
}

DatasetManifest load_manifest(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw IoError("cannot open " + manifest_path.string());
    nlohmann::json arr;
    try {
        in >> arr;
    } catch (const nlohmann::json::exception& ex) {
        throw IoError("malformed manifest " + manifest_path.string() + ": " + ex.what());
    }
    if (!arr.is_array()) throw IoError("manifest must be a JSON array");
    DatasetManifest manifest;
    for (const auto& obj : arr) {
        ManifestEntry e;
        e.id = obj.at("id").get<std::string>();
        e.path = obj.at("path").get<std::string>();
        e.label = label_from_string(obj.at("label").get<std::string>());
        if (obj.contains("code") && !obj.at("code").is_null())
            e.code = obj.at("code").get<std::string>();
        e.seed = obj.value("seed", std::uint64_t{0});
        manifest.entries.push_back(std::move(e));
    }
    return manifest;
}

GrayImage load_entry_image(const std::filesystem::path& manifest_path, const ManifestEntry& entry) {
    return read_pgm(manifest_path.parent_path() / entry.path);
}

} // namespace artcode
