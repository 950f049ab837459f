#include "artcode/image.hpp"

#include "artcode/error.hpp"

#include <fstream>

namespace artcode {

GrayImage::GrayImage(int w, int h, std::uint8_t fill) : width(w), height(h) {
    if (w < 1 || h < 1) throw InvalidArgument("GrayImage dimensions must be >= 1");
    data.assign(static_cast<std::size_t>(w) * h, fill);
}

namespace {

// Skips whitespace and '#' comments between PGM header tokens.
int next_header_int(std::istream& in) {
    int c = in.get();
    for (;;) {
        while (c != EOF && std::isspace(c)) c = in.get();
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else {
            break;
        }
    }
    if (c == EOF || !std::isdigit(c)) throw IoError("malformed PGM header");
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        c = in.get();
    }
    if (c != EOF) in.unget();
    return value;
}

} // namespace

GrayImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '5') throw IoError("not a binary PGM (P5) file: " + path.string());
    const int w = next_header_int(in);
    const int h = next_header_int(in);
    const int maxval = next_header_int(in);
    if (w < 1 || h < 1) throw IoError("invalid PGM dimensions in " + path.string());
    if (maxval != 255) throw IoError("unsupported PGM maxval (expected 255) in " + path.string());
    in.get(); // single whitespace byte after maxval
    GrayImage img(w, h);
    in.read(reinterpret_cast<char*>(img.data.data()), static_cast<std::streamsize>(img.data.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.data.size()))
        throw IoError("truncated PGM payload in " + path.string());
    return img;
}

void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
    if (img.width < 1 || img.height < 1 || img.data.size() != img.pixel_count())
        throw InvalidArgument("cannot write malformed GrayImage");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot create " + path.string());
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data.data()), static_cast<std::streamsize>(img.data.size()));
    if (!out) throw IoError("short write to " + path.string());
}

} // namespace artcode
