// SPDX-License-Identifier: Apache-2.0
//
// Netpbm P2/P5 (gray) and P3/P6 (RGB) reader and writer. Parsing is strict:
// errors carry the byte offset where the input went wrong, and samples above
// maxval are rejected. maxval > 255 means 16-bit big-endian binary samples.
#pragma once

#include <bit>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qimg/errors.hpp"
#include "qimg/image.hpp"

namespace qimg {

struct PnmImage {
    enum class Format { P2, P3, P5, P6 };

    Format format = Format::P2;
    int width = 0;
    int height = 0;
    std::uint32_t maxval = 255;
    std::vector<std::uint32_t> samples;  // row-major, channel-interleaved

    int channels() const { return (format == Format::P3 || format == Format::P6) ? 3 : 1; }
    bool binary() const { return format == Format::P5 || format == Format::P6; }
};

namespace detail {

class PnmCursor {
public:
    explicit PnmCursor(std::string_view bytes) : bytes_(bytes) {}

    std::size_t offset() const { return pos_; }
    bool eof() const { return pos_ >= bytes_.size(); }

    // Whitespace and '#' comments separate header tokens.
    void skip_separators() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::uint64_t read_uint(const char* what) {
        skip_separators();
        if (eof()) throw ParseError(std::string("missing ") + what, pos_);
        if (!std::isdigit(static_cast<unsigned char>(bytes_[pos_])))
            throw ParseError(std::string("expected digit for ") + what, pos_);
        std::uint64_t value = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            value = value * 10 + static_cast<std::uint64_t>(bytes_[pos_] - '0');
            if (value > 0xFFFFFFFFull) throw ParseError(std::string(what) + " overflows", pos_);
            ++pos_;
        }
        return value;
    }

    // Binary payload starts after exactly one whitespace byte.
    void expect_single_whitespace() {
        if (eof() || !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
            throw ParseError("expected single whitespace before binary payload", pos_);
        ++pos_;
    }

    std::uint8_t read_byte() {
        if (eof()) throw ParseError("truncated binary payload", pos_);
        return static_cast<std::uint8_t>(bytes_[pos_++]);
    }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline PnmImage parse_pnm(std::string_view bytes) {
    detail::PnmCursor cur(bytes);
    if (bytes.size() < 2 || bytes[0] != 'P') throw ParseError("bad magic number", 0);
    PnmImage img;
    switch (bytes[1]) {
        case '2': img.format = PnmImage::Format::P2; break;
        case '3': img.format = PnmImage::Format::P3; break;
        case '5': img.format = PnmImage::Format::P5; break;
        case '6': img.format = PnmImage::Format::P6; break;
        default: throw ParseError("bad magic number", 1);
    }
    detail::PnmCursor body(bytes.substr(2));
    const auto offset_of = [&](const detail::PnmCursor& c) { return c.offset() + 2; };

    img.width = static_cast<int>(body.read_uint("width"));
    img.height = static_cast<int>(body.read_uint("height"));
    if (img.width < 1 || img.height < 1)
        throw ParseError("dimensions must be >= 1", offset_of(body));
    img.maxval = static_cast<std::uint32_t>(body.read_uint("maxval"));
    if (img.maxval < 1 || img.maxval > 65535)
        throw ParseError("maxval must be in [1, 65535]", offset_of(body));

    const std::size_t sample_count = static_cast<std::size_t>(img.width) *
                                     static_cast<std::size_t>(img.height) *
                                     static_cast<std::size_t>(img.channels());
    img.samples.reserve(sample_count);

    if (img.binary()) {
        body.expect_single_whitespace();
        const bool wide = img.maxval > 255;
        for (std::size_t i = 0; i < sample_count; ++i) {
            std::uint32_t v = body.read_byte();
            if (wide) v = (v << 8) | body.read_byte();
            if (v > img.maxval)
                throw ParseError("sample " + std::to_string(v) + " exceeds maxval",
                                 offset_of(body) - 1);
            img.samples.push_back(v);
        }
    } else {
        for (std::size_t i = 0; i < sample_count; ++i) {
            const std::size_t at = offset_of(body);
            const std::uint64_t v = body.read_uint("sample");
            if (v > img.maxval)
                throw ParseError("sample " + std::to_string(v) + " exceeds maxval", at);
            img.samples.push_back(static_cast<std::uint32_t>(v));
        }
    }
    return img;
}

inline std::string serialize_pnm(const PnmImage& img) {
    std::ostringstream out;
    const char* magic = nullptr;
    switch (img.format) {
        case PnmImage::Format::P2: magic = "P2"; break;
        case PnmImage::Format::P3: magic = "P3"; break;
        case PnmImage::Format::P5: magic = "P5"; break;
        case PnmImage::Format::P6: magic = "P6"; break;
    }
    out << magic << "\n" << img.width << " " << img.height << "\n" << img.maxval << "\n";
    if (img.binary()) {
        const bool wide = img.maxval > 255;
        for (std::uint32_t v : img.samples) {
            if (wide) out.put(static_cast<char>((v >> 8) & 0xFF));
            out.put(static_cast<char>(v & 0xFF));
        }
    } else {
        const int per_line = img.channels() == 3 ? img.width * 3 : img.width;
        int on_line = 0;
        for (std::size_t i = 0; i < img.samples.size(); ++i) {
            out << img.samples[i];
            if (++on_line == per_line) {
                out << "\n";
                on_line = 0;
            } else {
                out << " ";
            }
        }
        if (on_line != 0) out << "\n";
    }
    return out.str();
}

inline QuantumImage to_quantum_image(const PnmImage& pnm) {
    QuantumImage img;
    img.width = pnm.width;
    img.height = pnm.height;
    img.channels = pnm.channels();
    img.bit_depth = std::bit_width(pnm.maxval);
    img.pixels = pnm.samples;
    img.validate();
    return img;
}

inline PnmImage from_quantum_image(const QuantumImage& img, bool binary = false) {
    PnmImage pnm;
    pnm.format = img.channels == 3 ? (binary ? PnmImage::Format::P6 : PnmImage::Format::P3)
                                   : (binary ? PnmImage::Format::P5 : PnmImage::Format::P2);
    pnm.width = img.width;
    pnm.height = img.height;
    pnm.maxval = img.max_value();
    pnm.samples = img.pixels;
    return pnm;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) throw IoError("failed reading " + path);
    return buf.str();
}

inline void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out.good()) throw IoError("failed writing " + path);
}

}  // namespace qimg
