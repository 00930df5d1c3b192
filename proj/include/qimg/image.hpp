// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "qimg/errors.hpp"

namespace qimg {

// Row-major raster with channel-interleaved samples in [0, 2^bit_depth - 1].
struct QuantumImage {
    int width = 0;
    int height = 0;
    int channels = 1;  // 1 (gray) or 3 (RGB)
    int bit_depth = 8; // q bits per channel
    std::vector<std::uint32_t> pixels;

    std::uint32_t max_value() const { return (std::uint32_t{1} << bit_depth) - 1; }

    std::uint32_t at(int y, int x, int c = 0) const {
        return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint32_t& at(int y, int x, int c = 0) {
        return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    static QuantumImage gray(int width, int height, int bit_depth,
                             std::vector<std::uint32_t> pixels) {
        QuantumImage img{width, height, 1, bit_depth, std::move(pixels)};
        img.validate();
        return img;
    }
    static QuantumImage rgb(int width, int height, int bit_depth,
                            std::vector<std::uint32_t> pixels) {
        QuantumImage img{width, height, 3, bit_depth, std::move(pixels)};
        img.validate();
        return img;
    }

    void validate() const {
        if (width < 1 || height < 1) throw ValidationError("image dimensions must be >= 1");
        if (channels != 1 && channels != 3) throw ValidationError("channel count must be 1 or 3");
        if (bit_depth < 1 || bit_depth > 16) throw ValidationError("bit depth must be in [1, 16]");
        const std::size_t expected =
            static_cast<std::size_t>(width) * height * static_cast<std::size_t>(channels);
        if (pixels.size() != expected)
            throw ValidationError("pixel count " + std::to_string(pixels.size()) +
                                  " does not match " + std::to_string(width) + "x" +
                                  std::to_string(height) + "x" + std::to_string(channels));
        for (auto p : pixels)
            if (p > max_value())
                throw ValidationError("pixel value " + std::to_string(p) + " exceeds 2^" +
                                      std::to_string(bit_depth) + " - 1");
    }
};

// Per-pixel rotation angles in [0, pi/2]; channel-interleaved like pixels.
struct AngleImage {
    std::vector<double> thetas;
    int channels = 1;

    std::size_t pixel_count() const { return thetas.size() / static_cast<std::size_t>(channels); }
};

// Linear gray-to-angle map: 0 -> 0, max -> pi/2.
inline double pixel_to_angle(std::uint32_t pixel, std::uint32_t max) {
    if (max < 1) throw ValidationError("pixel_to_angle requires max >= 1");
    if (pixel > max)
        throw ValidationError("pixel value " + std::to_string(pixel) + " exceeds max " +
                              std::to_string(max));
    return (static_cast<double>(pixel) / static_cast<double>(max)) * (std::numbers::pi / 2.0);
}

inline AngleImage image_to_angles(const QuantumImage& image) {
    AngleImage angles;
    angles.channels = image.channels;
    angles.thetas.reserve(image.pixels.size());
    for (auto p : image.pixels) angles.thetas.push_back(pixel_to_angle(p, image.max_value()));
    return angles;
}

inline bool is_power_of_two(std::uint64_t v) { return v != 0 && std::has_single_bit(v); }

}  // namespace qimg
