// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "qimg/errors.hpp"
#include "qimg/image.hpp"

namespace qimg {

// Split into single-channel side x side blocks, channel-major then row-major
// over block positions. Ragged right/bottom edges are zero-padded, matching
// the encoders' color-0-outside-image convention.
inline std::vector<QuantumImage> tile(const QuantumImage& image, int side) {
    if (side < 1 || !is_power_of_two(static_cast<std::uint64_t>(side)))
        throw ValidationError("tile side must be a power of two");
    const int blocks_y = (image.height + side - 1) / side;
    const int blocks_x = (image.width + side - 1) / side;

    std::vector<QuantumImage> blocks;
    blocks.reserve(static_cast<std::size_t>(blocks_y) * blocks_x * image.channels);
    for (int c = 0; c < image.channels; ++c)
        for (int by = 0; by < blocks_y; ++by)
            for (int bx = 0; bx < blocks_x; ++bx) {
                QuantumImage block;
                block.width = block.height = side;
                block.channels = 1;
                block.bit_depth = image.bit_depth;
                block.pixels.assign(static_cast<std::size_t>(side) * side, 0);
                for (int y = 0; y < side; ++y)
                    for (int x = 0; x < side; ++x) {
                        const int sy = by * side + y, sx = bx * side + x;
                        if (sy < image.height && sx < image.width)
                            block.at(y, x) = image.at(sy, sx, c);
                    }
                blocks.push_back(std::move(block));
            }
    return blocks;
}

// Inverse of tile(): drops the padding and restores the original raster.
inline QuantumImage reassemble(const std::vector<QuantumImage>& blocks, int width, int height,
                               int channels, int side) {
    const int blocks_y = (height + side - 1) / side;
    const int blocks_x = (width + side - 1) / side;
    if (blocks.size() != static_cast<std::size_t>(blocks_y) * blocks_x * channels)
        throw ValidationError("block count does not match the target dimensions");

    QuantumImage image;
    image.width = width;
    image.height = height;
    image.channels = channels;
    image.bit_depth = blocks.empty() ? 8 : blocks[0].bit_depth;
    image.pixels.assign(static_cast<std::size_t>(width) * height * channels, 0);
    std::size_t b = 0;
    for (int c = 0; c < channels; ++c)
        for (int by = 0; by < blocks_y; ++by)
            for (int bx = 0; bx < blocks_x; ++bx, ++b)
                for (int y = 0; y < side; ++y)
                    for (int x = 0; x < side; ++x) {
                        const int sy = by * side + y, sx = bx * side + x;
                        if (sy < height && sx < width) image.at(sy, sx, c) = blocks[b].at(y, x);
                    }
    return image;
}

// Binary image formed by bit k of every sample; k = bit_depth - 1 is the MSB plane.
inline QuantumImage bit_plane(const QuantumImage& image, int k) {
    if (k < 0 || k >= image.bit_depth)
        throw ValidationError("bit plane " + std::to_string(k) + " out of range for depth " +
                              std::to_string(image.bit_depth));
    QuantumImage plane = image;
    plane.bit_depth = 1;
    for (auto& p : plane.pixels) p = (p >> k) & 1;
    return plane;
}

}  // namespace qimg
