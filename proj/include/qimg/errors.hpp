// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qimg {

// Precondition or domain violation. The CLI maps this family to exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Register would exceed the simulator's qubit cap.
struct CapacityError : ValidationError {
    explicit CapacityError(const std::string& what) : ValidationError(what) {}
};

// Post-selection on a pattern of probability zero.
struct SelectionError : ValidationError {
    explicit SelectionError(const std::string& what) : ValidationError(what) {}
};

// Malformed input data; carries the byte offset where parsing stopped.
struct ParseError : ValidationError {
    ParseError(const std::string& what, std::size_t byte_offset)
        : ValidationError(what + " (at byte " + std::to_string(byte_offset) + ")"),
          offset(byte_offset) {}
    std::size_t offset;
};

// Filesystem trouble. The CLI maps this to exit code 3.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qimg
