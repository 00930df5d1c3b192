// SPDX-License-Identifier: Apache-2.0
//
// Built-in example images, so reference tables and samples can be produced
// with no external files.
#pragma once

#include <string>
#include <vector>

#include "qimg/errors.hpp"
#include "qimg/image.hpp"

namespace qimg::fixtures {

// 2x2 gray ramp whose angles land on 0, pi/6, pi/3, pi/2.
inline QuantumImage gray2x2_ramp() { return QuantumImage::gray(2, 2, 8, {0, 85, 170, 255}); }

// 2x2 black/white checker column; its statevector occupies half the bins.
inline QuantumImage gray2x2_binary() { return QuantumImage::gray(2, 2, 8, {0, 255, 0, 255}); }

// 2x2 gray steps used by the CBS-pattern audits.
inline QuantumImage gray2x2_steps() { return QuantumImage::gray(2, 2, 8, {0, 100, 200, 255}); }

// 2x2 gray values with mixed bit patterns.
inline QuantumImage gray2x2_mixed() { return QuantumImage::gray(2, 2, 8, {130, 65, 147, 17}); }

// 1x3 strip; exercises the ragged-size position registers.
inline QuantumImage gray1x3() { return QuantumImage::gray(3, 1, 8, {2, 1, 3}); }

// Single RGB pixel with 2-bit channels (R=11, G=10, B=11).
inline QuantumImage rgb1x1_2bit() { return QuantumImage::rgb(1, 1, 2, {3, 2, 3}); }

// Bit string for that pixel with its 2x2-grid coordinates prepended:
// Y=0, X=1, then R, G, B bits.
inline std::vector<int> qbip_reference_bits() { return {0, 1, 1, 1, 1, 0, 1, 1}; }

inline QuantumImage by_name(const std::string& name) {
    if (name == "gray2x2-ramp") return gray2x2_ramp();
    if (name == "gray2x2-binary") return gray2x2_binary();
    if (name == "gray2x2-steps") return gray2x2_steps();
    if (name == "gray2x2-mixed") return gray2x2_mixed();
    if (name == "gray1x3") return gray1x3();
    if (name == "rgb1x1-2bit") return rgb1x1_2bit();
    throw ValidationError("unknown builtin image: " + name);
}

inline std::vector<std::string> names() {
    return {"gray2x2-ramp", "gray2x2-binary", "gray2x2-steps",
            "gray2x2-mixed", "gray1x3", "rgb1x1-2bit"};
}

}  // namespace qimg::fixtures
