// SPDX-License-Identifier: Apache-2.0
//
// Byte-stable CSV renderings of the bundled reference tables: pixel/angle
// couplings (I, II), post-selected color registers (IV, VI, VIII), and
// per-qubit marginals (V-, VII-, IX-marginals).
#pragma once

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qimg/analysis.hpp"
#include "qimg/encoders.hpp"
#include "qimg/fixtures.hpp"

namespace qimg {

namespace detail {

inline std::string fmt_prob(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

// Angle as an exact rational multiple of pi: (pixel / (2 max)) * pi.
inline std::string fmt_angle_symbolic(std::uint32_t pixel, std::uint32_t max) {
    if (pixel == 0) return "0";
    std::uint64_t num = pixel, den = 2ull * max;
    const std::uint64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    std::string s = num == 1 ? "pi" : std::to_string(num) + "pi";
    if (den > 1) s += "/" + std::to_string(den);
    return s;
}

}  // namespace detail

// Pixel/angle/outcome coupling for a 2^n x 2^n gray image: outcome is the
// sin-branch amplitude sin(theta)/2^n.
inline std::string table_pixel_angle_csv(const QuantumImage& image) {
    const AngleImage angles = image_to_angles(image);
    const int n = detail::position_exponent(angles.thetas.size());
    const double scale = 1.0 / static_cast<double>(std::size_t{1} << n);
    std::ostringstream out;
    out << "# angle = (pixel/max)*(pi/2); outcome = sin(angle)/2^n, exact values"
           " (0.25 exactly, not the truncated 0.249)\n";
    out << "row,column,pixels,angles,outcomes\n";
    for (int y = 0; y < image.height; ++y)
        for (int x = 0; x < image.width; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * image.width + x;
            out << y << "," << x << "," << image.at(y, x) << ","
                << detail::fmt_angle_symbolic(image.at(y, x), image.max_value()) << ","
                << detail::fmt_prob(std::sin(angles.thetas[i]) * scale) << "\n";
        }
    return out.str();
}

// Post-selected color register per position, from the ideal state itself.
inline std::string table_outcomes_csv(const EncodingResult& enc) {
    const OutcomeTable table = outcome_table(enc);
    const std::size_t pos_bits = enc.layout.position_qubits.size();
    std::ostringstream out;
    out << "# color register obtained by post-selecting each position;"
           " bits are C" << (enc.source.bit_depth - 1) << "..C0\n";
    for (std::size_t j = 0; j < pos_bits; ++j) out << table.qubit_labels[j] << ",";
    out << "color\n";
    for (const auto& row : table.rows) {
        for (char b : row.position_bits) out << b << ",";
        out << (row.post_selected_color ? *row.post_selected_color
                                        : std::string("(not a basis state)"))
            << "\n";
    }
    return out.str();
}

// Per-qubit probability of |1> in the full superposed state; the row repeats
// for every position because marginals do not depend on it.
inline std::string table_marginals_csv(const EncodingResult& enc) {
    const OutcomeTable table = outcome_table(enc);
    const std::size_t pos_bits = enc.layout.position_qubits.size();
    std::ostringstream out;
    out << "# probability of measuring |1> per qubit, identical for every position\n";
    for (std::size_t j = 0; j < pos_bits; ++j) out << table.qubit_labels[j] << ",";
    for (std::size_t j = 0; j < table.qubit_labels.size(); ++j)
        out << "p1(" << table.qubit_labels[j] << ")" << (j + 1 < table.qubit_labels.size() ? "," : "\n");
    for (const auto& row : table.rows) {
        for (char b : row.position_bits) out << b << ",";
        for (std::size_t j = 0; j < row.per_qubit_p1.size(); ++j)
            out << detail::fmt_prob(row.per_qubit_p1[j])
                << (j + 1 < row.per_qubit_p1.size() ? "," : "\n");
    }
    return out.str();
}

inline std::string table_csv(const std::string& id) {
    if (id == "I") return table_pixel_angle_csv(fixtures::gray2x2_ramp());
    if (id == "II") return table_pixel_angle_csv(fixtures::gray2x2_binary());
    if (id == "IV") return table_outcomes_csv(encode_neqr(fixtures::gray2x2_steps()));
    if (id == "V-marginals") return table_marginals_csv(encode_neqr(fixtures::gray2x2_steps()));
    if (id == "VI") return table_outcomes_csv(encode_gqir(fixtures::gray2x2_mixed()));
    if (id == "VII-marginals") return table_marginals_csv(encode_gqir(fixtures::gray2x2_mixed()));
    if (id == "VIII")
        return table_outcomes_csv(encode_gqir(fixtures::gray1x3(), AxisOrder::XMajor));
    if (id == "IX-marginals")
        return table_marginals_csv(encode_gqir(fixtures::gray1x3(), AxisOrder::XMajor));
    throw ValidationError("unknown table id: " + id);
}

inline std::vector<std::string> table_ids() {
    return {"I", "II", "IV", "V-marginals", "VI", "VII-marginals", "VIII", "IX-marginals"};
}

}  // namespace qimg
