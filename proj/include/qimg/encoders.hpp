// SPDX-License-Identifier: Apache-2.0
//
// The five image-to-register encodings. Each technique produces both an
// independently constructed ideal statevector and a gate-level circuit, so
// the two can be cross-checked against each other.
#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qimg/core.hpp"
#include "qimg/image.hpp"

namespace qimg {

enum class Technique { Frqi, Neqr, Gqir, Mcqi, Qbip };

inline const char* technique_name(Technique t) {
    switch (t) {
        case Technique::Frqi: return "frqi";
        case Technique::Neqr: return "neqr";
        case Technique::Gqir: return "gqir";
        case Technique::Mcqi: return "mcqi";
        case Technique::Qbip: return "qbip";
    }
    return "?";
}

// Which register qubit plays which role. Lists are MSB-first: color_qubits[0]
// is C^{q-1}, position_qubits run |Y> then |X> unless the encoder says
// otherwise. Together they cover the whole register.
struct RegisterLayout {
    std::vector<int> color_qubits;
    std::vector<int> position_qubits;
};

// Default order places |Y> before |X>; XMajor reverses the two registers.
enum class AxisOrder { YMajor, XMajor };

struct EncodingResult {
    Technique technique;
    Circuit circuit;
    StateVector ideal;
    RegisterLayout layout;
    QuantumImage source;  // pixel data the encoding was built from
    AxisOrder axis_order = AxisOrder::YMajor;  // gqir only
};

namespace detail {

inline int position_exponent(std::size_t pixel_count) {
    // pixel_count must be 4^n; returns n.
    std::size_t v = pixel_count;
    int n = 0;
    while (v > 1) {
        if (v % 4 != 0) throw ValidationError("pixel count must be a power of 4");
        v /= 4;
        ++n;
    }
    return n;
}

inline void require_angles_in_range(const std::vector<double>& thetas) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    for (double t : thetas)
        if (!(t >= 0.0 && t <= half_pi + 1e-12))
            throw ValidationError("angle " + std::to_string(t) + " outside [0, pi/2]");
}

inline void require_square_power_of_two(const QuantumImage& image, const char* technique) {
    if (image.channels != 1)
        throw ValidationError(std::string(technique) + " requires a grayscale image");
    if (image.width != image.height || !is_power_of_two(static_cast<std::uint64_t>(image.width)))
        throw ValidationError(std::string(technique) +
                              " requires a square power-of-two image (got " +
                              std::to_string(image.width) + "x" + std::to_string(image.height) +
                              ")");
}

// Controls matching the binary pattern of `value` across `qubits`
// (MSB-first): a 0-bit becomes a control-on-0.
inline std::vector<Control> pattern_controls(const std::vector<int>& qubits, std::size_t value) {
    std::vector<Control> controls;
    controls.reserve(qubits.size());
    const int n = static_cast<int>(qubits.size());
    for (int j = 0; j < n; ++j) {
        const bool bit = (value >> (n - 1 - j)) & 1;
        controls.push_back(Control{qubits[j], bit ? Polarity::OnOne : Polarity::OnZero});
    }
    return controls;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// FRQI: one color qubit rotated by theta_i, entangled with the position.
// Amplitude layout: amp[c * 4^n + i] = cos(theta_i)/2^n for c = 0 and
// sin(theta_i)/2^n for c = 1.
// ---------------------------------------------------------------------------

inline StateVector frqi_ideal(const AngleImage& thetas) {
    if (thetas.channels != 1) throw ValidationError("frqi takes one angle per pixel");
    detail::require_angles_in_range(thetas.thetas);
    const int n = detail::position_exponent(thetas.thetas.size());
    const std::size_t positions = thetas.thetas.size();
    const double scale = 1.0 / static_cast<double>(std::size_t{1} << n);

    std::vector<Amplitude> amps(positions * 2, Amplitude{0.0, 0.0});
    for (std::size_t i = 0; i < positions; ++i) {
        amps[i] = scale * std::cos(thetas.thetas[i]);
        amps[positions + i] = scale * std::sin(thetas.thetas[i]);
    }
    return StateVector::from_amplitudes(2 * n + 1, std::move(amps));
}

inline Circuit frqi_circuit(const AngleImage& thetas) {
    if (thetas.channels != 1) throw ValidationError("frqi takes one angle per pixel");
    detail::require_angles_in_range(thetas.thetas);
    const int n = detail::position_exponent(thetas.thetas.size());

    Circuit circuit{2 * n + 1, {}};
    std::vector<int> position_qubits(static_cast<std::size_t>(2 * n));
    for (int j = 0; j < 2 * n; ++j) position_qubits[static_cast<std::size_t>(j)] = 1 + j;

    for (int q : position_qubits) circuit.push(Gate::h(q));
    // Ry(2 theta) leaves the color qubit at cos(theta)|0> + sin(theta)|1>.
    for (std::size_t i = 0; i < thetas.thetas.size(); ++i)
        circuit.push(Gate::mcry(2.0 * thetas.thetas[i],
                                detail::pattern_controls(position_qubits, i), 0));
    return circuit;
}

inline EncodingResult encode_frqi(const QuantumImage& image) {
    detail::require_square_power_of_two(image, "frqi");
    const AngleImage thetas = image_to_angles(image);
    EncodingResult result;
    result.technique = Technique::Frqi;
    result.circuit = frqi_circuit(thetas);
    result.ideal = frqi_ideal(thetas);
    result.source = image;
    result.layout.color_qubits = {0};
    for (int q = 1; q < result.circuit.num_qubits; ++q) result.layout.position_qubits.push_back(q);
    return result;
}

// ---------------------------------------------------------------------------
// NEQR: q color qubits hold the gray value as a CBS pattern, entangled with
// the position. Nonzero amplitudes sit at f(Y,X) * 4^n + (Y * 2^n + X).
// ---------------------------------------------------------------------------

inline StateVector neqr_ideal(const QuantumImage& image) {
    detail::require_square_power_of_two(image, "neqr");
    const int n = std::countr_zero(static_cast<std::uint32_t>(image.width));
    const int q = image.bit_depth;
    const int total = q + 2 * n;
    if (total > kMaxQubits) throw CapacityError("neqr register exceeds qubit cap");

    const std::size_t position_count = std::size_t{1} << (2 * n);
    const double amp = 1.0 / static_cast<double>(std::size_t{1} << n);
    std::vector<Amplitude> amps(std::size_t{1} << total, Amplitude{0.0, 0.0});
    for (int y = 0; y < image.height; ++y)
        for (int x = 0; x < image.width; ++x) {
            const std::size_t pos = (static_cast<std::size_t>(y) << n) | static_cast<std::size_t>(x);
            amps[(static_cast<std::size_t>(image.at(y, x)) * position_count) + pos] = amp;
        }
    return StateVector::from_amplitudes(total, std::move(amps));
}

inline Circuit neqr_circuit(const QuantumImage& image) {
    detail::require_square_power_of_two(image, "neqr");
    const int n = std::countr_zero(static_cast<std::uint32_t>(image.width));
    const int q = image.bit_depth;

    Circuit circuit{q + 2 * n, {}};
    std::vector<int> position_qubits(static_cast<std::size_t>(2 * n));
    for (int j = 0; j < 2 * n; ++j) position_qubits[static_cast<std::size_t>(j)] = q + j;

    for (int pq : position_qubits) circuit.push(Gate::h(pq));
    for (int y = 0; y < image.height; ++y)
        for (int x = 0; x < image.width; ++x) {
            const std::uint32_t value = image.at(y, x);
            const std::size_t pos = (static_cast<std::size_t>(y) << n) | static_cast<std::size_t>(x);
            for (int k = q - 1; k >= 0; --k) {
                if (((value >> k) & 1) == 0) continue;
                // C^k lives on qubit q-1-k.
                circuit.push(Gate::mcx(detail::pattern_controls(position_qubits, pos), q - 1 - k));
            }
        }
    return circuit;
}

inline EncodingResult encode_neqr(const QuantumImage& image) {
    EncodingResult result;
    result.technique = Technique::Neqr;
    result.circuit = neqr_circuit(image);
    result.ideal = neqr_ideal(image);
    result.source = image;
    for (int c = 0; c < image.bit_depth; ++c) result.layout.color_qubits.push_back(c);
    for (int p = image.bit_depth; p < result.circuit.num_qubits; ++p)
        result.layout.position_qubits.push_back(p);
    return result;
}

// ---------------------------------------------------------------------------
// GQIR: NEQR generalized to any HxW via ceiling-log position registers.
// Positions outside the image are included with color 0, which keeps the
// state normalized at amplitude 1/sqrt(2^{h+w}).
// ---------------------------------------------------------------------------

inline std::pair<int, int> gqir_dims(int height, int width) {
    if (height < 1 || width < 1) throw ValidationError("image dimensions must be >= 1");
    const auto bits = [](int v) {
        return v > 1 ? std::bit_width(static_cast<std::uint32_t>(v - 1)) : 1;
    };
    return {bits(height), bits(width)};
}

namespace detail {

struct GqirGeometry {
    int h, w, q;
    AxisOrder order;

    int position_bits() const { return h + w; }
    std::size_t position_count() const { return std::size_t{1} << position_bits(); }

    // Decode a position-register value into (y, x).
    std::pair<std::size_t, std::size_t> yx(std::size_t pos) const {
        if (order == AxisOrder::YMajor) return {pos >> w, pos & ((std::size_t{1} << w) - 1)};
        return {pos & ((std::size_t{1} << h) - 1), pos >> h};
    }
};

inline GqirGeometry gqir_geometry(const QuantumImage& image, AxisOrder order) {
    if (image.channels != 1) throw ValidationError("gqir requires a grayscale image");
    const auto [h, w] = gqir_dims(image.height, image.width);
    if (h + w + image.bit_depth > kMaxQubits)
        throw CapacityError("gqir register exceeds qubit cap");
    return {h, w, image.bit_depth, order};
}

}  // namespace detail

inline StateVector gqir_ideal(const QuantumImage& image, AxisOrder order = AxisOrder::YMajor) {
    const auto geo = detail::gqir_geometry(image, order);
    const double amp = 1.0 / std::sqrt(static_cast<double>(geo.position_count()));
    std::vector<Amplitude> amps(std::size_t{1} << (geo.q + geo.position_bits()),
                                Amplitude{0.0, 0.0});
    for (std::size_t pos = 0; pos < geo.position_count(); ++pos) {
        const auto [y, x] = geo.yx(pos);
        const std::uint32_t color =
            (y < static_cast<std::size_t>(image.height) && x < static_cast<std::size_t>(image.width))
                ? image.at(static_cast<int>(y), static_cast<int>(x))
                : 0;
        amps[(static_cast<std::size_t>(color) << geo.position_bits()) | pos] = amp;
    }
    return StateVector::from_amplitudes(geo.q + geo.position_bits(), std::move(amps));
}

inline Circuit gqir_circuit(const QuantumImage& image, AxisOrder order = AxisOrder::YMajor) {
    const auto geo = detail::gqir_geometry(image, order);
    Circuit circuit{geo.q + geo.position_bits(), {}};
    std::vector<int> position_qubits(static_cast<std::size_t>(geo.position_bits()));
    for (int j = 0; j < geo.position_bits(); ++j)
        position_qubits[static_cast<std::size_t>(j)] = geo.q + j;

    for (int pq : position_qubits) circuit.push(Gate::h(pq));
    for (std::size_t pos = 0; pos < geo.position_count(); ++pos) {
        const auto [y, x] = geo.yx(pos);
        if (y >= static_cast<std::size_t>(image.height) || x >= static_cast<std::size_t>(image.width))
            continue;
        const std::uint32_t color = image.at(static_cast<int>(y), static_cast<int>(x));
        for (int k = geo.q - 1; k >= 0; --k) {
            if (((color >> k) & 1) == 0) continue;
            circuit.push(Gate::mcx(detail::pattern_controls(position_qubits, pos), geo.q - 1 - k));
        }
    }
    return circuit;
}

inline EncodingResult encode_gqir(const QuantumImage& image, AxisOrder order = AxisOrder::YMajor) {
    EncodingResult result;
    result.technique = Technique::Gqir;
    result.circuit = gqir_circuit(image, order);
    result.ideal = gqir_ideal(image, order);
    result.source = image;
    result.axis_order = order;
    for (int c = 0; c < image.bit_depth; ++c) result.layout.color_qubits.push_back(c);
    for (int p = image.bit_depth; p < result.circuit.num_qubits; ++p)
        result.layout.position_qubits.push_back(p);
    return result;
}

// ---------------------------------------------------------------------------
// MCQI: a 3-qubit color register per position. The first color qubit
// discriminates cos (|0..>) from sin (|1..>) terms, the next two select the
// channel (00=R, 01=G, 10=B, 11=alpha); theta_alpha is fixed to 0.
// ---------------------------------------------------------------------------

inline StateVector mcqi_ideal(const AngleImage& thetas) {
    if (thetas.channels != 3) throw ValidationError("mcqi takes three angles per pixel");
    detail::require_angles_in_range(thetas.thetas);
    const std::size_t positions = thetas.pixel_count();
    const int n = detail::position_exponent(positions);
    const int total = 3 + 2 * n;
    const double scale = 1.0 / static_cast<double>(std::size_t{1} << (n + 1));

    std::vector<Amplitude> amps(std::size_t{1} << total, Amplitude{0.0, 0.0});
    for (std::size_t i = 0; i < positions; ++i) {
        for (int ch = 0; ch < 4; ++ch) {
            const double theta = ch < 3 ? thetas.thetas[3 * i + static_cast<std::size_t>(ch)] : 0.0;
            const std::size_t cos_slot = (static_cast<std::size_t>(ch) * positions) + i;
            const std::size_t sin_slot = ((static_cast<std::size_t>(ch) + 4) * positions) + i;
            amps[cos_slot] = scale * std::cos(theta);
            amps[sin_slot] = scale * std::sin(theta);
        }
    }
    return StateVector::from_amplitudes(total, std::move(amps));
}

inline Circuit mcqi_circuit(const AngleImage& thetas) {
    if (thetas.channels != 3) throw ValidationError("mcqi takes three angles per pixel");
    detail::require_angles_in_range(thetas.thetas);
    const std::size_t positions = thetas.pixel_count();
    const int n = detail::position_exponent(positions);

    Circuit circuit{3 + 2 * n, {}};
    const std::vector<int> channel_qubits = {1, 2};
    std::vector<int> position_qubits(static_cast<std::size_t>(2 * n));
    for (int j = 0; j < 2 * n; ++j) position_qubits[static_cast<std::size_t>(j)] = 3 + j;

    for (int q : channel_qubits) circuit.push(Gate::h(q));
    for (int q : position_qubits) circuit.push(Gate::h(q));
    // The alpha branch (channel 11) stays untouched: cos 0 = 1, sin 0 = 0.
    for (std::size_t i = 0; i < positions; ++i)
        for (int ch = 0; ch < 3; ++ch) {
            auto controls = detail::pattern_controls(channel_qubits, static_cast<std::size_t>(ch));
            auto position = detail::pattern_controls(position_qubits, i);
            controls.insert(controls.end(), position.begin(), position.end());
            circuit.push(Gate::mcry(2.0 * thetas.thetas[3 * i + static_cast<std::size_t>(ch)],
                                    std::move(controls), 0));
        }
    return circuit;
}

inline EncodingResult encode_mcqi(const QuantumImage& image) {
    if (image.channels != 3) throw ValidationError("mcqi requires an RGB image");
    if (image.width != image.height || !is_power_of_two(static_cast<std::uint64_t>(image.width)))
        throw ValidationError("mcqi requires a square power-of-two image (got " +
                              std::to_string(image.width) + "x" + std::to_string(image.height) +
                              ")");
    const AngleImage thetas = image_to_angles(image);
    EncodingResult result;
    result.technique = Technique::Mcqi;
    result.circuit = mcqi_circuit(thetas);
    result.ideal = mcqi_ideal(thetas);
    result.source = image;
    result.layout.color_qubits = {0, 1, 2};
    for (int p = 3; p < result.circuit.num_qubits; ++p) result.layout.position_qubits.push_back(p);
    return result;
}

// ---------------------------------------------------------------------------
// QBIP: each classical 1-bit fires a CNOT onto an ancilla |0>, so the
// register ends in the exact CBS |b1 b2 ... bm>.
// ---------------------------------------------------------------------------

inline EncodingResult qbip_encode(const std::vector<int>& bits) {
    const int m = static_cast<int>(bits.size());
    if (m < 1) throw ValidationError("qbip requires at least one bit");
    if (m > kMaxQubits) throw CapacityError("qbip bit count exceeds qubit cap");

    EncodingResult result;
    result.technique = Technique::Qbip;
    result.circuit = Circuit{m, {}};
    std::size_t index = 0;
    std::vector<std::uint32_t> stored;
    stored.reserve(bits.size());
    for (int i = 0; i < m; ++i) {
        const int b = bits[static_cast<std::size_t>(i)];
        if (b != 0 && b != 1) throw ValidationError("qbip input must be bits");
        stored.push_back(static_cast<std::uint32_t>(b));
        index = (index << 1) | static_cast<std::size_t>(b);
        if (b == 1) result.circuit.push(Gate::classically_controlled_not(i));
    }
    std::vector<Amplitude> amps(std::size_t{1} << m, Amplitude{0.0, 0.0});
    amps[index] = Amplitude{1.0, 0.0};
    result.ideal = StateVector::from_amplitudes(m, std::move(amps));
    result.source = QuantumImage::gray(m, 1, 1, std::move(stored));
    for (int i = 0; i < m; ++i) result.layout.color_qubits.push_back(i);
    return result;
}

// Decode measured bits back out of a QBIP basis index.
inline std::vector<int> qbip_decode(std::size_t basis, int num_bits) {
    std::vector<int> bits(static_cast<std::size_t>(num_bits));
    for (int i = 0; i < num_bits; ++i)
        bits[static_cast<std::size_t>(i)] = static_cast<int>((basis >> (num_bits - 1 - i)) & 1);
    return bits;
}

// Manual circuit-wiring accesses needed to feed an image through a
// four-pixel-per-group encoder.
inline std::uint64_t frqi_manual_access_count(std::uint64_t width, std::uint64_t height,
                                              std::uint64_t channels) {
    return (width * height * channels + 3) / 4;
}

}  // namespace qimg
