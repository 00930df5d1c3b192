// SPDX-License-Identifier: Apache-2.0
//
// Dense statevector simulator: register, gate IR, gate application,
// Born-rule probabilities, and Bloch-angle extraction.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qimg/errors.hpp"

namespace qimg {

using Amplitude = std::complex<double>;

// ~1 GiB of complex doubles; every bundled example needs 11 qubits or fewer.
inline constexpr int kMaxQubits = 26;

// Amplitudes are indexed big-endian: qubit 0 is the most significant bit of
// the basis index, so |q0 q1 ... q_{n-1}> lives at index (q0 q1 ... q_{n-1})_2.
class StateVector {
public:
    StateVector() = default;

    explicit StateVector(int num_qubits) {
        if (num_qubits < 0) throw ValidationError("qubit count must be nonnegative");
        if (num_qubits > kMaxQubits)
            throw CapacityError("qubit count " + std::to_string(num_qubits) +
                                " exceeds cap of " + std::to_string(kMaxQubits));
        num_qubits_ = num_qubits;
        amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
        amps_[0] = Amplitude{1.0, 0.0};
    }

    static StateVector from_amplitudes(int num_qubits, std::vector<Amplitude> amps) {
        StateVector s(num_qubits);
        if (amps.size() != s.dim())
            throw ValidationError("amplitude count " + std::to_string(amps.size()) +
                                  " does not match 2^" + std::to_string(num_qubits));
        s.amps_ = std::move(amps);
        return s;
    }

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }

    const Amplitude& operator[](std::size_t i) const { return amps_[i]; }
    Amplitude& operator[](std::size_t i) { return amps_[i]; }

    std::span<const Amplitude> amps() const { return amps_; }
    std::vector<Amplitude>& mutable_amps() { return amps_; }

    double norm() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

    // Index bit occupied by qubit q (q = 0 is the MSB).
    std::size_t qubit_mask(int q) const { return std::size_t{1} << (num_qubits_ - 1 - q); }
    bool bit(std::size_t index, int q) const { return (index & qubit_mask(q)) != 0; }

private:
    int num_qubits_ = 0;
    std::vector<Amplitude> amps_{Amplitude{1.0, 0.0}};
};

inline StateVector new_zero_state(int num_qubits) { return StateVector(num_qubits); }

// Basis label in register order: qubit 0 is the leftmost character.
inline std::string basis_label(std::size_t index, int num_qubits) {
    std::string s(static_cast<std::size_t>(num_qubits), '0');
    for (int q = 0; q < num_qubits; ++q)
        if (index & (std::size_t{1} << (num_qubits - 1 - q))) s[static_cast<std::size_t>(q)] = '1';
    return s;
}

inline std::size_t basis_index(const std::string& label) {
    std::size_t idx = 0;
    for (char c : label) {
        if (c != '0' && c != '1') throw ValidationError("basis label must be binary: " + label);
        idx = (idx << 1) | static_cast<std::size_t>(c == '1');
    }
    return idx;
}

enum class GateKind { H, X, Cnot, Mcx, Mcry };

enum class Polarity : std::uint8_t { OnZero = 0, OnOne = 1 };

struct Control {
    int qubit;
    Polarity polarity = Polarity::OnOne;
};

struct Gate {
    GateKind kind;
    std::vector<int> targets;
    std::vector<Control> controls;
    double angle = 0.0;  // Mcry only, Ry(angle)
    // Cnot driven by a classical 1-bit (0-bits never produce a gate); acts as X.
    bool classical_control = false;

    static Gate h(int target) { return Gate{GateKind::H, {target}, {}, 0.0, false}; }
    static Gate x(int target) { return Gate{GateKind::X, {target}, {}, 0.0, false}; }
    static Gate cnot(int control, int target) {
        return Gate{GateKind::Cnot, {target}, {Control{control, Polarity::OnOne}}, 0.0, false};
    }
    static Gate classically_controlled_not(int target) {
        return Gate{GateKind::Cnot, {target}, {}, 0.0, true};
    }
    static Gate mcx(std::vector<Control> controls, int target) {
        return Gate{GateKind::Mcx, {target}, std::move(controls), 0.0, false};
    }
    static Gate mcry(double angle, std::vector<Control> controls, int target) {
        return Gate{GateKind::Mcry, {target}, std::move(controls), angle, false};
    }
};

inline const char* gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::Cnot: return "cnot";
        case GateKind::Mcx: return "mcx";
        case GateKind::Mcry: return "mcry";
    }
    return "?";
}

inline void validate_gate(const Gate& g, int num_qubits) {
    if (g.targets.size() != 1) throw ValidationError("gate must have exactly one target");
    const int t = g.targets[0];
    if (t < 0 || t >= num_qubits)
        throw ValidationError("target qubit " + std::to_string(t) + " out of range");
    for (const auto& c : g.controls) {
        if (c.qubit < 0 || c.qubit >= num_qubits)
            throw ValidationError("control qubit " + std::to_string(c.qubit) + " out of range");
        if (c.qubit == t) throw ValidationError("control and target qubits must be disjoint");
    }
    for (std::size_t i = 0; i < g.controls.size(); ++i)
        for (std::size_t j = i + 1; j < g.controls.size(); ++j)
            if (g.controls[i].qubit == g.controls[j].qubit)
                throw ValidationError("duplicate control qubit " + std::to_string(g.controls[i].qubit));
    if (!std::isfinite(g.angle)) throw ValidationError("gate angle must be finite");
    if (g.kind == GateKind::Cnot && !g.classical_control && g.controls.size() != 1)
        throw ValidationError("cnot requires exactly one control");
    if ((g.kind == GateKind::H || g.kind == GateKind::X) && !g.controls.empty())
        throw ValidationError("h/x gates take no controls");
}

struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;

    void push(Gate g) {
        validate_gate(g, num_qubits);
        gates.push_back(std::move(g));
    }
};

namespace detail {

struct Mat2 {
    Amplitude m00, m01, m10, m11;
};

inline Mat2 hadamard_matrix() {
    const double s = std::numbers::sqrt2 / 2.0;
    return {s, s, s, -s};
}
inline Mat2 pauli_x_matrix() { return {0.0, 1.0, 1.0, 0.0}; }
inline Mat2 pauli_y_matrix() { return {0.0, Amplitude{0.0, -1.0}, Amplitude{0.0, 1.0}, 0.0}; }
inline Mat2 pauli_z_matrix() { return {1.0, 0.0, 0.0, -1.0}; }
inline Mat2 ry_matrix(double angle) {
    const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
    return {c, -s, s, c};
}

// Controlled single-qubit matrix applied in place. Controls are tested on the
// untouched bits, so the pair (i0, i1) shares one verdict.
inline void apply_controlled_1q(StateVector& state, const Mat2& u, int target,
                                std::span<const Control> controls) {
    const std::size_t dim = state.dim();
    const std::size_t tmask = state.qubit_mask(target);
    std::size_t cmask = 0, cvalue = 0;
    for (const auto& c : controls) {
        const std::size_t m = state.qubit_mask(c.qubit);
        cmask |= m;
        if (c.polarity == Polarity::OnOne) cvalue |= m;
    }
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & tmask) != 0) continue;
        if ((i & cmask) != cvalue) continue;
        const std::size_t j = i | tmask;
        const Amplitude a = state[i], b = state[j];
        state[i] = u.m00 * a + u.m01 * b;
        state[j] = u.m10 * a + u.m11 * b;
    }
}

}  // namespace detail

inline void apply_gate_inplace(StateVector& state, const Gate& gate) {
    validate_gate(gate, state.num_qubits());
    const int t = gate.targets[0];
    switch (gate.kind) {
        case GateKind::H:
            detail::apply_controlled_1q(state, detail::hadamard_matrix(), t, {});
            break;
        case GateKind::X:
            detail::apply_controlled_1q(state, detail::pauli_x_matrix(), t, {});
            break;
        case GateKind::Cnot:
        case GateKind::Mcx:
            // A classically fired cnot has no quantum controls left: plain X.
            detail::apply_controlled_1q(state, detail::pauli_x_matrix(), t, gate.controls);
            break;
        case GateKind::Mcry:
            detail::apply_controlled_1q(state, detail::ry_matrix(gate.angle), t, gate.controls);
            break;
    }
}

inline StateVector apply_gate(const StateVector& state, const Gate& gate) {
    StateVector out = state;
    apply_gate_inplace(out, gate);
    return out;
}

inline StateVector run_circuit(const Circuit& circuit, const StateVector& initial) {
    if (initial.num_qubits() != circuit.num_qubits)
        throw ValidationError("circuit acts on " + std::to_string(circuit.num_qubits) +
                              " qubits, state has " + std::to_string(initial.num_qubits()));
    StateVector state = initial;
    for (const auto& g : circuit.gates) apply_gate_inplace(state, g);
    return state;
}

inline StateVector run_circuit(const Circuit& circuit) {
    return run_circuit(circuit, new_zero_state(circuit.num_qubits));
}

inline std::vector<double> born_probabilities(const StateVector& state) {
    std::vector<double> p(state.dim());
    for (std::size_t i = 0; i < state.dim(); ++i) p[i] = std::norm(state[i]);
    return p;
}

struct BlochAngles {
    double theta;  // [0, pi]
    double phi;    // [0, 2*pi)
};

// Global phase is removed by making amp[0] real nonnegative; for amp[0] = 0
// the convention is (theta, phi) = (pi, 0).
inline BlochAngles bloch_angles(const StateVector& state) {
    if (state.num_qubits() != 1) throw ValidationError("bloch_angles requires a single qubit");
    const Amplitude a0 = state[0], a1 = state[1];
    const double r0 = std::abs(a0), r1 = std::abs(a1);
    if (r0 == 0.0) return {std::numbers::pi, 0.0};
    const double theta = 2.0 * std::atan2(r1, r0);
    double phi = 0.0;
    if (r1 > 0.0) {
        phi = std::arg(a1) - std::arg(a0);
        const double two_pi = 2.0 * std::numbers::pi;
        phi = std::fmod(phi, two_pi);
        if (phi < 0.0) phi += two_pi;
        if (phi >= two_pi) phi = 0.0;
    }
    return {theta, phi};
}

}  // namespace qimg
