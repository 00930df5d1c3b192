// SPDX-License-Identifier: Apache-2.0
//
// Finite-shot sampling and Monte-Carlo trajectory noise. Trajectories are
// seeded from (seed, trajectory index) so runs are reproducible and the
// histogram merge is order-independent.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qimg/core.hpp"

namespace qimg {

struct NoiseModel {
    double readout_flip = 0.0;   // per measured bit
    double depolarizing = 0.0;   // per gate application

    void validate() const {
        if (!(readout_flip >= 0.0 && readout_flip <= 1.0))
            throw ValidationError("readout_flip must be in [0, 1]");
        if (!(depolarizing >= 0.0 && depolarizing <= 1.0))
            throw ValidationError("depolarizing must be in [0, 1]");
    }
};

struct Histogram {
    std::uint64_t shots = 0;
    std::map<std::string, std::uint64_t> counts;

    std::uint64_t count(const std::string& bits) const {
        const auto it = counts.find(bits);
        return it == counts.end() ? 0 : it->second;
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Small deterministic generator; avoids the library-defined distributions so
// output bytes do not depend on the standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(splitmix64(seed ^ 0xA5A5A5A5A5A5A5A5ull)) {}

    std::uint64_t next_u64() {
        state_ = splitmix64(state_);
        return state_;
    }

    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    std::size_t pick(std::size_t count) { return static_cast<std::size_t>(next_u64() % count); }

private:
    std::uint64_t state_;
};

inline std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed) ^ splitmix64(index * 0x9E3779B97F4A7C15ull + 1);
}

inline std::size_t sample_index(const std::vector<double>& probs, double u) {
    double cum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        cum += probs[i];
        if (u < cum) return i;
    }
    return probs.size() - 1;
}

inline std::size_t flip_readout_bits(std::size_t outcome, int num_qubits, double flip_p, Rng& rng) {
    if (flip_p <= 0.0) return outcome;
    for (int q = 0; q < num_qubits; ++q)
        if (rng.uniform01() < flip_p) outcome ^= std::size_t{1} << (num_qubits - 1 - q);
    return outcome;
}

inline void apply_random_pauli(StateVector& state, int qubit, std::size_t which) {
    const Mat2 paulis[3] = {pauli_x_matrix(), pauli_y_matrix(), pauli_z_matrix()};
    apply_controlled_1q(state, paulis[which], qubit, {});
}

}  // namespace detail

// i.i.d. Born-rule draws over the full register.
inline Histogram sample_shots(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw ValidationError("shots must be >= 1");
    const std::vector<double> probs = born_probabilities(state);
    Histogram hist;
    hist.shots = shots;
    for (std::uint64_t s = 0; s < shots; ++s) {
        detail::Rng rng(detail::trajectory_seed(seed, s));
        const std::size_t outcome = detail::sample_index(probs, rng.uniform01());
        hist.counts[basis_label(outcome, state.num_qubits())] += 1;
    }
    return hist;
}

// One trajectory per shot: after each gate, with probability `depolarizing` a
// uniformly random Pauli hits a uniformly random qubit touched by the gate;
// measured bits then flip independently with probability `readout_flip`.
inline Histogram run_noisy(const Circuit& circuit, const NoiseModel& model, std::uint64_t shots,
                           std::uint64_t seed) {
    model.validate();
    if (shots < 1) throw ValidationError("shots must be >= 1");
    const int n = circuit.num_qubits;

    Histogram hist;
    hist.shots = shots;

    if (model.depolarizing == 0.0) {
        // Gate noise off: every trajectory shares the ideal final state.
        const StateVector final_state = run_circuit(circuit);
        const std::vector<double> probs = born_probabilities(final_state);
        for (std::uint64_t s = 0; s < shots; ++s) {
            detail::Rng rng(detail::trajectory_seed(seed, s));
            std::size_t outcome = detail::sample_index(probs, rng.uniform01());
            outcome = detail::flip_readout_bits(outcome, n, model.readout_flip, rng);
            hist.counts[basis_label(outcome, n)] += 1;
        }
        return hist;
    }

    for (std::uint64_t s = 0; s < shots; ++s) {
        detail::Rng rng(detail::trajectory_seed(seed, s));
        StateVector state = new_zero_state(n);
        for (const auto& g : circuit.gates) {
            apply_gate_inplace(state, g);
            if (rng.uniform01() >= model.depolarizing) continue;
            std::vector<int> touched = g.targets;
            for (const auto& c : g.controls) touched.push_back(c.qubit);
            const int victim = touched[rng.pick(touched.size())];
            detail::apply_random_pauli(state, victim, rng.pick(3));
        }
        const std::vector<double> probs = born_probabilities(state);
        std::size_t outcome = detail::sample_index(probs, rng.uniform01());
        outcome = detail::flip_readout_bits(outcome, n, model.readout_flip, rng);
        hist.counts[basis_label(outcome, n)] += 1;
    }
    return hist;
}

// Total variation distance between a histogram and an exact distribution.
inline double total_variation(const Histogram& hist, const std::vector<double>& probs,
                              int num_qubits) {
    double tv = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double empirical =
            static_cast<double>(hist.count(basis_label(i, num_qubits))) /
            static_cast<double>(hist.shots);
        tv += std::abs(empirical - probs[i]);
    }
    return 0.5 * tv;
}

}  // namespace qimg
