// SPDX-License-Identifier: Apache-2.0
//
// Read-only state analysis: CBS audits, reduced density matrices,
// post-selection, fidelity, and per-position outcome tables.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qimg/core.hpp"
#include "qimg/encoders.hpp"

namespace qimg {

class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(int num_qubits)
        : num_qubits_(num_qubits),
          dim_(std::size_t{1} << num_qubits),
          entries_(dim_ * dim_, Amplitude{0.0, 0.0}) {}

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return dim_; }

    const Amplitude& operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    Amplitude& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i).real();
        return t;
    }

    // Tr(rho^2); 1 for pure states, 1/dim for the maximally mixed state.
    double purity() const {
        double p = 0.0;
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c)
                p += ((*this)(r, c) * std::conj((*this)(r, c))).real();
        return p;
    }

    double max_hermiticity_defect() const {
        double worst = 0.0;
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c <= r; ++c)
                worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return worst;
    }

    // Smallest eigenvalue via Jacobi sweeps on the real-symmetric embedding
    // [[Re, -Im], [Im, Re]]; plenty for the small matrices produced here.
    double min_eigenvalue() const {
        const std::size_t n = 2 * dim_;
        std::vector<double> a(n * n, 0.0);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) {
                const Amplitude v = (*this)(r, c);
                a[r * n + c] = v.real();
                a[(r + dim_) * n + (c + dim_)] = v.real();
                a[r * n + (c + dim_)] = -v.imag();
                a[(r + dim_) * n + c] = v.imag();
            }
        for (int sweep = 0; sweep < 64; ++sweep) {
            double off = 0.0;
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
            if (off < 1e-24) break;
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q) {
                    const double apq = a[p * n + q];
                    if (std::abs(apq) < 1e-18) continue;
                    const double app = a[p * n + p], aqq = a[q * n + q];
                    const double phi = 0.5 * std::atan2(2.0 * apq, aqq - app);
                    const double c = std::cos(phi), s = std::sin(phi);
                    for (std::size_t k = 0; k < n; ++k) {
                        const double akp = a[k * n + p], akq = a[k * n + q];
                        a[k * n + p] = c * akp - s * akq;
                        a[k * n + q] = s * akp + c * akq;
                    }
                    for (std::size_t k = 0; k < n; ++k) {
                        const double apk = a[p * n + k], aqk = a[q * n + k];
                        a[p * n + k] = c * apk - s * aqk;
                        a[q * n + k] = s * apk + c * aqk;
                    }
                }
        }
        double lo = a[0];
        for (std::size_t i = 1; i < n; ++i) lo = std::min(lo, a[i * n + i]);
        return lo;
    }

private:
    int num_qubits_ = 0;
    std::size_t dim_ = 1;
    std::vector<Amplitude> entries_{Amplitude{1.0, 0.0}};
};

// Trace out everything except `keep`. keep[0] becomes the most significant
// bit of the reduced index, mirroring the register convention.
inline DensityMatrix partial_trace(const StateVector& state, std::span<const int> keep) {
    if (keep.empty()) throw ValidationError("partial_trace requires a nonempty keep list");
    const int n = state.num_qubits();
    std::vector<bool> kept(static_cast<std::size_t>(n), false);
    for (int q : keep) {
        if (q < 0 || q >= n) throw ValidationError("keep qubit " + std::to_string(q) + " out of range");
        if (kept[static_cast<std::size_t>(q)])
            throw ValidationError("duplicate keep qubit " + std::to_string(q));
        kept[static_cast<std::size_t>(q)] = true;
    }
    std::vector<int> rest;
    for (int q = 0; q < n; ++q)
        if (!kept[static_cast<std::size_t>(q)]) rest.push_back(q);

    const int k = static_cast<int>(keep.size());
    const auto compose = [&](std::size_t kept_bits, std::size_t rest_bits) {
        std::size_t index = 0;
        for (int j = 0; j < k; ++j)
            if ((kept_bits >> (k - 1 - j)) & 1) index |= state.qubit_mask(keep[static_cast<std::size_t>(j)]);
        for (std::size_t j = 0; j < rest.size(); ++j)
            if ((rest_bits >> (rest.size() - 1 - j)) & 1) index |= state.qubit_mask(rest[j]);
        return index;
    };

    DensityMatrix rho(k);
    const std::size_t env_count = std::size_t{1} << rest.size();
    for (std::size_t r = 0; r < rho.dim(); ++r)
        for (std::size_t c = 0; c < rho.dim(); ++c) {
            Amplitude sum{0.0, 0.0};
            for (std::size_t e = 0; e < env_count; ++e)
                sum += state[compose(r, e)] * std::conj(state[compose(c, e)]);
            rho(r, c) = sum;
        }
    return rho;
}

inline DensityMatrix partial_trace(const StateVector& state, std::initializer_list<int> keep) {
    return partial_trace(state, std::span<const int>(keep.begin(), keep.size()));
}

struct CbsVerdict {
    bool is_cbs = false;
    std::optional<std::size_t> basis_index;
    double max_off_support = 0.0;  // largest probability outside the dominant basis state
};

inline CbsVerdict is_cbs_register(const StateVector& state, double tol) {
    std::size_t best = 0;
    double best_p = -1.0, second_p = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(state[i]);
        if (p > best_p) {
            second_p = best_p < 0.0 ? 0.0 : best_p;
            best_p = p;
            best = i;
        } else if (p > second_p) {
            second_p = p;
        }
    }
    CbsVerdict verdict;
    verdict.max_off_support = second_p;
    verdict.is_cbs = best_p >= 1.0 - tol;
    if (verdict.is_cbs) verdict.basis_index = best;
    return verdict;
}

// True when a 2x2 density matrix is within `tol` (max-entry norm) of a pole.
inline bool is_cbs_qubit(const DensityMatrix& rho, double tol) {
    if (rho.dim() != 2) throw ValidationError("is_cbs_qubit requires a single-qubit density matrix");
    const auto near = [&](double d00, double d11) {
        return std::abs(rho(0, 0) - d00) <= tol && std::abs(rho(1, 1) - d11) <= tol &&
               std::abs(rho(0, 1)) <= tol && std::abs(rho(1, 0)) <= tol;
    };
    return near(1.0, 0.0) || near(0.0, 1.0);
}

inline double marginal_p1(const StateVector& state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits())
        throw ValidationError("qubit " + std::to_string(qubit) + " out of range");
    const std::size_t mask = state.qubit_mask(qubit);
    double p = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i)
        if (i & mask) p += std::norm(state[i]);
    return p;
}

// Collapse `qubits` onto `bits` and renormalize. The returned state keeps the
// full register, with non-matching amplitudes zeroed.
inline std::pair<StateVector, double> post_select(const StateVector& state,
                                                  std::span<const int> qubits,
                                                  std::span<const int> bits) {
    if (qubits.size() != bits.size())
        throw ValidationError("post_select qubit and bit lists differ in length");
    std::size_t mask = 0, value = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
        const int q = qubits[j];
        if (q < 0 || q >= state.num_qubits())
            throw ValidationError("qubit " + std::to_string(q) + " out of range");
        mask |= state.qubit_mask(q);
        if (bits[j]) value |= state.qubit_mask(q);
    }
    double prob = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i)
        if ((i & mask) == value) prob += std::norm(state[i]);
    if (prob <= 0.0) throw SelectionError("post-selected pattern has probability zero");

    StateVector out(state.num_qubits());
    const double scale = 1.0 / std::sqrt(prob);
    for (std::size_t i = 0; i < state.dim(); ++i)
        out[i] = ((i & mask) == value) ? state[i] * scale : Amplitude{0.0, 0.0};
    return {std::move(out), prob};
}

inline std::pair<StateVector, double> post_select(const StateVector& state,
                                                  std::initializer_list<int> qubits,
                                                  std::initializer_list<int> bits) {
    return post_select(state, std::span<const int>(qubits.begin(), qubits.size()),
                       std::span<const int>(bits.begin(), bits.size()));
}

// |<a|b>|^2, insensitive to global phase.
inline double fidelity(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw ValidationError("fidelity requires equal dimensions");
    Amplitude overlap{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) overlap += std::conj(a[i]) * b[i];
    return std::clamp(std::norm(overlap), 0.0, 1.0);
}

// Max elementwise distance after aligning b's phase on a's largest amplitude.
inline double max_distance_up_to_phase(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw ValidationError("state dimensions differ");
    std::size_t anchor = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (std::norm(a[i]) > best) {
            best = std::norm(a[i]);
            anchor = i;
        }
    Amplitude phase{1.0, 0.0};
    if (std::abs(a[anchor]) > 0.0 && std::abs(b[anchor]) > 0.0)
        phase = (a[anchor] / std::abs(a[anchor])) / (b[anchor] / std::abs(b[anchor]));
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i] * phase));
    return worst;
}

struct OutcomeRow {
    std::string position_bits;
    std::string expected_color_bits;
    std::vector<double> per_qubit_p1;  // full register, qubit 0 first
    std::optional<std::string> post_selected_color;
};

struct OutcomeTable {
    Technique technique;
    std::vector<std::string> qubit_labels;
    std::vector<OutcomeRow> rows;
};

// Per-position audit of a CBS-carrying encoding: expected color from the
// source image, per-qubit marginals of the full superposed state, and the
// post-selected color register.
inline OutcomeTable outcome_table(const EncodingResult& enc) {
    if (enc.technique != Technique::Neqr && enc.technique != Technique::Gqir)
        throw ValidationError("outcome_table applies to neqr and gqir encodings");

    const QuantumImage& img = enc.source;
    const int q = img.bit_depth;
    const int pos_bits = static_cast<int>(enc.layout.position_qubits.size());
    const std::size_t positions = std::size_t{1} << pos_bits;

    const auto expected_color = [&](std::size_t pos) -> std::uint32_t {
        std::size_t y, x;
        if (enc.technique == Technique::Neqr) {
            const int n = pos_bits / 2;
            y = pos >> n;
            x = pos & ((std::size_t{1} << n) - 1);
        } else {
            const auto [h, w] = gqir_dims(img.height, img.width);
            const detail::GqirGeometry geo{h, w, q, enc.axis_order};
            std::tie(y, x) = geo.yx(pos);
        }
        if (y >= static_cast<std::size_t>(img.height) || x >= static_cast<std::size_t>(img.width))
            return 0;
        return img.at(static_cast<int>(y), static_cast<int>(x));
    };

    OutcomeTable table;
    table.technique = enc.technique;
    {
        int h, w;
        if (enc.technique == Technique::Neqr) {
            h = w = pos_bits / 2;
        } else {
            std::tie(h, w) = gqir_dims(img.height, img.width);
        }
        const auto push_axis = [&](char axis, int count) {
            for (int j = count - 1; j >= 0; --j)
                table.qubit_labels.push_back(std::string(1, axis) + std::to_string(j));
        };
        if (enc.axis_order == AxisOrder::XMajor) {
            push_axis('X', w);
            push_axis('Y', h);
        } else {
            push_axis('Y', h);
            push_axis('X', w);
        }
    }
    for (int k = q - 1; k >= 0; --k) table.qubit_labels.push_back("C" + std::to_string(k));

    std::vector<double> marginals;
    for (int pq : enc.layout.position_qubits) marginals.push_back(marginal_p1(enc.ideal, pq));
    for (int cq : enc.layout.color_qubits) marginals.push_back(marginal_p1(enc.ideal, cq));

    std::vector<int> pos_bit_values(static_cast<std::size_t>(pos_bits));
    for (std::size_t pos = 0; pos < positions; ++pos) {
        for (int j = 0; j < pos_bits; ++j)
            pos_bit_values[static_cast<std::size_t>(j)] =
                static_cast<int>((pos >> (pos_bits - 1 - j)) & 1);

        OutcomeRow row;
        row.position_bits = basis_label(pos, pos_bits);
        row.expected_color_bits = basis_label(expected_color(pos), q);
        row.per_qubit_p1 = marginals;

        auto [collapsed, prob] = post_select(enc.ideal, enc.layout.position_qubits, pos_bit_values);
        (void)prob;
        // Slice out the color register from the collapsed state.
        std::vector<Amplitude> color_amps(std::size_t{1} << q, Amplitude{0.0, 0.0});
        for (std::size_t f = 0; f < color_amps.size(); ++f) {
            std::size_t index = 0;
            for (int k = 0; k < q; ++k)
                if ((f >> (q - 1 - k)) & 1)
                    index |= collapsed.qubit_mask(enc.layout.color_qubits[static_cast<std::size_t>(k)]);
            for (int j = 0; j < pos_bits; ++j)
                if (pos_bit_values[static_cast<std::size_t>(j)])
                    index |= collapsed.qubit_mask(enc.layout.position_qubits[static_cast<std::size_t>(j)]);
            color_amps[f] = collapsed[index];
        }
        const auto verdict =
            is_cbs_register(StateVector::from_amplitudes(q, std::move(color_amps)), 1e-12);
        if (verdict.is_cbs) row.post_selected_color = basis_label(*verdict.basis_index, q);
        table.rows.push_back(std::move(row));
    }
    return table;
}

struct ResourceCount {
    int qubits = 0;
    std::map<std::string, int> gate_counts;
    std::map<int, int> controls_histogram;  // quantum controls per gate -> count

    int total_gates() const {
        int t = 0;
        for (const auto& [_, c] : gate_counts) t += c;
        return t;
    }
    int count(const std::string& kind) const {
        const auto it = gate_counts.find(kind);
        return it == gate_counts.end() ? 0 : it->second;
    }
};

inline ResourceCount resource_count(const Circuit& circuit) {
    ResourceCount rc;
    rc.qubits = circuit.num_qubits;
    for (const auto& g : circuit.gates) {
        rc.gate_counts[gate_kind_name(g.kind)] += 1;
        rc.controls_histogram[static_cast<int>(g.controls.size())] += 1;
    }
    return rc;
}

// Aggregate per-position weight of an MCQI state: the RMS of the three
// sin-branch amplitudes, rescaled so a grayscale image reproduces the FRQI
// outcome column sin(theta)/2^n.
inline std::vector<double> mcqi_position_weights(const EncodingResult& enc) {
    if (enc.technique != Technique::Mcqi)
        throw ValidationError("position weights apply to mcqi encodings");
    const StateVector& state = enc.ideal;
    const std::size_t positions = std::size_t{1} << enc.layout.position_qubits.size();
    std::vector<double> weights(positions, 0.0);
    for (std::size_t i = 0; i < positions; ++i) {
        double sum = 0.0;
        for (std::size_t ch = 0; ch < 3; ++ch)
            sum += std::norm(state[((4 + ch) * positions) + i]);
        weights[i] = 2.0 * std::sqrt(sum / 3.0);
    }
    return weights;
}

}  // namespace qimg
