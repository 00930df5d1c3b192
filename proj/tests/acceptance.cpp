// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line each. Exits nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qimg/analysis.hpp"
#include "qimg/encoders.hpp"
#include "qimg/fixtures.hpp"
#include "qimg/noise.hpp"
#include "qimg/pnm.hpp"
#include "qimg/tables.hpp"
#include "qimg/tiling.hpp"

using namespace qimg;

namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
    bool ok = true;
    std::ostringstream why;

    void require(bool condition, const std::string& message) {
        if (!condition) {
            if (!ok) why << "; ";
            why << message;
            ok = false;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// --- criterion bodies -------------------------------------------------------

void criterion_frqi_golden(Check& c) {
    const auto start = std::chrono::steady_clock::now();
    const AngleImage thetas{{0.0, kPi / 6, kPi / 3, kPi / 2}, 1};
    const StateVector ideal = frqi_ideal(thetas);
    const StateVector executed = run_circuit(frqi_circuit(thetas));
    const double printed[8] = {0.5, 0.43301, 0.25, 0.0, 0.0, 0.25, 0.43301, 0.5};
    for (int i = 0; i < 8; ++i) {
        c.require(std::abs(ideal[static_cast<std::size_t>(i)] - printed[i]) < 1e-4,
                  "ideal amplitude " + std::to_string(i) + " off the printed value");
        c.require(std::abs(executed[static_cast<std::size_t>(i)] - printed[i]) < 1e-4,
                  "executed amplitude " + std::to_string(i) + " off the printed value");
    }
    c.require(max_distance_up_to_phase(ideal, executed) < 1e-9,
              "circuit and ideal drift beyond 1e-9");
    const double elapsed = seconds_since(start);
    c.require(elapsed < 1.0, "runtime " + fmt(elapsed) + "s exceeds 1s");
}

void criterion_frqi_second_fixture(Check& c) {
    const AngleImage thetas{{0.0, kPi / 2, 0.0, kPi / 2}, 1};
    const StateVector ideal = frqi_ideal(thetas);
    const double expected[8] = {0.5, 0.0, 0.5, 0.0, 0.0, 0.5, 0.0, 0.5};
    for (int i = 0; i < 8; ++i)
        c.require(std::abs(ideal[static_cast<std::size_t>(i)] - expected[i]) < 1e-12,
                  "amplitude " + std::to_string(i) + " not exact");

    const std::string csv = table_csv("II");
    c.require(csv == table_csv("II"), "table II is not byte-stable");
    std::istringstream in(csv);
    std::string line;
    std::vector<std::string> outcomes;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("row", 0) == 0) continue;
        outcomes.push_back(line.substr(line.rfind(',') + 1));
    }
    const std::vector<std::string> expected_col = {"0.0000", "0.5000", "0.0000", "0.5000"};
    c.require(outcomes == expected_col, "table II outcome column mismatch");
}

void criterion_neqr(Check& c) {
    const auto start = std::chrono::steady_clock::now();
    const auto enc = encode_neqr(fixtures::gray2x2_steps());
    int nonzero = 0;
    for (std::size_t i = 0; i < enc.ideal.dim(); ++i)
        if (std::abs(enc.ideal[i]) > 0.0) ++nonzero;
    c.require(nonzero == 4, "expected exactly four nonzero amplitudes");
    for (std::size_t i : {std::size_t{0}, std::size_t{401}, std::size_t{802}, std::size_t{1023}})
        c.require(enc.ideal[i] == Amplitude{0.5, 0.0},
                  "amplitude at " + std::to_string(i) + " is not 0.5");

    const auto table = outcome_table(enc);
    const char* colors[4] = {"00000000", "01100100", "11001000", "11111111"};
    for (std::size_t pos = 0; pos < 4; ++pos) {
        c.require(table.rows[pos].post_selected_color.has_value() &&
                      *table.rows[pos].post_selected_color == colors[pos],
                  "post-selected color row " + std::to_string(pos) + " mismatch");
    }
    const auto rc = resource_count(enc.circuit);
    c.require(rc.count("mcx") == 14, "mcx count is not 14");
    c.require(rc.count("h") == 2, "h count is not 2");
    const double elapsed = seconds_since(start);
    c.require(elapsed < 1.0, "runtime " + fmt(elapsed) + "s exceeds 1s");
}

void criterion_neqr_marginals(Check& c) {
    const StateVector state = neqr_ideal(fixtures::gray2x2_steps());
    const std::uint32_t pixels[4] = {0, 100, 200, 255};
    bool saw_half = false, saw_quarter = false, saw_three_quarter = false;
    for (int k = 7; k >= 0; --k) {
        int set = 0;
        for (std::uint32_t p : pixels) set += static_cast<int>((p >> k) & 1);
        const double expected_p1 = set / 4.0;  // brute-force oracle over the four-term state
        const DensityMatrix rho = partial_trace(state, {7 - k});
        c.require(std::abs(rho(0, 0) - (1.0 - expected_p1)) < 1e-9 &&
                      std::abs(rho(1, 1) - expected_p1) < 1e-9 &&
                      std::abs(rho(0, 1)) < 1e-9 && std::abs(rho(1, 0)) < 1e-9,
                  "plane " + std::to_string(k) + " marginal off the oracle");
        if (expected_p1 == 0.5) saw_half = true;
        if (expected_p1 == 0.25) saw_quarter = true;
        if (expected_p1 == 0.75) saw_three_quarter = true;
        if (set != 0 && set != 4)
            c.require(!is_cbs_qubit(rho, 1e-9),
                      "non-constant plane " + std::to_string(k) + " audited as cbs");
    }
    c.require(saw_half && saw_quarter && saw_three_quarter,
              "expected diag(0.5,0.5), diag(0.75,0.25) and diag(0.25,0.75) planes");
}

void criterion_gqir(Check& c) {
    const std::string vi = table_csv("VI");
    c.require(vi.find("0,0,10000010") != std::string::npos &&
                  vi.find("0,1,01000001") != std::string::npos &&
                  vi.find("1,0,10010011") != std::string::npos &&
                  vi.find("1,1,00010001") != std::string::npos,
              "table VI rows mismatch");

    const std::string viii = table_csv("VIII");
    c.require(viii.find("0,0,0,00000010") != std::string::npos &&
                  viii.find("0,1,0,00000001") != std::string::npos &&
                  viii.find("1,0,0,00000011") != std::string::npos,
              "table VIII in-image rows mismatch");
    for (const char* row : {"1,1,0,00000000", "0,0,1,00000000", "0,1,1,00000000",
                            "1,0,1,00000000", "1,1,1,00000000"})
        c.require(viii.find(row) != std::string::npos, "table VIII out-of-image row mismatch");
    c.require(vi == table_csv("VI") && viii == table_csv("VIII"), "tables are not byte-stable");

    for (const auto& [state, pos_bits] :
         {std::pair{gqir_ideal(fixtures::gray2x2_mixed()), 2},
          std::pair{gqir_ideal(fixtures::gray1x3(), AxisOrder::XMajor), 3}}) {
        const double amp = 1.0 / std::sqrt(static_cast<double>(1 << pos_bits));
        int nonzero = 0;
        for (std::size_t i = 0; i < state.dim(); ++i) {
            if (state[i] == Amplitude{0.0, 0.0}) continue;
            ++nonzero;
            c.require(std::abs(state[i] - amp) < 1e-12, "amplitude off 1/sqrt(2^(h+w))");
        }
        c.require(nonzero == (1 << pos_bits), "nonzero amplitude count mismatch");
    }
    // the strip's out-of-image positions hold color zero
    const StateVector strip = gqir_ideal(fixtures::gray1x3(), AxisOrder::XMajor);
    for (std::size_t pos : {std::size_t{0b110}, std::size_t{0b001}, std::size_t{0b011},
                            std::size_t{0b101}, std::size_t{0b111}})
        c.require(std::abs(strip[pos] - 1.0 / std::sqrt(8.0)) < 1e-12,
                  "out-of-image position lacks color zero");
}

void criterion_mcqi(Check& c) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> angle(0.0, kPi / 2);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t pixels = (trial % 3 == 0) ? 1 : 4;
        std::vector<double> thetas(pixels * 3);
        for (auto& t : thetas) t = angle(rng);
        const double norm = mcqi_ideal(AngleImage{thetas, 3}).norm();
        c.require(std::abs(norm - 1.0) < 1e-12, "random angle set " + std::to_string(trial) +
                                                    " norm " + fmt(norm));
    }

    const QuantumImage gray_checker = QuantumImage::rgb(
        2, 2, 8, {0, 0, 0, 255, 255, 255, 0, 0, 0, 255, 255, 255});
    const auto enc = encode_mcqi(gray_checker);
    const auto weights = mcqi_position_weights(enc);
    const double expected[4] = {0.0, 0.5, 0.0, 0.5};
    for (int i = 0; i < 4; ++i)
        c.require(std::abs(weights[static_cast<std::size_t>(i)] - expected[i]) < 1e-12,
                  "aggregate weight " + std::to_string(i) + " mismatch");

    c.require(max_distance_up_to_phase(enc.ideal, run_circuit(enc.circuit)) < 1e-9,
              "circuit and ideal disagree beyond 1e-9");
}

void criterion_qbip(Check& c) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 1000; ++trial) {
        const int len = 1 + static_cast<int>(rng() % 16);
        std::vector<int> bits(static_cast<std::size_t>(len));
        for (auto& b : bits) b = static_cast<int>(rng() & 1);
        const auto enc = qbip_encode(bits);
        const auto verdict = is_cbs_register(run_circuit(enc.circuit), 0.0);
        if (!verdict.is_cbs) {
            c.require(false, "trial " + std::to_string(trial) + " not a cbs at tol 0");
            return;
        }
        if (qbip_decode(*verdict.basis_index, len) != bits) {
            c.require(false, "trial " + std::to_string(trial) + " round trip mismatch");
            return;
        }
    }
    const auto fixture = qbip_encode(fixtures::qbip_reference_bits());
    const auto verdict = is_cbs_register(fixture.ideal, 0.0);
    c.require(verdict.is_cbs && *verdict.basis_index == 0x7B, "reference bits do not land on 0x7B");
}

void criterion_oracle_sweep(Check& c) {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> q_dist(1, 4);
    int worst_name = -1;
    double worst = 1.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int q = q_dist(rng);
        const int side = 1 << (rng() % 3);  // 1, 2 or 4

        const auto gray = [&](int s) {
            std::vector<std::uint32_t> pixels(static_cast<std::size_t>(s) * s);
            for (auto& p : pixels) p = static_cast<std::uint32_t>(rng() % (1u << q));
            return QuantumImage::gray(s, s, q, std::move(pixels));
        };

        const EncodingResult encodings[5] = {
            encode_frqi(gray(side)),
            encode_neqr(gray(side)),
            encode_gqir(
                [&] {
                    const int w = 1 + static_cast<int>(rng() % 4);
                    const int h = 1 + static_cast<int>(rng() % 4);
                    std::vector<std::uint32_t> pixels(static_cast<std::size_t>(w) * h);
                    for (auto& p : pixels) p = static_cast<std::uint32_t>(rng() % (1u << q));
                    return QuantumImage{w, h, 1, q, std::move(pixels)};
                }(),
                (rng() & 1) ? AxisOrder::XMajor : AxisOrder::YMajor),
            encode_mcqi([&] {
                const int s = side > 2 ? 2 : side;
                std::vector<std::uint32_t> pixels(static_cast<std::size_t>(s) * s * 3);
                for (auto& p : pixels) p = static_cast<std::uint32_t>(rng() % (1u << q));
                return QuantumImage::rgb(s, s, q, std::move(pixels));
            }()),
            qbip_encode([&] {
                std::vector<int> bits(1 + rng() % 12);
                for (auto& b : bits) b = static_cast<int>(rng() & 1);
                return bits;
            }()),
        };
        for (int e = 0; e < 5; ++e) {
            const double f = fidelity(run_circuit(encodings[e].circuit), encodings[e].ideal);
            if (f < worst) {
                worst = f;
                worst_name = e;
            }
        }
    }
    c.require(worst >= 1.0 - 1e-9, "worst fidelity " + fmt(worst) + " on technique index " +
                                       std::to_string(worst_name));
    const double elapsed = seconds_since(start);
    c.require(elapsed < 60.0, "runtime " + fmt(elapsed) + "s exceeds 60s");
}

void criterion_noise(Check& c) {
    const auto frqi = encode_frqi(fixtures::gray2x2_binary());
    const auto qbip = qbip_encode(fixtures::qbip_reference_bits());
    const NoiseModel model{0.05, 0.0};
    int frqi_ok = 0, qbip_ok = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Histogram f = run_noisy(frqi.circuit, model, 8192, seed);
        bool all = true;
        for (const char* bin : {"001", "011", "100", "110"}) all &= f.count(bin) > 0;
        frqi_ok += all ? 1 : 0;

        const Histogram qb = run_noisy(qbip.circuit, model, 8192, seed);
        std::string modal;
        std::uint64_t best = 0;
        for (const auto& [bits, count] : qb.counts)
            if (count > best) {
                best = count;
                modal = bits;
            }
        qbip_ok += (modal == "01111011") ? 1 : 0;
    }
    c.require(frqi_ok >= 19, "forbidden bins occupied in only " + std::to_string(frqi_ok) +
                                 "/20 seeds");
    c.require(qbip_ok >= 19,
              "modal outcome correct in only " + std::to_string(qbip_ok) + "/20 seeds");
}

void criterion_manual_access(Check& c) {
    c.require(frqi_manual_access_count(1920, 1080, 3) == 1555200,
              "1920x1080x3 / 4 is not 1555200");
}

void criterion_pnm_roundtrip(Check& c) {
    const std::vector<std::string> corpus = {
        "P2 2 2 255 0 85 170 255",
        "P2 3 1 7 1 2 3",
        "P3 1 1 3 3 2 3",
        "P3 2 1 255 1 2 3 4 5 6",
        std::string("P5 2 1 255\n") + char(0) + char(255),
        std::string("P5 1 1 65535\n") + char(1) + char(2),
        std::string("P6 1 1 255\n") + char(9) + char(8) + char(7),
        std::string("P6 1 1 65535\n") + char(1) + char(2) + char(3) + char(4) + char(5) + char(6),
    };
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const PnmImage first = parse_pnm(corpus[i]);
        const std::string bytes = serialize_pnm(first);
        const PnmImage second = parse_pnm(bytes);
        const bool same = first.format == second.format && first.width == second.width &&
                          first.height == second.height && first.maxval == second.maxval &&
                          first.samples == second.samples;
        c.require(same, "round trip " + std::to_string(i) + " not bit-exact");
        c.require(serialize_pnm(second) == bytes, "second serialization differs");

        const QuantumImage img = to_quantum_image(first);
        std::vector<std::uint32_t> rebuilt(img.pixels.size(), 0);
        for (int k = 0; k < img.bit_depth; ++k) {
            const QuantumImage plane = bit_plane(img, k);
            for (std::size_t s = 0; s < rebuilt.size(); ++s) rebuilt[s] |= plane.pixels[s] << k;
        }
        c.require(rebuilt == img.pixels, "bit-plane reconstruction " + std::to_string(i) + " failed");
    }
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<void(Check&)> body;
    };
    const std::vector<Criterion> criteria = {
        {"frqi golden statevector matches print and circuit", criterion_frqi_golden},
        {"frqi second fixture exact and table II byte-stable", criterion_frqi_second_fixture},
        {"neqr amplitudes, post-selection rows and gate counts", criterion_neqr},
        {"neqr single-qubit marginals match the bit-plane oracle", criterion_neqr_marginals},
        {"gqir tables regenerate with the exact amplitude law", criterion_gqir},
        {"mcqi normalization, aggregate weights and circuit match", criterion_mcqi},
        {"qbip encode/audit/decode identity over 1000 strings", criterion_qbip},
        {"oracle equivalence sweep at 200 images per technique", criterion_oracle_sweep},
        {"noisy readout occupies forbidden bins, qbip stays modal", criterion_noise},
        {"manual access arithmetic", criterion_manual_access},
        {"pnm round-trip and bit-plane reconstruction identities", criterion_pnm_roundtrip},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check check;
        try {
            criteria[i].body(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        if (check.ok) {
            std::cout << "[PASS] " << (i + 1) << ". " << criteria[i].name << "\n";
        } else {
            std::cout << "[FAIL] " << (i + 1) << ". " << criteria[i].name << " -- "
                      << check.why.str() << "\n";
            ++failures;
        }
    }
    if (failures == 0) std::cout << "all " << criteria.size() << " acceptance criteria passed\n";
    else std::cout << failures << " acceptance criteria failed\n";
    return failures;
}
