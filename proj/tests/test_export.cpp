// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "qimg/analysis.hpp"
#include "qimg/circuit_json.hpp"
#include "qimg/encoders.hpp"
#include "qimg/fixtures.hpp"
#include "qimg/qasm.hpp"
#include "qasm_sim.hpp"
#include "test_support.hpp"

using namespace qimg;
using test_support::random_gray_image;
using test_support::random_rgb_image;

namespace {

constexpr double kPi = std::numbers::pi;

bool gates_identical(const Circuit& a, const Circuit& b) {
    if (a.num_qubits != b.num_qubits || a.gates.size() != b.gates.size()) return false;
    for (std::size_t i = 0; i < a.gates.size(); ++i) {
        const Gate &x = a.gates[i], &y = b.gates[i];
        if (x.kind != y.kind || x.targets != y.targets || x.angle != y.angle ||
            x.classical_control != y.classical_control)
            return false;
        if (x.controls.size() != y.controls.size()) return false;
        for (std::size_t j = 0; j < x.controls.size(); ++j)
            if (x.controls[j].qubit != y.controls[j].qubit ||
                x.controls[j].polarity != y.controls[j].polarity)
                return false;
    }
    return true;
}

void check_qasm_equivalence(const Circuit& circuit) {
    const std::string qasm = circuit_to_qasm(circuit);
    const StateVector decomposed = qasm_sim::simulate(qasm);
    const StateVector reference = run_circuit(circuit);
    CHECK(fidelity(decomposed, reference) >= 1.0 - 1e-9);
}

int count_lines_with(const std::string& text, const std::string& needle) {
    int count = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.find(needle) != std::string::npos) ++count;
    return count;
}

}  // namespace

TEST_SUITE("export") {

TEST_CASE("json circuit round-trip is gate-exact") {
    const Circuit original = frqi_circuit(AngleImage{{0.1234567890123456, kPi / 6, 0.9, kPi / 2}, 1});
    const Circuit back = circuit_from_json_text(circuit_to_json(original).dump());
    CHECK(gates_identical(original, back));

    const auto rc_a = resource_count(original);
    const auto rc_b = resource_count(back);
    CHECK(rc_a.gate_counts == rc_b.gate_counts);
    CHECK(rc_a.controls_histogram == rc_b.controls_histogram);
}

TEST_CASE("json circuit keeps the multi-controlled gates undecomposed") {
    const auto doc = circuit_to_json(neqr_circuit(fixtures::gray2x2_steps()));
    int mcx = 0;
    for (const auto& g : doc["gates"])
        if (g["kind"] == "mcx") ++mcx;
    CHECK(mcx == 14);
}

TEST_CASE("json circuit survives classical-control flags") {
    const auto enc = qbip_encode(fixtures::qbip_reference_bits());
    const Circuit back = circuit_from_json_text(circuit_to_json(enc.circuit).dump());
    CHECK(gates_identical(enc.circuit, back));
    const StateVector replayed = run_circuit(back);
    CHECK(fidelity(replayed, enc.ideal) == 1.0);
}

TEST_CASE("qasm header and plain gates") {
    Circuit bell{2, {}};
    bell.push(Gate::h(0));
    bell.push(Gate::cnot(0, 1));
    const std::string qasm = circuit_to_qasm(bell);
    CHECK(qasm.rfind("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\n", 0) == 0);
    CHECK(count_lines_with(qasm, "h q[0];") == 1);
    CHECK(count_lines_with(qasm, "cx q[0],q[1];") == 1);
}

TEST_CASE("an all-ones byte exports as an eight-line body") {
    const auto enc = qbip_encode(std::vector<int>(8, 1));
    const std::string qasm = circuit_to_qasm(enc.circuit);
    std::istringstream in(qasm);
    std::string line;
    int header = 0, body = 0;
    while (std::getline(in, line)) {
        if (line.rfind("OPENQASM", 0) == 0 || line.rfind("include", 0) == 0 ||
            line.rfind("qreg", 0) == 0)
            ++header;
        else if (!line.empty())
            ++body;
    }
    CHECK(header == 3);
    CHECK(body == 8);
    CHECK(count_lines_with(qasm, "x q[") == 8);
}

TEST_CASE("decomposed qasm matches the exact simulation: encoders") {
    check_qasm_equivalence(frqi_circuit(AngleImage{{0.0, kPi / 6, kPi / 3, kPi / 2}, 1}));
    check_qasm_equivalence(neqr_circuit(fixtures::gray2x2_steps()));
    check_qasm_equivalence(gqir_circuit(fixtures::gray1x3(), AxisOrder::XMajor));

    std::mt19937_64 rng(53);
    check_qasm_equivalence(encode_mcqi(random_rgb_image(rng, 2, 4)).circuit);
    check_qasm_equivalence(encode_frqi(random_gray_image(rng, 4, 8)).circuit);  // 4 controls
}

TEST_CASE("decomposed qasm handles mixed polarities and deep control chains") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 2);
        Circuit c{n, {}};
        for (int q = 0; q < n; ++q)
            if (rng() & 1) c.push(Gate::h(q));
        std::vector<Control> controls;
        for (int q = 1; q < n; ++q)
            controls.push_back({q, (rng() & 1) ? Polarity::OnOne : Polarity::OnZero});
        c.push(Gate::mcx(controls, 0));
        c.push(Gate::mcry(0.1 + static_cast<double>(rng() % 300) / 100.0, controls, 0));
        check_qasm_equivalence(c);
    }
}

TEST_CASE("qasm angles are printed with full precision") {
    Circuit c{2, {}};
    c.push(Gate::mcry(kPi / 3, {{1, Polarity::OnOne}}, 0));
    const std::string qasm = circuit_to_qasm(c);
    CHECK(qasm.find("1.0471975511965976") != std::string::npos);
}

}  // TEST_SUITE
