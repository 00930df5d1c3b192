// SPDX-License-Identifier: Apache-2.0
//
// Lossless gate-IR serialization. Angles round-trip bit-exactly, so importing
// an exported circuit reproduces it gate for gate.
#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "qimg/core.hpp"

namespace qimg {

inline nlohmann::json gate_to_json(const Gate& g) {
    nlohmann::json j;
    j["kind"] = gate_kind_name(g.kind);
    j["targets"] = g.targets;
    nlohmann::json controls = nlohmann::json::array();
    for (const auto& c : g.controls)
        controls.push_back({{"qubit", c.qubit}, {"polarity", c.polarity == Polarity::OnOne ? 1 : 0}});
    j["controls"] = std::move(controls);
    if (g.kind == GateKind::Mcry) j["angle"] = g.angle;
    if (g.classical_control) j["classical"] = true;
    return j;
}

inline nlohmann::json circuit_to_json(const Circuit& circuit) {
    nlohmann::json j;
    j["schema"] = 1;
    j["kind"] = "circuit";
    j["num_qubits"] = circuit.num_qubits;
    nlohmann::json gates = nlohmann::json::array();
    for (const auto& g : circuit.gates) gates.push_back(gate_to_json(g));
    j["gates"] = std::move(gates);
    return j;
}

inline Gate gate_from_json(const nlohmann::json& j) {
    Gate g;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "h") g.kind = GateKind::H;
    else if (kind == "x") g.kind = GateKind::X;
    else if (kind == "cnot") g.kind = GateKind::Cnot;
    else if (kind == "mcx") g.kind = GateKind::Mcx;
    else if (kind == "mcry") g.kind = GateKind::Mcry;
    else throw ValidationError("unknown gate kind: " + kind);
    g.targets = j.at("targets").get<std::vector<int>>();
    for (const auto& c : j.at("controls"))
        g.controls.push_back(Control{c.at("qubit").get<int>(),
                                     c.at("polarity").get<int>() ? Polarity::OnOne
                                                                 : Polarity::OnZero});
    if (g.kind == GateKind::Mcry) g.angle = j.at("angle").get<double>();
    g.classical_control = j.value("classical", false);
    return g;
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
    if (j.value("schema", 0) != 1) throw ValidationError("unsupported circuit schema");
    Circuit circuit{j.at("num_qubits").get<int>(), {}};
    for (const auto& g : j.at("gates")) circuit.push(gate_from_json(g));
    return circuit;
}

inline Circuit circuit_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError("circuit JSON does not parse");
    return circuit_from_json(j);
}

}  // namespace qimg
