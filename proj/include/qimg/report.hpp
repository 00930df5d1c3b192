// SPDX-License-Identifier: Apache-2.0
//
// JSON / CSV serialization for analysis results and the per-run report the
// CLI emits. All JSON documents carry "schema": 1.
#pragma once

#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "qimg/analysis.hpp"
#include "qimg/noise.hpp"

namespace qimg {

inline nlohmann::json cbs_verdict_to_json(const CbsVerdict& v, double tol) {
    nlohmann::json j;
    j["is_cbs"] = v.is_cbs;
    if (v.basis_index) j["basis_index"] = *v.basis_index;
    else j["basis_index"] = nullptr;
    j["max_off_support"] = v.max_off_support;
    j["tolerance"] = tol;
    return j;
}

inline nlohmann::json resource_count_to_json(const ResourceCount& rc) {
    nlohmann::json j;
    j["qubits"] = rc.qubits;
    j["gates"] = rc.gate_counts;
    nlohmann::json controls = nlohmann::json::object();
    for (const auto& [k, v] : rc.controls_histogram) controls[std::to_string(k)] = v;
    j["controls_histogram"] = std::move(controls);
    j["total_gates"] = rc.total_gates();
    return j;
}

inline nlohmann::json outcome_table_to_json(const OutcomeTable& table) {
    nlohmann::json j;
    j["schema"] = 1;
    j["technique"] = technique_name(table.technique);
    j["qubit_labels"] = table.qubit_labels;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r;
        r["position"] = row.position_bits;
        r["expected_color"] = row.expected_color_bits;
        r["p1"] = row.per_qubit_p1;
        if (row.post_selected_color) r["post_selected_color"] = *row.post_selected_color;
        else r["post_selected_color"] = nullptr;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

inline std::string outcome_table_to_csv(const OutcomeTable& table) {
    std::ostringstream out;
    out << "position,expected_color,post_selected_color";
    for (const auto& label : table.qubit_labels) out << ",p1(" << label << ")";
    out << "\n";
    for (const auto& row : table.rows) {
        out << row.position_bits << "," << row.expected_color_bits << ","
            << (row.post_selected_color ? *row.post_selected_color : std::string("none"));
        for (double p : row.per_qubit_p1) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6f", p);
            out << "," << buf;
        }
        out << "\n";
    }
    return out.str();
}

inline nlohmann::json histogram_to_json(const Histogram& hist) {
    nlohmann::json j;
    j["schema"] = 1;
    j["shots"] = hist.shots;
    j["counts"] = hist.counts;
    return j;
}

inline std::string histogram_to_csv(const Histogram& hist) {
    std::ostringstream out;
    out << "outcome,count\n";
    for (const auto& [bits, count] : hist.counts) out << bits << "," << count << "\n";
    return out.str();
}

struct RunReport {
    std::string technique;
    nlohmann::json image;
    ResourceCount resources;
    std::optional<double> fidelity;  // present iff a circuit was executed
    CbsVerdict cbs;
    double cbs_tolerance = 1e-9;
    std::optional<OutcomeTable> table;
    std::optional<Histogram> histogram;
    std::optional<StateVector> statevector;  // included for small registers
    double encode_ms = 0.0;
    double simulate_ms = 0.0;
};

inline nlohmann::json image_descriptor(const QuantumImage& img) {
    return {{"width", img.width},
            {"height", img.height},
            {"channels", img.channels},
            {"bit_depth", img.bit_depth}};
}

inline nlohmann::json run_report_to_json(const RunReport& report) {
    nlohmann::json j;
    j["schema"] = 1;
    j["technique"] = report.technique;
    j["image"] = report.image;
    j["resources"] = resource_count_to_json(report.resources);
    if (report.fidelity) j["fidelity"] = *report.fidelity;
    j["cbs"] = cbs_verdict_to_json(report.cbs, report.cbs_tolerance);
    if (report.table) j["outcome_table"] = outcome_table_to_json(*report.table);
    if (report.histogram) j["histogram"] = histogram_to_json(*report.histogram);
    if (report.statevector) {
        nlohmann::json amps = nlohmann::json::array();
        for (const auto& a : report.statevector->amps()) amps.push_back({a.real(), a.imag()});
        j["statevector"] = std::move(amps);
    }
    j["timings_ms"] = {{"encode", report.encode_ms}, {"simulate", report.simulate_ms}};
    return j;
}

}  // namespace qimg
