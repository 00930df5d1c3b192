// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Subcommands: encode, tables, sample, export.
// Exit codes: 0 success, 2 validation error, 3 I/O error, 4 internal error.
#pragma once

#include <chrono>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qimg/analysis.hpp"
#include "qimg/circuit_json.hpp"
#include "qimg/encoders.hpp"
#include "qimg/fixtures.hpp"
#include "qimg/noise.hpp"
#include "qimg/pnm.hpp"
#include "qimg/qasm.hpp"
#include "qimg/report.hpp"
#include "qimg/tables.hpp"
#include "qimg/tiling.hpp"

namespace qimg::cli {

namespace detail {

inline QuantumImage load_image(const std::string& path) {
    constexpr const char* kBuiltinPrefix = "builtin:";
    if (path.rfind(kBuiltinPrefix, 0) == 0)
        return fixtures::by_name(path.substr(std::string(kBuiltinPrefix).size()));
    return to_quantum_image(parse_pnm(read_file(path)));
}

inline Technique technique_from_name(const std::string& name) {
    if (name == "frqi") return Technique::Frqi;
    if (name == "neqr") return Technique::Neqr;
    if (name == "gqir") return Technique::Gqir;
    if (name == "mcqi") return Technique::Mcqi;
    if (name == "qbip") return Technique::Qbip;
    throw ValidationError("unknown technique: " + name);
}

// Row-major, MSB-first bits of every sample.
inline std::vector<int> image_to_bits(const QuantumImage& image) {
    std::vector<int> bits;
    bits.reserve(image.pixels.size() * static_cast<std::size_t>(image.bit_depth));
    for (auto p : image.pixels)
        for (int k = image.bit_depth - 1; k >= 0; --k)
            bits.push_back(static_cast<int>((p >> k) & 1));
    return bits;
}

inline EncodingResult encode_for(Technique technique, const QuantumImage& image,
                                 AxisOrder order) {
    switch (technique) {
        case Technique::Frqi: return encode_frqi(image);
        case Technique::Neqr: return encode_neqr(image);
        case Technique::Gqir: return encode_gqir(image, order);
        case Technique::Mcqi: return encode_mcqi(image);
        case Technique::Qbip: return qbip_encode(image_to_bits(image));
    }
    throw ValidationError("unknown technique");
}

inline double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

inline RunReport make_report(const EncodingResult& enc, double cbs_tol, bool with_table,
                             double encode_ms) {
    const auto sim_start = std::chrono::steady_clock::now();
    const StateVector executed = run_circuit(enc.circuit);
    RunReport report;
    report.simulate_ms = ms_since(sim_start);
    report.encode_ms = encode_ms;
    report.technique = technique_name(enc.technique);
    report.image = image_descriptor(enc.source);
    report.resources = resource_count(enc.circuit);
    report.fidelity = fidelity(executed, enc.ideal);
    report.cbs = is_cbs_register(executed, cbs_tol);
    report.cbs_tolerance = cbs_tol;
    if (with_table && (enc.technique == Technique::Neqr || enc.technique == Technique::Gqir))
        report.table = outcome_table(enc);
    if (executed.num_qubits() <= 10) report.statevector = executed;
    return report;
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) out << text;
    else write_file(out_path, text);
}

inline std::uint64_t default_seed() {
    if (const char* env = std::getenv("QIMG_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

// Bins the ideal state gives probability ~0 that nevertheless drew counts.
inline nlohmann::json forbidden_bin_report(const StateVector& ideal, const Histogram& hist) {
    constexpr double kZeroTol = 1e-12;
    const auto probs = born_probabilities(ideal);
    nlohmann::json occupied = nlohmann::json::object();
    std::uint64_t forbidden_total = 0;
    std::size_t forbidden_bins = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] >= kZeroTol) continue;
        ++forbidden_bins;
        const auto label = basis_label(i, ideal.num_qubits());
        const std::uint64_t c = hist.count(label);
        if (c > 0) occupied[label] = c;
        forbidden_total += c;
    }
    nlohmann::json j;
    j["threshold"] = kZeroTol;
    j["bin_count"] = forbidden_bins;
    j["occupied"] = std::move(occupied);
    j["total_count"] = forbidden_total;
    j["mass"] = static_cast<double>(forbidden_total) / static_cast<double>(hist.shots);
    return j;
}

}  // namespace detail

struct Options {
    std::string image_path;
    std::string technique = "frqi";
    int bit_plane_index = -1;
    int tile_side = 0;
    bool x_major = false;
    std::string output_path;
    std::string table_id;
    std::string format = "json-circuit";
    std::uint64_t shots = 8192;
    double readout = 0.0;
    double depol = 0.0;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quantum image representation toolkit"};
    app.require_subcommand(1);
    Options opt;

    const auto add_image_flags = [&](CLI::App* cmd) {
        cmd->add_option("image", opt.image_path,
                        "PNM image path, or builtin:<name> (see README)")
            ->required();
        cmd->add_option("--technique", opt.technique, "frqi|neqr|gqir|mcqi|qbip")->required();
        cmd->add_option("--bit-plane", opt.bit_plane_index, "extract bit plane k before encoding");
        cmd->add_flag("--x-major", opt.x_major, "gqir position order |X>|Y> instead of |Y>|X>");
    };

    CLI::App* encode = app.add_subcommand("encode", "encode an image and audit the result");
    add_image_flags(encode);
    encode->add_option("--tile", opt.tile_side, "split into side x side blocks (power of two)");
    encode->add_option("-o,--output", opt.output_path, "write JSON here instead of stdout");

    CLI::App* tables = app.add_subcommand("tables", "regenerate a bundled reference table as CSV");
    tables->add_option("--which", opt.table_id, "I|II|IV|V-marginals|VI|VII-marginals|VIII|IX-marginals")
        ->required();
    tables->add_option("-o,--output", opt.output_path, "write CSV here instead of stdout");

    CLI::App* sample = app.add_subcommand("sample", "sample measurement shots, optionally noisy");
    add_image_flags(sample);
    sample->add_option("--shots", opt.shots, "number of shots (default 8192)");
    sample->add_option("--readout", opt.readout, "per-bit readout flip probability");
    sample->add_option("--depol", opt.depol, "per-gate depolarizing probability");
    auto* seed_opt = sample->add_option("--seed", opt.seed, "RNG seed (default: QIMG_SEED env or 0)");
    sample->add_option("-o,--output", opt.output_path, "write JSON here instead of stdout");

    CLI::App* exp = app.add_subcommand("export", "export the encoding circuit");
    add_image_flags(exp);
    exp->add_option("--format", opt.format, "json-circuit|qasm");
    exp->add_option("-o,--output", opt.output_path, "write text here instead of stdout");

    args.insert(args.begin(), "qimg");
    std::vector<char*> argv;
    argv.reserve(args.size());
    for (auto& a : args) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    opt.seed_given = seed_opt->count() > 0;
    if (!opt.seed_given) opt.seed = detail::default_seed();

    try {
        const auto start = std::chrono::steady_clock::now();
        if (tables->parsed()) {
            detail::emit(table_csv(opt.table_id), opt.output_path, out);
            return 0;
        }

        QuantumImage image = detail::load_image(opt.image_path);
        if (opt.bit_plane_index >= 0) image = bit_plane(image, opt.bit_plane_index);
        const Technique technique = detail::technique_from_name(opt.technique);
        const AxisOrder order = opt.x_major ? AxisOrder::XMajor : AxisOrder::YMajor;

        if (encode->parsed()) {
            nlohmann::json doc;
            if (opt.tile_side > 0) {
                nlohmann::json tiles = nlohmann::json::array();
                for (const auto& block : tile(image, opt.tile_side)) {
                    const double encode_ms = detail::ms_since(start);
                    tiles.push_back(run_report_to_json(
                        detail::make_report(detail::encode_for(technique, block, order), 1e-9,
                                            false, encode_ms)));
                }
                doc = {{"schema", 1}, {"tile_side", opt.tile_side}, {"tiles", std::move(tiles)}};
            } else {
                const EncodingResult enc = detail::encode_for(technique, image, order);
                doc = run_report_to_json(
                    detail::make_report(enc, 1e-9, true, detail::ms_since(start)));
            }
            detail::emit(doc.dump(2) + "\n", opt.output_path, out);
            return 0;
        }

        if (sample->parsed()) {
            const EncodingResult enc = detail::encode_for(technique, image, order);
            const NoiseModel model{opt.readout, opt.depol};
            const Histogram hist = run_noisy(enc.circuit, model, opt.shots, opt.seed);
            nlohmann::json doc = histogram_to_json(hist);
            doc["technique"] = technique_name(enc.technique);
            doc["seed"] = opt.seed;
            doc["noise"] = {{"readout_flip", model.readout_flip},
                            {"depolarizing", model.depolarizing}};
            doc["forbidden"] = detail::forbidden_bin_report(enc.ideal, hist);
            // shot-sampled cbs audit: 8192 shots give roughly 1% error per bin
            constexpr double kSampledCbsTol = 0.02;
            std::string modal;
            std::uint64_t best = 0;
            for (const auto& [bits, count] : hist.counts)
                if (count > best) {
                    best = count;
                    modal = bits;
                }
            const double fraction = static_cast<double>(best) / static_cast<double>(hist.shots);
            doc["modal"] = {{"outcome", modal},
                            {"count", best},
                            {"fraction", fraction},
                            {"is_cbs", fraction >= 1.0 - kSampledCbsTol},
                            {"tolerance", kSampledCbsTol}};
            detail::emit(doc.dump(2) + "\n", opt.output_path, out);
            return 0;
        }

        if (exp->parsed()) {
            const EncodingResult enc = detail::encode_for(technique, image, order);
            if (opt.format == "json-circuit") {
                detail::emit(circuit_to_json(enc.circuit).dump(2) + "\n", opt.output_path, out);
            } else if (opt.format == "qasm") {
                detail::emit(circuit_to_qasm(enc.circuit), opt.output_path, out);
            } else {
                throw ValidationError("unknown export format: " + opt.format);
            }
            return 0;
        }
        return 0;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace qimg::cli
