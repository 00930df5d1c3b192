// SPDX-License-Identifier: Apache-2.0
//
// OpenQASM 2.0 writer. h/x/cx pass through; gates with more controls are
// lowered by the ancilla-free recursion
//
//   C^k(U) = CV . C^{k-1}X . CV' . C^{k-1}X . C^{k-1}V,   V = sqrt(U)
//
// into {u1, u3, cu3, cx} only, i.e. one- and two-qubit gates. Multi-controlled
// Ry stays in rotation form (sqrt(Ry(a)) = Ry(a/2)), so its angles are exact.
#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "qimg/core.hpp"

namespace qimg {
namespace detail {

inline std::string fmt_angle(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

inline Mat2 mat2_adjoint(const Mat2& a) {
    return {std::conj(a.m00), std::conj(a.m10), std::conj(a.m01), std::conj(a.m11)};
}

// Principal square root of a 2x2 unitary: (U + sqrt(det) I) normalized.
inline Mat2 mat2_sqrt(const Mat2& u) {
    const Amplitude det = u.m00 * u.m11 - u.m01 * u.m10;
    const Amplitude s = std::sqrt(det);
    const Amplitude tr = u.m00 + u.m11;
    const Amplitude t = std::sqrt(tr + 2.0 * s);
    if (std::abs(t) < 1e-12) throw ValidationError("matrix square root is singular");
    return {(u.m00 + s) / t, u.m01 / t, u.m10 / t, (u.m11 + s) / t};
}

// U = e^{i alpha} * u3(theta, phi, lambda) with qelib1's u3 convention:
// u3 = [[cos(t/2), -e^{il} sin(t/2)], [e^{ip} sin(t/2), e^{i(p+l)} cos(t/2)]].
struct U3Params {
    double theta, phi, lambda, alpha;
};

inline U3Params mat2_to_u3(const Mat2& u) {
    constexpr double eps = 1e-12;
    const double r00 = std::abs(u.m00), r10 = std::abs(u.m10);
    U3Params p{2.0 * std::atan2(r10, r00), 0.0, 0.0, 0.0};
    if (r10 < eps) {          // diagonal
        p.theta = 0.0;
        p.alpha = std::arg(u.m00);
        p.lambda = std::arg(u.m11) - p.alpha;
    } else if (r00 < eps) {   // antidiagonal
        p.theta = std::numbers::pi;
        p.alpha = std::arg(u.m10);
        p.lambda = std::arg(-u.m01) - p.alpha;
    } else {
        p.alpha = std::arg(u.m00);
        p.phi = std::arg(u.m10) - p.alpha;
        p.lambda = std::arg(-u.m01) - p.alpha;
    }
    return p;
}

class QasmWriter {
public:
    explicit QasmWriter(std::ostringstream& out) : out_(out) {}

    void line(const std::string& s) { out_ << s << "\n"; }

    void u1(double lambda, int q) {
        if (std::abs(lambda) < kAngleEps) return;
        line("u1(" + fmt_angle(lambda) + ") q[" + std::to_string(q) + "];");
    }
    void u3(const U3Params& p, int q) {
        // Global phase has no observable effect on an unconditional gate.
        if (std::abs(p.theta) < kAngleEps) {
            u1(p.lambda + p.phi, q);
            return;
        }
        line("u3(" + fmt_angle(p.theta) + "," + fmt_angle(p.phi) + "," + fmt_angle(p.lambda) +
             ") q[" + std::to_string(q) + "];");
    }
    void cu3(const U3Params& p, int c, int t) {
        u1(p.alpha, c);  // conditional phase is physical
        if (std::abs(p.theta) < kAngleEps && std::abs(p.phi + p.lambda) < kAngleEps) return;
        line("cu3(" + fmt_angle(p.theta) + "," + fmt_angle(p.phi) + "," + fmt_angle(p.lambda) +
             ") q[" + std::to_string(c) + "],q[" + std::to_string(t) + "];");
    }
    void x(int q) { line("x q[" + std::to_string(q) + "];"); }
    void h(int q) { line("h q[" + std::to_string(q) + "];"); }
    void cx(int c, int t) { line("cx q[" + std::to_string(c) + "],q[" + std::to_string(t) + "];"); }
    void ry(double a, int t) {
        if (std::abs(a) < kAngleEps) return;
        line("ry(" + fmt_angle(a) + ") q[" + std::to_string(t) + "];");
    }
    void cry(double a, int c, int t) {
        // Ry(a) = u3(a, 0, 0) exactly, so cu3 carries it with no phase fixup.
        if (std::abs(a) < kAngleEps) return;
        line("cu3(" + fmt_angle(a) + ",0,0) q[" + std::to_string(c) + "],q[" + std::to_string(t) +
             "];");
    }

    void mc_ry(double angle, const std::vector<int>& controls, int target) {
        if (controls.empty()) {
            ry(angle, target);
        } else if (controls.size() == 1) {
            cry(angle, controls[0], target);
        } else {
            const int last = controls.back();
            const std::vector<int> rest(controls.begin(), controls.end() - 1);
            cry(angle / 2.0, last, target);
            mc_x(rest, last);
            cry(-angle / 2.0, last, target);
            mc_x(rest, last);
            mc_ry(angle / 2.0, rest, target);
        }
    }

    void mc_x(const std::vector<int>& controls, int target) {
        if (controls.empty()) {
            x(target);
        } else if (controls.size() == 1) {
            cx(controls[0], target);
        } else {
            mc_u(pauli_x_matrix(), controls, target);
        }
    }

    void mc_u(const Mat2& u, const std::vector<int>& controls, int target) {
        if (controls.empty()) {
            u3(mat2_to_u3(u), target);
        } else if (controls.size() == 1) {
            cu3(mat2_to_u3(u), controls[0], target);
        } else {
            const Mat2 v = mat2_sqrt(u);
            const int last = controls.back();
            const std::vector<int> rest(controls.begin(), controls.end() - 1);
            cu3(mat2_to_u3(v), last, target);
            mc_x(rest, last);
            cu3(mat2_to_u3(mat2_adjoint(v)), last, target);
            mc_x(rest, last);
            mc_u(v, rest, target);
        }
    }

private:
    static constexpr double kAngleEps = 1e-15;
    std::ostringstream& out_;
};

}  // namespace detail

inline std::string circuit_to_qasm(const Circuit& circuit) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << circuit.num_qubits << "];\n";
    detail::QasmWriter w(out);

    for (const auto& g : circuit.gates) {
        const int target = g.targets[0];
        std::vector<int> control_qubits;
        std::vector<int> inverted;  // control-on-0 qubits, x-conjugated
        for (const auto& c : g.controls) {
            control_qubits.push_back(c.qubit);
            if (c.polarity == Polarity::OnZero) inverted.push_back(c.qubit);
        }
        for (int q : inverted) w.x(q);
        switch (g.kind) {
            case GateKind::H: w.h(target); break;
            case GateKind::X: w.x(target); break;
            case GateKind::Cnot:
                if (g.classical_control) w.x(target);  // fired by a classical 1-bit
                else w.cx(control_qubits[0], target);
                break;
            case GateKind::Mcx: w.mc_x(control_qubits, target); break;
            case GateKind::Mcry: w.mc_ry(g.angle, control_qubits, target); break;
        }
        for (int q : inverted) w.x(q);
    }
    return out.str();
}

}  // namespace qimg
