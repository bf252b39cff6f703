// Copyright 2026 The qpowerflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpf/circuit.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>

#include "qpf/error.h"

namespace qpf {

namespace {

using Mat2 = std::array<complex, 4>;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Mat2 hadamard_matrix() {
    double r = 1 / std::numbers::sqrt2;
    return {r, r, r, -r};
}

Mat2 ry_matrix(double angle) {
    double c = std::cos(angle / 2);
    double s = std::sin(angle / 2);
    return {c, -s, s, c};
}

uint64_t mask_of(std::span<const size_t> qubits) {
    uint64_t m = 0;
    for (size_t q : qubits) {
        m |= uint64_t{1} << q;
    }
    return m;
}

void apply_single(std::span<complex> amps, size_t target, const Mat2 &u, uint64_t control_mask) {
    uint64_t tmask = uint64_t{1} << target;
    for (uint64_t k = 0; k < amps.size(); k++) {
        if ((k & tmask) || (k & control_mask) != control_mask) {
            continue;
        }
        complex a0 = amps[k];
        complex a1 = amps[k | tmask];
        amps[k] = u[0] * a0 + u[1] * a1;
        amps[k | tmask] = u[2] * a0 + u[3] * a1;
    }
}

void apply_dense(std::span<complex> amps, QubitRange range, const ComplexMatrix &u, uint64_t control_mask) {
    size_t block = size_t{1} << range.count;
    uint64_t range_mask = (uint64_t{block} - 1) << range.first;
    std::vector<complex> in(block);
    std::vector<complex> out(block);
    for (uint64_t base = 0; base < amps.size(); base++) {
        if ((base & range_mask) || (base & control_mask) != control_mask) {
            continue;
        }
        for (size_t j = 0; j < block; j++) {
            in[j] = amps[base | (uint64_t{j} << range.first)];
        }
        for (size_t r = 0; r < block; r++) {
            complex acc = 0;
            for (size_t c = 0; c < block; c++) {
                acc += u(r, c) * in[c];
            }
            out[r] = acc;
        }
        for (size_t j = 0; j < block; j++) {
            amps[base | (uint64_t{j} << range.first)] = out[j];
        }
    }
}

ComplexMatrix dft_matrix(size_t count, bool inverse) {
    size_t n = size_t{1} << count;
    ComplexMatrix m(n, n);
    double sign = inverse ? -1 : 1;
    double scale = 1 / std::sqrt(static_cast<double>(n));
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            // Reduce the exponent modulo n first so the phase stays exact for large registers.
            double turns = static_cast<double>((r * c) % n) / static_cast<double>(n);
            m(r, c) = std::polar(scale, sign * 2 * std::numbers::pi * turns);
        }
    }
    return m;
}

ComplexMatrix householder_prep(std::span<const double> psi) {
    size_t n = psi.size();
    std::vector<double> w(psi.begin(), psi.end());
    for (double &x : w) {
        x = -x;
    }
    w[0] += 1;
    double ww = 0;
    for (double x : w) {
        ww += x * x;
    }
    ComplexMatrix u = ComplexMatrix::identity(n);
    if (ww < 1e-30) {
        return u;
    }
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            u(r, c) -= 2 * w[r] * w[c] / ww;
        }
    }
    return u;
}

std::string fmt(double x) {
    std::ostringstream ss;
    ss << std::setprecision(6) << x;
    return ss.str();
}

}  // namespace

std::string gate_name(const GateOp &op) {
    return std::visit(overloaded{
                          [](const gates::H &) -> std::string { return "h"; },
                          [](const gates::X &) -> std::string { return "x"; },
                          [](const gates::Ry &) -> std::string { return "ry"; },
                          [](const gates::ControlledRy &) -> std::string { return "mcry"; },
                          [](const gates::Cnot &) -> std::string { return "cx"; },
                          [](const gates::ControlledUnitary &) -> std::string { return "cu"; },
                          [](const gates::Qft &) -> std::string { return "qft"; },
                          [](const gates::InverseQft &) -> std::string { return "iqft"; },
                          [](const gates::StatePrep &) -> std::string { return "state_prep"; },
                      },
                      op);
}

static std::vector<size_t> range_qubits(QubitRange r) {
    std::vector<size_t> out;
    for (size_t q = r.first; q < r.end(); q++) {
        out.push_back(q);
    }
    return out;
}

std::vector<size_t> op_targets(const GateOp &op) {
    return std::visit(overloaded{
                          [](const gates::H &g) { return std::vector<size_t>{g.target}; },
                          [](const gates::X &g) { return std::vector<size_t>{g.target}; },
                          [](const gates::Ry &g) { return std::vector<size_t>{g.target}; },
                          [](const gates::ControlledRy &g) { return std::vector<size_t>{g.target}; },
                          [](const gates::Cnot &g) { return std::vector<size_t>{g.target}; },
                          [](const gates::ControlledUnitary &g) { return range_qubits(g.targets); },
                          [](const gates::Qft &g) { return range_qubits(g.range); },
                          [](const gates::InverseQft &g) { return range_qubits(g.range); },
                          [](const gates::StatePrep &g) { return range_qubits(g.range); },
                      },
                      op);
}

std::vector<size_t> op_controls(const GateOp &op) {
    return std::visit(overloaded{
                          [](const gates::ControlledRy &g) { return g.controls; },
                          [](const gates::Cnot &g) { return std::vector<size_t>{g.control}; },
                          [](const gates::ControlledUnitary &g) { return std::vector<size_t>{g.control}; },
                          [](const auto &) { return std::vector<size_t>{}; },
                      },
                      op);
}

GateOp inverse(const GateOp &op) {
    return std::visit(overloaded{
                          [](const gates::Ry &g) -> GateOp { return gates::Ry{g.target, -g.angle}; },
                          [](const gates::ControlledRy &g) -> GateOp {
                              return gates::ControlledRy{g.controls, g.target, -g.angle};
                          },
                          [](const gates::ControlledUnitary &g) -> GateOp {
                              return gates::ControlledUnitary{g.control, g.targets, g.matrix.adjoint(), g.power};
                          },
                          [](const gates::Qft &g) -> GateOp { return gates::InverseQft{g.range}; },
                          [](const gates::InverseQft &g) -> GateOp { return gates::Qft{g.range}; },
                          [](const auto &g) -> GateOp { return g; },
                      },
                      op);
}

void validate_op(const GateOp &op, size_t n_qubits) {
    std::vector<size_t> targets = op_targets(op);
    std::vector<size_t> controls = op_controls(op);
    if (targets.empty()) {
        throw ValidationError(gate_name(op) + ": empty target set");
    }
    std::set<size_t> seen;
    for (size_t q : targets) {
        if (q >= n_qubits) {
            throw ValidationError(gate_name(op) + ": qubit index " + std::to_string(q) + " out of range (n_qubits=" +
                                  std::to_string(n_qubits) + ")");
        }
        seen.insert(q);
    }
    for (size_t q : controls) {
        if (q >= n_qubits) {
            throw ValidationError(gate_name(op) + ": control index " + std::to_string(q) + " out of range");
        }
        if (!seen.insert(q).second) {
            throw ValidationError(gate_name(op) + ": controls and targets overlap on qubit " + std::to_string(q));
        }
    }
    if (const auto *cu = std::get_if<gates::ControlledUnitary>(&op)) {
        if (cu->matrix.dim() != (size_t{1} << cu->targets.count)) {
            throw ValidationError("cu: matrix dimension does not match target register");
        }
    }
    if (const auto *sp = std::get_if<gates::StatePrep>(&op)) {
        if (sp->amplitudes.size() != (size_t{1} << sp->range.count)) {
            throw ValidationError("state_prep: amplitude count does not match register");
        }
        if (std::abs(norm2(sp->amplitudes) - 1) > 1e-10) {
            throw ValidationError("state_prep: amplitudes are not normalized");
        }
    }
    if (const auto *mc = std::get_if<gates::ControlledRy>(&op)) {
        if (mc->controls.empty()) {
            throw ValidationError("mcry: at least one control is required");
        }
    }
}

void apply_in_place(StateVector &state, const GateOp &op) {
    validate_op(op, state.n_qubits());
    auto amps = state.mutable_amplitudes();
    std::visit(overloaded{
                   [&](const gates::H &g) { apply_single(amps, g.target, hadamard_matrix(), 0); },
                   [&](const gates::X &g) { apply_single(amps, g.target, {0, 1, 1, 0}, 0); },
                   [&](const gates::Ry &g) { apply_single(amps, g.target, ry_matrix(g.angle), 0); },
                   [&](const gates::ControlledRy &g) {
                       apply_single(amps, g.target, ry_matrix(g.angle), mask_of(g.controls));
                   },
                   [&](const gates::Cnot &g) {
                       apply_single(amps, g.target, {0, 1, 1, 0}, uint64_t{1} << g.control);
                   },
                   [&](const gates::ControlledUnitary &g) {
                       apply_dense(amps, g.targets, g.matrix.entries(), uint64_t{1} << g.control);
                   },
                   [&](const gates::Qft &g) { apply_dense(amps, g.range, dft_matrix(g.range.count, false), 0); },
                   [&](const gates::InverseQft &g) { apply_dense(amps, g.range, dft_matrix(g.range.count, true), 0); },
                   [&](const gates::StatePrep &g) { apply_dense(amps, g.range, householder_prep(g.amplitudes), 0); },
               },
               op);
}

StateVector apply(StateVector state, const GateOp &op) {
    apply_in_place(state, op);
    return state;
}

StateVector qft(StateVector state, QubitRange range, bool inverse) {
    if (inverse) {
        return apply(std::move(state), gates::InverseQft{range});
    }
    return apply(std::move(state), gates::Qft{range});
}

Circuit::Circuit(size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
        throw ValidationError("circuits support 1 to " + std::to_string(kMaxQubits) + " qubits");
    }
}

void Circuit::add_register(std::string name, QubitRange range) {
    if (range.count == 0 || range.end() > n_qubits_) {
        throw ValidationError("register '" + name + "' does not fit in the circuit");
    }
    for (const auto &r : registers_) {
        if (r.name == name) {
            throw ValidationError("duplicate register name '" + name + "'");
        }
        if (range.first < r.range.end() && r.range.first < range.end()) {
            throw ValidationError("register '" + name + "' overlaps register '" + r.name + "'");
        }
    }
    registers_.push_back(Register{std::move(name), range});
}

const Register &Circuit::reg(const std::string &name) const {
    for (const auto &r : registers_) {
        if (r.name == name) {
            return r;
        }
    }
    throw ValidationError("no register named '" + name + "'");
}

void Circuit::add(GateOp op) {
    validate_op(op, n_qubits_);
    ops_.push_back(std::move(op));
}

StateVector Circuit::run() const {
    return run(StateVector(n_qubits_));
}

StateVector Circuit::run(StateVector initial) const {
    if (initial.n_qubits() != n_qubits_) {
        throw ValidationError("initial state width does not match circuit");
    }
    for (const auto &op : ops_) {
        apply_in_place(initial, op);
    }
    return initial;
}

std::string Circuit::qubit_label(size_t q) const {
    for (const auto &r : registers_) {
        if (r.range.contains(q)) {
            return r.name + "[" + std::to_string(q - r.range.first) + "]";
        }
    }
    return "q" + std::to_string(q);
}

std::string Circuit::dump() const {
    std::ostringstream out;
    out << "circuit n_qubits=" << n_qubits_ << "\n";
    for (const auto &r : registers_) {
        out << "register " << r.name << " qubits=" << r.range.first << ".." << r.range.end() - 1 << "\n";
    }
    auto list = [&](const std::vector<size_t> &qs) {
        std::string s;
        for (size_t k = 0; k < qs.size(); k++) {
            s += (k ? "," : "") + qubit_label(qs[k]);
        }
        return s;
    };
    for (size_t k = 0; k < ops_.size(); k++) {
        const GateOp &op = ops_[k];
        out << std::setw(4) << k << "  " << gate_name(op);
        std::vector<size_t> controls = op_controls(op);
        if (!controls.empty()) {
            out << " ctrl=" << list(controls);
        }
        out << " tgt=" << list(op_targets(op));
        std::visit(overloaded{
                       [&](const gates::Ry &g) { out << " angle=" << fmt(g.angle); },
                       [&](const gates::ControlledRy &g) { out << " angle=" << fmt(g.angle); },
                       [&](const gates::ControlledUnitary &g) { out << " power=" << g.power; },
                       [&](const gates::StatePrep &g) {
                           out << " amplitudes=[";
                           for (size_t j = 0; j < g.amplitudes.size(); j++) {
                               out << (j ? ", " : "") << fmt(g.amplitudes[j]);
                           }
                           out << "]";
                       },
                       [](const auto &) {},
                   },
                   op);
        out << "\n";
    }
    return out.str();
}

}  // namespace qpf
