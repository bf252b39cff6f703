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

#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "qpf/numerics.h"
#include "qpf/state_vector.h"

namespace qpf {

namespace gates {

struct H {
    size_t target;
};
struct X {
    size_t target;
};
struct Ry {
    size_t target;
    double angle;
};
/// Ry on `target` when every control qubit is |1>.
struct ControlledRy {
    std::vector<size_t> controls;
    size_t target;
    double angle;
};
struct Cnot {
    size_t control;
    size_t target;
};
/// Dense unitary on `targets`, applied when `control` is |1>. `power` is a label only:
/// `matrix` is already the powered operator.
struct ControlledUnitary {
    size_t control;
    QubitRange targets;
    UnitaryMatrix matrix;
    uint64_t power = 1;
};
struct Qft {
    QubitRange range;
};
struct InverseQft {
    QubitRange range;
};
/// Real amplitudes loaded as a Householder reflection mapping |0...0> to the target state.
/// The reflection is its own inverse.
struct StatePrep {
    QubitRange range;
    std::vector<double> amplitudes;
};

}  // namespace gates

using GateOp = std::variant<gates::H, gates::X, gates::Ry, gates::ControlledRy, gates::Cnot,
                            gates::ControlledUnitary, gates::Qft, gates::InverseQft, gates::StatePrep>;

std::string gate_name(const GateOp &op);
std::vector<size_t> op_targets(const GateOp &op);
std::vector<size_t> op_controls(const GateOp &op);
GateOp inverse(const GateOp &op);

/// Throws ValidationError if indices are out of range, overlap, or an embedded matrix is malformed.
void validate_op(const GateOp &op, size_t n_qubits);

/// Applies one op. The state is taken by value; the result is a new state.
StateVector apply(StateVector state, const GateOp &op);
void apply_in_place(StateVector &state, const GateOp &op);

/// QFT (or its inverse) on a register range.
StateVector qft(StateVector state, QubitRange range, bool inverse);

struct Register {
    std::string name;
    QubitRange range;
};

class Circuit {
   public:
    explicit Circuit(size_t n_qubits);

    size_t n_qubits() const {
        return n_qubits_;
    }
    /// Registers must not overlap and must fit in the circuit.
    void add_register(std::string name, QubitRange range);
    const std::vector<Register> &registers() const {
        return registers_;
    }
    const Register &reg(const std::string &name) const;

    void add(GateOp op);
    const std::vector<GateOp> &ops() const {
        return ops_;
    }

    StateVector run() const;
    StateVector run(StateVector initial) const;

    /// Human-readable op list, one op per line, qubits annotated with their register.
    std::string dump() const;

   private:
    std::string qubit_label(size_t q) const;

    size_t n_qubits_;
    std::vector<Register> registers_;
    std::vector<GateOp> ops_;
};

struct ResourceCount {
    size_t width = 0;
    size_t depth = 0;
    size_t two_qubit_gates = 0;

    bool operator==(const ResourceCount &) const = default;
};

/// Width, critical-path depth and CNOT count after decomposing composite ops.
///
/// Decomposition table (CNOTs / depth contribution):
///   H, X, Ry                         0 / 1
///   CNOT                             1 / 1
///   Ry with 1 control                2 / 4   (Ry, CX, Ry, CX)
///   Ry with k >= 2 controls          2*mcx(k) / 2*mcx_depth(k) + 2
///     mcx(k) = 6*(2k-3)              Toffoli V-chain, 6 CNOTs per Toffoli
///     mcx_depth(k) = 12*(2k-3)       12 layers per Toffoli
///   controlled unitary on m targets  m == 1: 2 / 5
///                                    m >= 2: ceil(23/48 4^n - 3/2 2^n + 4/3) / 2*CNOTs + 1, n = m+1
///   QFT on r qubits                  H per qubit, r(r-1)/2 controlled phases (2 CNOTs, depth 5 each),
///                                    floor(r/2) swaps (3 CNOTs, depth 3 each), scheduled gate by gate
///   state prep on m qubits           2^m - 2 CNOTs / 2^(m+1) - 3
/// Composite blocks other than QFT occupy all their qubits for their whole depth.
ResourceCount count_resources(const Circuit &circuit);

}  // namespace qpf
