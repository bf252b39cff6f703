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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpf/circuit.h"
#include "qpf/grid.h"
#include "qpf/state_vector.h"

namespace qpf {

/// Shot-based readout instead of exact amplitudes.
struct Sampling {
    uint64_t shots = 0;
    uint64_t seed = 0;

    bool operator==(const Sampling &) const = default;
};

/// Register sizes and constants of one HHL execution.
///
/// alpha: eigenvalue-register width (1..8). t: evolution time of U = exp(i B t).
/// c: rotation constant, 0 < c <= smallest eigenvalue so that c / lambda <= 1.
struct HhlParams {
    int alpha = 2;
    double t = 0;
    double c = 0;
    std::optional<Sampling> sampling;

    bool operator==(const HhlParams &) const = default;
};

/// t = 2 pi ((2^alpha - 1) / 2^alpha) / lambda_max: the largest eigenvalue lands on the
/// largest representable phase. Throws ValidationError for non-positive eigenvalues.
double choose_time(std::span<const double> eigenvalues, int alpha);

/// Rotation constant.
///
/// The preferred value is t / 2 pi (the reciprocal of the eigenvalue that maps to a full turn);
/// it is used whenever it does not exceed the smallest eigenvalue. Otherwise the smallest
/// eigenvalue itself is used when its phase is exactly representable in alpha bits, and
/// 0.9 times the smallest eigenvalue when it is not.
double choose_c(std::span<const double> eigenvalues, double t, int alpha);

/// Default alpha-bit parameters for a system (exact mode).
HhlParams default_params(const DcSystem &sys, int alpha = 2);

/// Checks register bounds and the rotation constant against the system's eigenvalues.
void validate_params(const DcSystem &sys, const HhlParams &params);

struct PreparedRhs {
    StateVector state;  // beta register only; zero padded to a power of two
    double renorm = 0;  // ||rhs_p||
};

PreparedRhs prepare_rhs(const DcSystem &sys);

/// Number of beta qubits needed for a system dimension (at least one).
size_t beta_qubits(size_t dim);

/// reduced_b zero-padded to 2^beta with the padding block set to lambda_max * I.
HermitianMatrix padded_matrix(const DcSystem &sys);

/// State prep, QPE, value-keyed rotation and inverse QPE. Registers, from qubit 0:
/// "beta" (solution), "alpha" (eigenvalue), "ancilla" (one qubit).
Circuit build_circuit(const DcSystem &sys, const HhlParams &params);

struct HhlOutcome {
    std::vector<double> solution;            // signed theta, scaled units
    std::vector<double> classical_solution;  // direct solve of the same system
    double norm_theta = 0;
    double success_probability = 0;
    double fidelity = 0;
    ResourceCount resources;
    std::map<std::string, double> eigenphase_histogram;  // alpha bitstring (MSB first) -> probability
    double alpha_leakage = 0;  // largest |amplitude| with alpha != 0 after uncomputation
    HhlParams params;
    std::string sign_source;  // "statevector" or "oracle-assisted"
};

/// Executes the pipeline. In exact mode values come from amplitudes; in sampled mode the
/// ancilla probability and the solution magnitudes come from a shot histogram.
HhlOutcome run(const DcSystem &sys, const HhlParams &params);

/// Post-selected solution register: ancilla = 1, alpha = 0 sector, renormalized.
struct Readout {
    StateVector beta_state;
    double success_probability = 0;
    double norm_theta = 0;
};

Readout readout_state(const DcSystem &sys, const HhlParams &params);

/// Born probabilities of the eigenvalue register right after phase estimation.
std::map<std::string, double> eigenphase_histogram(const DcSystem &sys, const HhlParams &params);

/// Bitstring of `value` over `width` bits, most significant first.
std::string bitstring(uint64_t value, size_t width);

struct ComplexityEstimate {
    double n = 0;
    double s = 0;
    double k = 0;
    double eps = 0;
    double classical_cost = 0;  // n s k log2(1/eps)
    double quantum_cost = 0;    // log2(n) s^2 k^2 / eps

    bool operator==(const ComplexityEstimate &) const = default;
};

/// Unit-constant asymptotic costs of conjugate gradient and HHL.
ComplexityEstimate estimate_complexity(double n, double s, double k, double eps);

/// n, sparsity and condition number taken from the reduced system.
ComplexityEstimate estimate_complexity(const DcSystem &sys, double eps);

}  // namespace qpf
