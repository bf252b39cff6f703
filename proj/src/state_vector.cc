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

#include "qpf/state_vector.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qpf/error.h"

namespace qpf {

namespace {

void require_qubit(const StateVector &state, size_t qubit) {
    if (qubit >= state.n_qubits()) {
        throw ValidationError("qubit index " + std::to_string(qubit) + " out of range for a " +
                              std::to_string(state.n_qubits()) + "-qubit state");
    }
}

void require_outcome(int outcome) {
    if (outcome != 0 && outcome != 1) {
        throw ValidationError("measurement outcome must be 0 or 1");
    }
}

}  // namespace

StateVector::StateVector(size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0 || n_qubits > kMaxQubits) {
        throw ValidationError("state vectors support 1 to " + std::to_string(kMaxQubits) + " qubits, got " +
                              std::to_string(n_qubits));
    }
    amplitudes_.assign(size_t{1} << n_qubits, complex{0, 0});
    amplitudes_[0] = 1;
}

StateVector StateVector::from_amplitudes(std::vector<complex> amplitudes) {
    size_t n = 0;
    while ((size_t{1} << n) < amplitudes.size()) {
        n++;
    }
    if (amplitudes.size() < 2 || (size_t{1} << n) != amplitudes.size() || n > kMaxQubits) {
        throw ValidationError("amplitude count must be a power of two between 2 and 2^16");
    }
    StateVector out;
    out.n_qubits_ = n;
    out.amplitudes_ = std::move(amplitudes);
    double norm = out.norm_squared();
    if (std::abs(norm - 1) > 1e-10) {
        std::ostringstream ss;
        ss << "amplitudes are not normalized (sum |a|^2 = " << norm << ")";
        throw ValidationError(ss.str());
    }
    return out;
}

StateVector StateVector::basis(size_t n_qubits, uint64_t index) {
    StateVector out(n_qubits);
    if (index >= out.size()) {
        throw ValidationError("basis index out of range");
    }
    out.amplitudes_[0] = 0;
    out.amplitudes_[index] = 1;
    return out;
}

double StateVector::norm_squared() const {
    double acc = 0;
    for (const auto &a : amplitudes_) {
        acc += std::norm(a);
    }
    return acc;
}

double probability_of(const StateVector &state, size_t qubit, int outcome) {
    require_qubit(state, qubit);
    require_outcome(outcome);
    uint64_t mask = uint64_t{1} << qubit;
    uint64_t want = outcome ? mask : 0;
    double acc = 0;
    for (uint64_t k = 0; k < state.size(); k++) {
        if ((k & mask) == want) {
            acc += std::norm(state[k]);
        }
    }
    return acc;
}

std::vector<double> register_probabilities(const StateVector &state, QubitRange range) {
    if (range.count == 0 || range.end() > state.n_qubits()) {
        throw ValidationError("register range out of bounds");
    }
    std::vector<double> out(size_t{1} << range.count, 0.0);
    uint64_t mask = (uint64_t{1} << range.count) - 1;
    for (uint64_t k = 0; k < state.size(); k++) {
        out[(k >> range.first) & mask] += std::norm(state[k]);
    }
    return out;
}

std::pair<StateVector, double> postselect(const StateVector &state, size_t qubit, int outcome) {
    double p = probability_of(state, qubit, outcome);
    if (p <= 1e-12) {
        throw PostselectionError("post-selection impossible: outcome " + std::to_string(outcome) + " on qubit " +
                                 std::to_string(qubit) + " has probability " + std::to_string(p));
    }
    StateVector out = state;
    auto amps = out.mutable_amplitudes();
    uint64_t mask = uint64_t{1} << qubit;
    uint64_t want = outcome ? mask : 0;
    double scale = 1 / std::sqrt(p);
    for (uint64_t k = 0; k < amps.size(); k++) {
        amps[k] = (k & mask) == want ? amps[k] * scale : complex{0, 0};
    }
    return {std::move(out), p};
}

Histogram sample(const StateVector &state, uint64_t shots, uint64_t seed) {
    if (shots == 0) {
        throw ValidationError("shots must be at least 1");
    }
    std::vector<double> cumulative(state.size());
    double acc = 0;
    for (uint64_t k = 0; k < state.size(); k++) {
        acc += std::norm(state[k]);
        cumulative[k] = acc;
    }
    uint64_t last_nonzero = 0;
    for (uint64_t k = 0; k < state.size(); k++) {
        if (std::norm(state[k]) > 0) {
            last_nonzero = k;
        }
    }
    std::mt19937_64 rng(seed);
    Histogram out;
    for (uint64_t s = 0; s < shots; s++) {
        // 53 random mantissa bits, scaled to the accumulated total so rounding drift cannot overflow.
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        uint64_t idx = static_cast<uint64_t>(it - cumulative.begin());
        if (it == cumulative.end()) {
            idx = last_nonzero;
        }
        out[idx]++;
    }
    return out;
}

double frequency_of_one(const Histogram &histogram, size_t qubit) {
    uint64_t total = 0;
    uint64_t ones = 0;
    for (const auto &[index, count] : histogram) {
        total += count;
        if ((index >> qubit) & 1) {
            ones += count;
        }
    }
    return total == 0 ? 0.0 : static_cast<double>(ones) / static_cast<double>(total);
}

}  // namespace qpf
