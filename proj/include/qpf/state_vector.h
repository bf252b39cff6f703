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
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "qpf/numerics.h"

namespace qpf {

constexpr size_t kMaxQubits = 16;

/// Contiguous block of qubits [first, first + count).
struct QubitRange {
    size_t first = 0;
    size_t count = 0;

    size_t end() const {
        return first + count;
    }
    bool contains(size_t q) const {
        return q >= first && q < end();
    }
    bool operator==(const QubitRange &) const = default;
};

/// Dense n-qubit state. Qubit 0 is the least significant bit of the basis index.
class StateVector {
   public:
    /// |0...0> on n qubits.
    explicit StateVector(size_t n_qubits);
    /// Throws ValidationError unless the amplitudes have length 2^n and unit norm within 1e-10.
    static StateVector from_amplitudes(std::vector<complex> amplitudes);
    static StateVector basis(size_t n_qubits, uint64_t index);

    size_t n_qubits() const {
        return n_qubits_;
    }
    size_t size() const {
        return amplitudes_.size();
    }
    std::span<const complex> amplitudes() const {
        return amplitudes_;
    }
    const complex &operator[](uint64_t index) const {
        return amplitudes_[index];
    }
    double norm_squared() const;

    /// Raw access for gate kernels. Callers are responsible for keeping the norm.
    std::span<complex> mutable_amplitudes() {
        return amplitudes_;
    }

   private:
    StateVector() = default;
    size_t n_qubits_ = 0;
    std::vector<complex> amplitudes_;
};

/// Born probability of reading `outcome` on `qubit`.
double probability_of(const StateVector &state, size_t qubit, int outcome);

/// Probability of each basis value of a register; index k is the register value k.
std::vector<double> register_probabilities(const StateVector &state, QubitRange range);

/// Collapses `qubit` onto `outcome` and renormalizes. Returns the pre-collapse probability.
/// Throws PostselectionError if that probability is <= 1e-12.
std::pair<StateVector, double> postselect(const StateVector &state, size_t qubit, int outcome);

/// Outcome counts keyed by full-register basis index.
using Histogram = std::map<uint64_t, uint64_t>;

/// Draws `shots` full-register measurements. Deterministic for a fixed seed.
Histogram sample(const StateVector &state, uint64_t shots, uint64_t seed);

/// Marginal probability estimate of `qubit` = 1 from a histogram.
double frequency_of_one(const Histogram &histogram, size_t qubit);

}  // namespace qpf
