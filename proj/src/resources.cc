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

#include <algorithm>
#include <variant>

#include "qpf/circuit.h"

namespace qpf {

namespace {

struct Cost {
    size_t cnots;
    size_t depth;
};

size_t toffoli_count(size_t controls) {
    return 2 * controls - 3;
}

Cost multi_controlled_ry_cost(size_t controls) {
    if (controls == 1) {
        return {2, 4};
    }
    size_t toffolis = toffoli_count(controls);
    return {2 * 6 * toffolis, 2 * 12 * toffolis + 2};
}

Cost controlled_unitary_cost(size_t targets) {
    if (targets == 1) {
        return {2, 5};
    }
    // Generic (targets+1)-qubit unitary, Shende-Markov-Bullock CNOT count.
    uint64_t n = targets + 1;
    uint64_t num = 23 * (uint64_t{1} << (2 * n)) + 64 - 72 * (uint64_t{1} << n);
    size_t cnots = static_cast<size_t>((num + 47) / 48);
    return {cnots, 2 * cnots + 1};
}

Cost state_prep_cost(size_t qubits) {
    size_t n = size_t{1} << qubits;
    return {n - 2, 2 * n - 3};
}

class Scheduler {
   public:
    explicit Scheduler(size_t n_qubits) : frontier_(n_qubits, 0) {
    }

    void block(const std::vector<size_t> &qubits, Cost cost) {
        size_t start = 0;
        for (size_t q : qubits) {
            start = std::max(start, frontier_[q]);
        }
        for (size_t q : qubits) {
            frontier_[q] = start + cost.depth;
        }
        cnots_ += cost.cnots;
    }

    void qft(QubitRange range, bool inverse) {
        struct Step {
            std::vector<size_t> qubits;
            Cost cost;
        };
        std::vector<Step> steps;
        size_t r = range.count;
        for (size_t i = r; i-- > 0;) {
            size_t qi = range.first + i;
            steps.push_back({{qi}, {0, 1}});
            for (size_t j = i; j-- > 0;) {
                steps.push_back({{range.first + j, qi}, {2, 5}});
            }
        }
        for (size_t i = 0; i < r / 2; i++) {
            steps.push_back({{range.first + i, range.first + r - 1 - i}, {3, 3}});
        }
        if (inverse) {
            std::reverse(steps.begin(), steps.end());
        }
        for (const auto &s : steps) {
            block(s.qubits, s.cost);
        }
    }

    ResourceCount finish() const {
        ResourceCount out;
        out.width = frontier_.size();
        out.depth = frontier_.empty() ? 0 : *std::max_element(frontier_.begin(), frontier_.end());
        out.two_qubit_gates = cnots_;
        return out;
    }

   private:
    std::vector<size_t> frontier_;
    size_t cnots_ = 0;
};

}  // namespace

ResourceCount count_resources(const Circuit &circuit) {
    Scheduler s(circuit.n_qubits());
    for (const auto &op : circuit.ops()) {
        std::vector<size_t> qubits = op_targets(op);
        for (size_t c : op_controls(op)) {
            qubits.push_back(c);
        }
        if (const auto *g = std::get_if<gates::Qft>(&op)) {
            s.qft(g->range, false);
        } else if (const auto *g = std::get_if<gates::InverseQft>(&op)) {
            s.qft(g->range, true);
        } else if (std::holds_alternative<gates::Cnot>(op)) {
            s.block(qubits, {1, 1});
        } else if (const auto *g = std::get_if<gates::ControlledRy>(&op)) {
            s.block(qubits, multi_controlled_ry_cost(g->controls.size()));
        } else if (const auto *g = std::get_if<gates::ControlledUnitary>(&op)) {
            s.block(qubits, controlled_unitary_cost(g->targets.count));
        } else if (const auto *g = std::get_if<gates::StatePrep>(&op)) {
            s.block(qubits, state_prep_cost(g->range.count));
        } else {
            s.block(qubits, {0, 1});
        }
    }
    return s.finish();
}

}  // namespace qpf
