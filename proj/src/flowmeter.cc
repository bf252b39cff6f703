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

#include "qpf/flowmeter.h"

#include <cmath>

#include "qpf/circuit.h"
#include "qpf/error.h"

namespace qpf {

namespace {

double sampled_probability(const StateVector &state, uint64_t index, const Sampling &s) {
    Histogram h = sample(state, s.shots, s.seed);
    auto it = h.find(index);
    uint64_t hits = it == h.end() ? 0 : it->second;
    return static_cast<double>(hits) / static_cast<double>(s.shots);
}

size_t reduced_index(const DcSystem &sys, int bus) {
    for (size_t k = 0; k < sys.bus_order.size(); k++) {
        if (sys.bus_order[k] == bus) {
            return k;
        }
    }
    throw ValidationError("bus " + std::to_string(bus) + " is not part of the reduced system");
}

}  // namespace

DeltaEstimate estimate_delta_sq(const StateVector &readout, double norm_theta_sq,
                                const std::optional<Sampling> &sampling) {
    if (readout.n_qubits() != 1) {
        throw ValidationError("pairwise-difference trick defined only for 2-dimensional solutions");
    }
    if (norm_theta_sq < 0) {
        throw ValidationError("norm_theta_sq must be non-negative");
    }
    StateVector rotated = apply(readout, gates::H{0});
    DeltaEstimate out;
    if (sampling) {
        out.probability = sampled_probability(rotated, 1, *sampling);
        out.shots = sampling->shots;
    } else {
        out.probability = probability_of(rotated, 0, 1);
    }
    out.delta_theta_sq = 2 * norm_theta_sq * out.probability;
    return out;
}

DeltaEstimate estimate_slack_delta_sq(const StateVector &readout, uint64_t index, double norm_theta_sq,
                                      const std::optional<Sampling> &sampling) {
    if (index >= readout.size()) {
        throw ValidationError("readout index out of range");
    }
    DeltaEstimate out;
    if (sampling) {
        out.probability = sampled_probability(readout, index, *sampling);
        out.shots = sampling->shots;
    } else {
        out.probability = std::norm(readout[index]);
    }
    out.delta_theta_sq = norm_theta_sq * out.probability;
    return out;
}

FlowEstimate to_line_flow(const DeltaEstimate &est, int from, int to, const Network &net, double matrix_scale,
                          double sign) {
    const Line *line = net.find_line(from, to);
    if (!line) {
        throw ValidationError("unknown line " + std::to_string(from) + "-" + std::to_string(to));
    }
    FlowEstimate out;
    out.from = from;
    out.to = to;
    out.delta_theta_sq = est.delta_theta_sq;
    out.shots = est.shots;
    out.flow_pu = (sign < 0 ? -1.0 : 1.0) * line->susceptance_pu() * std::sqrt(std::max(0.0, est.delta_theta_sq)) /
                  matrix_scale;
    out.flow_mw = out.flow_pu * net.base_mva;
    return out;
}

FlowEstimate measure_line_flow(const Network &net, const DcSystem &sys, const HhlParams &params, int from, int to) {
    if (!net.find_line(from, to)) {
        throw ValidationError("unknown line " + std::to_string(from) + "-" + std::to_string(to));
    }
    std::map<int, double> oracle = expand_angles(sys, solve_classical(sys));
    double sign = oracle.at(from) - oracle.at(to) < 0 ? -1 : 1;

    Readout readout = readout_state(sys, params);
    double norm_sq = readout.norm_theta * readout.norm_theta;
    std::optional<Sampling> flow_sampling;
    if (params.sampling) {
        // Independent shots for the ancilla and for the readout measurement.
        HhlOutcome sampled = run(sys, params);
        norm_sq = sampled.norm_theta * sampled.norm_theta;
        flow_sampling = Sampling{params.sampling->shots, params.sampling->seed + 1};
    }

    DeltaEstimate est;
    if (from == sys.slack_bus || to == sys.slack_bus) {
        int other = from == sys.slack_bus ? to : from;
        est = estimate_slack_delta_sq(readout.beta_state, reduced_index(sys, other), norm_sq, flow_sampling);
    } else {
        size_t a = reduced_index(sys, from);
        size_t b = reduced_index(sys, to);
        if (readout.beta_state.n_qubits() != 1 || a == b) {
            throw ValidationError("pairwise-difference trick defined only for 2-dimensional solutions");
        }
        est = estimate_delta_sq(readout.beta_state, norm_sq, flow_sampling);
    }
    return to_line_flow(est, from, to, net, sys.matrix_scale, sign);
}

}  // namespace qpf
