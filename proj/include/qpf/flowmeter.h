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
#include <optional>

#include "qpf/grid.h"
#include "qpf/hhl.h"
#include "qpf/state_vector.h"

namespace qpf {

/// Squared angle difference read out of the solution register.
struct DeltaEstimate {
    double delta_theta_sq = 0;  // scaled units
    double probability = 0;     // the measured Born probability
    std::optional<uint64_t> shots;  // empty in exact mode
};

/// A line flow whose magnitude comes from the quantum readout. The sign is not observable
/// from a squared quantity and is copied from the classical solution.
struct FlowEstimate {
    int from = 0;
    int to = 0;
    double delta_theta_sq = 0;
    double flow_pu = 0;
    double flow_mw = 0;
    std::optional<uint64_t> shots;
    bool sign_oracle_assisted = true;

    bool operator==(const FlowEstimate &) const = default;
};

/// (theta_0 - theta_1)^2 = 2 ||theta||^2 P(H psi = |1>) for a one-qubit readout psi.
/// With `sampling`, P is estimated from that many shots.
DeltaEstimate estimate_delta_sq(const StateVector &readout, double norm_theta_sq,
                                const std::optional<Sampling> &sampling = std::nullopt);

/// theta_index^2 = ||theta||^2 P(readout = index), for lines touching the slack bus.
DeltaEstimate estimate_slack_delta_sq(const StateVector &readout, uint64_t index, double norm_theta_sq,
                                      const std::optional<Sampling> &sampling = std::nullopt);

/// flow_pu = b_mn sqrt(delta) / matrix_scale, signed by `sign` (+1 or -1).
FlowEstimate to_line_flow(const DeltaEstimate &est, int from, int to, const Network &net, double matrix_scale,
                          double sign);

/// Full pipeline for one line: HHL readout, the appropriate estimator, conversion to a flow.
/// Sampling (if set in params) applies to both the ancilla readout and the flow measurement.
FlowEstimate measure_line_flow(const Network &net, const DcSystem &sys, const HhlParams &params, int from, int to);

}  // namespace qpf
