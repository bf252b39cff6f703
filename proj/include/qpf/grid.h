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

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qpf/numerics.h"

namespace qpf {

struct Bus {
    int id = 0;
    double injection_mw = 0;  // generation minus load

    bool operator==(const Bus &) const = default;
};

struct Line {
    int from = 0;
    int to = 0;
    double reactance_pu = 0;

    /// b_mn = 1 / x_mn (resistance neglected).
    double susceptance_pu() const {
        return 1.0 / reactance_pu;
    }
    bool connects(int a, int b) const {
        return (from == a && to == b) || (from == b && to == a);
    }
    bool operator==(const Line &) const = default;
};

/// A lossless DC network with exactly one slack bus.
///
/// Invariants (checked by validate_network): positive reactances, no self loops,
/// no parallel lines, injections summing to zero within 1e-6 MW, connected graph.
struct Network {
    double base_mva = 100;
    int slack_bus = 0;
    std::vector<Bus> buses;
    std::vector<Line> lines;

    size_t bus_index(int id) const;
    bool has_bus(int id) const;
    const Line *find_line(int a, int b) const;
    bool operator==(const Network &) const = default;
};

/// Throws ValidationError carrying the offending field path.
void validate_network(const Network &net);

/// Parses a network document (JSON) and validates it.
///
/// Schema:
///   { "base_mva": number, "slack_bus": integer,
///     "buses": [ {"id": integer, "injection_mw": number}, ... ],
///     "lines": [ {"from": integer, "to": integer, "reactance_pu": number}, ... ] }
Network parse_network(std::string_view text);
Network load_network(const std::filesystem::path &path);
std::string emit_network(const Network &net);

/// Full bus susceptance matrix. Rows and columns follow Network::buses order.
struct SusceptanceMatrix {
    RealMatrix b;
    std::vector<int> bus_ids;
};

SusceptanceMatrix build_b_matrix(const Network &net);

/// Slack-reduced system in factored form: reduced_b * theta_scaled = rhs_p with
/// theta_physical = theta_scaled / matrix_scale.
struct DcSystem {
    RealMatrix reduced_b;
    std::vector<double> rhs_p;  // per-unit injections of the non-slack buses
    int slack_bus = 0;
    double matrix_scale = 1;
    std::vector<int> bus_order;  // reduced index -> bus id

    size_t dim() const {
        return rhs_p.size();
    }
};

/// Largest power of ten not exceeding `x` (x > 0).
double power_of_ten_floor(double x);

DcSystem reduce_and_scale(const SusceptanceMatrix &b, const Network &net);
DcSystem make_dc_system(const Network &net);

/// Angles in scaled units, ordered as DcSystem::bus_order.
std::vector<double> solve_classical(const DcSystem &sys);

/// Re-inserts the slack bus at angle zero. Values stay in scaled units.
std::map<int, double> expand_angles(const DcSystem &sys, std::span<const double> reduced_angles);

struct LineFlow {
    int from = 0;
    int to = 0;
    double flow_pu = 0;  // positive means from -> to
    double flow_mw = 0;

    bool operator==(const LineFlow &) const = default;
};

struct FlowReport {
    std::vector<LineFlow> lines;
    std::map<int, double> angles_rad;  // physical radians

    bool operator==(const FlowReport &) const = default;
};

/// `scaled_angles` must contain every bus (slack at 0), in scaled units.
FlowReport line_flows(const Network &net, const std::map<int, double> &scaled_angles, double matrix_scale);

/// Largest |sum of flows leaving bus - injection| over all buses, in per-unit.
double max_nodal_mismatch(const Network &net, const FlowReport &report);

}  // namespace qpf
