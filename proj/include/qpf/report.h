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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpf/flowmeter.h"
#include "qpf/grid.h"
#include "qpf/hhl.h"

namespace nlohmann {
template <typename T>
struct adl_serializer<std::optional<T>> {
    static void to_json(json &j, const std::optional<T> &v) {
        if (v) {
            j = *v;
        } else {
            j = nullptr;
        }
    }
    static void from_json(const json &j, std::optional<T> &v) {
        if (j.is_null()) {
            v.reset();
        } else {
            v = j.get<T>();
        }
    }
};
}  // namespace nlohmann

namespace qpf {
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LineFlow, from, to, flow_pu, flow_mw)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ResourceCount, width, depth, two_qubit_gates)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(FlowEstimate, from, to, delta_theta_sq, flow_pu, flow_mw, shots, sign_oracle_assisted)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ComplexityEstimate, n, s, k, eps, classical_cost, quantum_cost)
}  // namespace qpf

namespace qpf::report {

// Structured (JSON) output of the command-line tool. Field names mirror the library types.

struct SystemSummary {
    std::vector<std::vector<double>> reduced_b;
    std::vector<double> rhs_p;
    double matrix_scale = 1;
    int slack_bus = 0;
    std::vector<int> bus_order;

    bool operator==(const SystemSummary &) const = default;
};

struct BusAngle {
    int bus = 0;
    double scaled = 0;   // factored units, as in reduced_b * theta = rhs_p
    double radians = 0;  // scaled / matrix_scale

    bool operator==(const BusAngle &) const = default;
};

struct ParamsSummary {
    int alpha = 2;
    double t = 0;
    double c = 0;
    std::optional<uint64_t> shots;
    std::optional<uint64_t> seed;

    bool operator==(const ParamsSummary &) const = default;
};

struct ClassicalReport {
    std::string command = "solve-classical";
    SystemSummary system;
    std::vector<BusAngle> angles;
    std::vector<LineFlow> flows;

    bool operator==(const ClassicalReport &) const = default;
};

struct HhlReport {
    std::string command = "solve-hhl";
    SystemSummary system;
    ParamsSummary params;
    std::vector<double> solution;
    std::vector<double> classical_solution;
    std::vector<BusAngle> angles;
    double norm_theta = 0;
    double norm_theta_sq = 0;
    double success_probability = 0;
    double fidelity = 0;
    ResourceCount resources;
    std::map<std::string, double> eigenphase_histogram;
    double alpha_leakage = 0;
    std::string sign_source;

    bool operator==(const HhlReport &) const = default;
};

struct FlowCommandReport {
    std::string command = "flow";
    ParamsSummary params;
    FlowEstimate estimate;
    LineFlow classical;
    std::string sign_source = "oracle-assisted";

    bool operator==(const FlowCommandReport &) const = default;
};

struct ResourcesReport {
    std::string command = "resources";
    ParamsSummary params;
    ResourceCount resources;
    std::vector<std::string> circuit;  // debug dump, one line per entry

    bool operator==(const ResourcesReport &) const = default;
};

struct ComplexityReport {
    std::string command = "complexity";
    ComplexityEstimate estimate;
    std::optional<ComplexityEstimate> grown;  // same inputs with n multiplied by `growth`
    std::optional<double> growth;
    std::optional<double> classical_ratio;
    std::optional<double> quantum_ratio;

    bool operator==(const ComplexityReport &) const = default;
};

struct CompareReport {
    std::string command = "compare";
    std::vector<int> bus_order;
    std::vector<double> classical_solution;
    std::vector<double> quantum_solution;
    double max_abs_difference = 0;
    double fidelity = 0;
    double success_probability = 0;
    double norm_theta = 0;
    ResourceCount resources;
    ParamsSummary params;

    bool operator==(const CompareReport &) const = default;
};

SystemSummary summarize(const DcSystem &sys);
ParamsSummary summarize(const HhlParams &params);
std::vector<BusAngle> bus_angles(const DcSystem &sys, std::span<const double> reduced_scaled);

ClassicalReport make_classical_report(const Network &net);
HhlReport make_hhl_report(const Network &net, const HhlParams &params);
FlowCommandReport make_flow_report(const Network &net, const HhlParams &params, int from, int to);
ResourcesReport make_resources_report(const Network &net, const HhlParams &params);
CompareReport make_compare_report(const Network &net, const HhlParams &params);
ComplexityReport make_complexity_report(const ComplexityEstimate &estimate, std::optional<double> growth);

std::string to_table(const ClassicalReport &r);
std::string to_table(const HhlReport &r);
std::string to_table(const FlowCommandReport &r);
std::string to_table(const ResourcesReport &r);
std::string to_table(const ComplexityReport &r);
std::string to_table(const CompareReport &r);

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SystemSummary, reduced_b, rhs_p, matrix_scale, slack_bus, bus_order)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BusAngle, bus, scaled, radians)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ParamsSummary, alpha, t, c, shots, seed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ClassicalReport, command, system, angles, flows)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(HhlReport, command, system, params, solution, classical_solution, angles, norm_theta,
                                   norm_theta_sq, success_probability, fidelity, resources, eigenphase_histogram,
                                   alpha_leakage, sign_source)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(FlowCommandReport, command, params, estimate, classical, sign_source)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ResourcesReport, command, params, resources, circuit)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ComplexityReport, command, estimate, grown, growth, classical_ratio, quantum_ratio)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CompareReport, command, bus_order, classical_solution, quantum_solution,
                                   max_abs_difference, fidelity, success_probability, norm_theta, resources, params)

}  // namespace qpf::report

