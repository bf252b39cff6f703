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

#include "qpf/report.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace qpf::report {

namespace {

std::string num(double x, int precision = 6) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(precision) << x;
    return ss.str();
}

std::string vec(std::span<const double> v, int precision = 4) {
    std::string s = "[";
    for (size_t k = 0; k < v.size(); k++) {
        s += (k ? ", " : "") + num(v[k], precision);
    }
    return s + "]";
}

std::vector<std::string> split_lines(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

void resources_table(std::ostringstream &out, const ResourceCount &r) {
    out << "circuit width:     " << r.width << "\n";
    out << "circuit depth:     " << r.depth << "\n";
    out << "two-qubit gates:   " << r.two_qubit_gates << "\n";
}

void params_table(std::ostringstream &out, const ParamsSummary &p) {
    out << "alpha=" << p.alpha << "  t=" << num(p.t) << "  C=" << num(p.c);
    if (p.shots) {
        out << "  shots=" << *p.shots << "  seed=" << p.seed.value_or(0);
    } else {
        out << "  mode=exact";
    }
    out << "\n";
}

}  // namespace

SystemSummary summarize(const DcSystem &sys) {
    SystemSummary s;
    for (size_t r = 0; r < sys.dim(); r++) {
        std::vector<double> row;
        for (size_t c = 0; c < sys.dim(); c++) {
            row.push_back(sys.reduced_b(r, c));
        }
        s.reduced_b.push_back(std::move(row));
    }
    s.rhs_p = sys.rhs_p;
    s.matrix_scale = sys.matrix_scale;
    s.slack_bus = sys.slack_bus;
    s.bus_order = sys.bus_order;
    return s;
}

ParamsSummary summarize(const HhlParams &params) {
    ParamsSummary p{params.alpha, params.t, params.c, std::nullopt, std::nullopt};
    if (params.sampling) {
        p.shots = params.sampling->shots;
        p.seed = params.sampling->seed;
    }
    return p;
}

std::vector<BusAngle> bus_angles(const DcSystem &sys, std::span<const double> reduced_scaled) {
    std::vector<BusAngle> out;
    for (const auto &[bus, scaled] : expand_angles(sys, reduced_scaled)) {
        out.push_back(BusAngle{bus, scaled, scaled / sys.matrix_scale});
    }
    return out;
}

ClassicalReport make_classical_report(const Network &net) {
    DcSystem sys = make_dc_system(net);
    std::vector<double> theta = solve_classical(sys);
    ClassicalReport r;
    r.system = summarize(sys);
    r.angles = bus_angles(sys, theta);
    r.flows = line_flows(net, expand_angles(sys, theta), sys.matrix_scale).lines;
    return r;
}

HhlReport make_hhl_report(const Network &net, const HhlParams &params) {
    DcSystem sys = make_dc_system(net);
    HhlOutcome o = run(sys, params);
    HhlReport r;
    r.system = summarize(sys);
    r.params = summarize(params);
    r.solution = o.solution;
    r.classical_solution = o.classical_solution;
    r.angles = bus_angles(sys, o.solution);
    r.norm_theta = o.norm_theta;
    r.norm_theta_sq = o.norm_theta * o.norm_theta;
    r.success_probability = o.success_probability;
    r.fidelity = o.fidelity;
    r.resources = o.resources;
    r.eigenphase_histogram = o.eigenphase_histogram;
    r.alpha_leakage = o.alpha_leakage;
    r.sign_source = o.sign_source;
    return r;
}

FlowCommandReport make_flow_report(const Network &net, const HhlParams &params, int from, int to) {
    DcSystem sys = make_dc_system(net);
    FlowCommandReport r;
    r.params = summarize(params);
    r.estimate = measure_line_flow(net, sys, params, from, to);
    FlowReport classical = line_flows(net, expand_angles(sys, solve_classical(sys)), sys.matrix_scale);
    for (const auto &f : classical.lines) {
        if (f.from == from && f.to == to) {
            r.classical = f;
        } else if (f.from == to && f.to == from) {
            r.classical = LineFlow{from, to, -f.flow_pu, -f.flow_mw};
        }
    }
    return r;
}

ResourcesReport make_resources_report(const Network &net, const HhlParams &params) {
    DcSystem sys = make_dc_system(net);
    validate_params(sys, params);
    Circuit c = build_circuit(sys, params);
    ResourcesReport r;
    r.params = summarize(params);
    r.resources = count_resources(c);
    r.circuit = split_lines(c.dump());
    return r;
}

CompareReport make_compare_report(const Network &net, const HhlParams &params) {
    DcSystem sys = make_dc_system(net);
    HhlOutcome o = run(sys, params);
    CompareReport r;
    r.bus_order = sys.bus_order;
    r.classical_solution = o.classical_solution;
    r.quantum_solution = o.solution;
    for (size_t k = 0; k < o.solution.size(); k++) {
        r.max_abs_difference = std::max(r.max_abs_difference, std::abs(o.solution[k] - o.classical_solution[k]));
    }
    r.fidelity = o.fidelity;
    r.success_probability = o.success_probability;
    r.norm_theta = o.norm_theta;
    r.resources = o.resources;
    r.params = summarize(params);
    return r;
}

ComplexityReport make_complexity_report(const ComplexityEstimate &estimate, std::optional<double> growth) {
    ComplexityReport r;
    r.estimate = estimate;
    if (growth) {
        ComplexityEstimate g = estimate_complexity(estimate.n * *growth, estimate.s, estimate.k, estimate.eps);
        r.grown = g;
        r.growth = growth;
        r.classical_ratio = g.classical_cost / estimate.classical_cost;
        r.quantum_ratio = g.quantum_cost / estimate.quantum_cost;
    }
    return r;
}

std::string to_table(const ClassicalReport &r) {
    std::ostringstream out;
    out << "DC power flow, classical solve (slack bus " << r.system.slack_bus << ", matrix scale "
        << r.system.matrix_scale << ")\n";
    out << "bus    theta (scaled)    theta (rad)\n";
    for (const auto &a : r.angles) {
        out << std::setw(3) << a.bus << "    " << std::setw(14) << num(a.scaled, 4) << "    " << std::setw(11)
            << num(a.radians, 6) << "\n";
    }
    out << "line        flow (pu)    flow (MW)\n";
    for (const auto &f : r.flows) {
        out << std::setw(3) << f.from << " -> " << std::setw(3) << f.to << "  " << std::setw(9) << num(f.flow_pu, 4)
            << "    " << std::setw(9) << num(f.flow_mw, 2) << "\n";
    }
    return out.str();
}

std::string to_table(const HhlReport &r) {
    std::ostringstream out;
    out << "HHL solve  ";
    params_table(out, r.params);
    out << "quantum solution (scaled):   " << vec(r.solution) << "\n";
    out << "classical solution (scaled): " << vec(r.classical_solution) << "\n";
    out << "bus    theta (scaled)    theta (rad)\n";
    for (const auto &a : r.angles) {
        out << std::setw(3) << a.bus << "    " << std::setw(14) << num(a.scaled, 4) << "    " << std::setw(11)
            << num(a.radians, 6) << "\n";
    }
    out << "fidelity:            " << num(r.fidelity) << "\n";
    out << "success probability: " << num(r.success_probability) << "\n";
    out << "||theta||^2:         " << num(r.norm_theta_sq) << "\n";
    out << "eigenvalue register after QPE:";
    for (const auto &[bits, p] : r.eigenphase_histogram) {
        out << "  |" << bits << ">: " << num(p, 4);
    }
    out << "\n";
    resources_table(out, r.resources);
    out << "signs from:          " << r.sign_source << "\n";
    return out.str();
}

std::string to_table(const FlowCommandReport &r) {
    std::ostringstream out;
    out << "line flow " << r.estimate.from << " -> " << r.estimate.to << "  ";
    params_table(out, r.params);
    out << "(theta_m - theta_n)^2 (scaled): " << num(r.estimate.delta_theta_sq) << "\n";
    out << "estimated flow:  " << num(r.estimate.flow_pu, 4) << " pu  " << num(r.estimate.flow_mw, 2) << " MW\n";
    out << "classical flow:  " << num(r.classical.flow_pu, 4) << " pu  " << num(r.classical.flow_mw, 2) << " MW\n";
    out << "sign from:       " << r.sign_source << "\n";
    return out.str();
}

std::string to_table(const ResourcesReport &r) {
    std::ostringstream out;
    out << "HHL circuit  ";
    params_table(out, r.params);
    resources_table(out, r.resources);
    for (const auto &line : r.circuit) {
        out << line << "\n";
    }
    return out.str();
}

std::string to_table(const ComplexityReport &r) {
    std::ostringstream out;
    out << "N=" << r.estimate.n << "  s=" << r.estimate.s << "  k=" << num(r.estimate.k, 4)
        << "  eps=" << r.estimate.eps << "\n";
    out << "classical cost (N s k log2(1/eps)):  " << num(r.estimate.classical_cost, 4) << "\n";
    out << "quantum cost (log2(N) s^2 k^2/eps):  " << num(r.estimate.quantum_cost, 4) << "\n";
    if (r.grown) {
        out << "with N x " << *r.growth << ": classical x " << num(*r.classical_ratio, 4) << ", quantum x "
            << num(*r.quantum_ratio, 4) << "\n";
    }
    return out.str();
}

std::string to_table(const CompareReport &r) {
    std::ostringstream out;
    out << "                    ";
    for (int bus : r.bus_order) {
        out << std::setw(10) << ("bus " + std::to_string(bus));
    }
    out << "\nClassical Solution  ";
    for (double x : r.classical_solution) {
        out << std::setw(10) << num(x, 4);
    }
    out << "\nQuantum Solution    ";
    for (double x : r.quantum_solution) {
        out << std::setw(10) << num(x, 4);
    }
    out << "\nFidelity            " << num(r.fidelity) << "\n";
    out << "Probability         " << num(r.success_probability) << "\n";
    out << "max |difference|    " << num(r.max_abs_difference, 9) << "\n";
    resources_table(out, r.resources);
    return out.str();
}

}  // namespace qpf::report
