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

#include "qpf/grid.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qpf/error.h"

namespace qpf {

namespace {

using nlohmann::json;

constexpr double kImbalanceToleranceMw = 1e-6;

std::string field(const std::string &array, size_t k, const std::string &name) {
    return array + "[" + std::to_string(k) + "]." + name;
}

const json &require(const json &obj, const std::string &key, const std::string &path) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(path + ": missing required field");
    }
    return *it;
}

double require_number(const json &obj, const std::string &key, const std::string &path) {
    const json &v = require(obj, key, path);
    if (!v.is_number()) {
        throw ParseError(path + ": expected a number");
    }
    return v.get<double>();
}

int require_integer(const json &obj, const std::string &key, const std::string &path) {
    const json &v = require(obj, key, path);
    if (!v.is_number_integer()) {
        throw ParseError(path + ": expected an integer");
    }
    return v.get<int>();
}

}  // namespace

size_t Network::bus_index(int id) const {
    for (size_t k = 0; k < buses.size(); k++) {
        if (buses[k].id == id) {
            return k;
        }
    }
    throw ValidationError("unknown bus id " + std::to_string(id));
}

bool Network::has_bus(int id) const {
    return std::any_of(buses.begin(), buses.end(), [&](const Bus &b) { return b.id == id; });
}

const Line *Network::find_line(int a, int b) const {
    for (const auto &line : lines) {
        if (line.connects(a, b)) {
            return &line;
        }
    }
    return nullptr;
}

void validate_network(const Network &net) {
    if (!(net.base_mva > 0) || !std::isfinite(net.base_mva)) {
        throw ValidationError("base_mva: must be a positive finite number");
    }
    if (net.buses.size() < 2) {
        throw ValidationError("buses: at least two buses are required");
    }
    std::set<int> ids;
    double total = 0;
    for (size_t k = 0; k < net.buses.size(); k++) {
        if (!ids.insert(net.buses[k].id).second) {
            throw ValidationError(field("buses", k, "id") + ": duplicate bus id " + std::to_string(net.buses[k].id));
        }
        if (!std::isfinite(net.buses[k].injection_mw)) {
            throw ValidationError(field("buses", k, "injection_mw") + ": must be finite");
        }
        total += net.buses[k].injection_mw;
    }
    if (!ids.count(net.slack_bus)) {
        throw ValidationError("slack_bus: bus " + std::to_string(net.slack_bus) + " is not in the bus list");
    }
    std::set<std::pair<int, int>> pairs;
    for (size_t k = 0; k < net.lines.size(); k++) {
        const Line &line = net.lines[k];
        if (!ids.count(line.from)) {
            throw ValidationError(field("lines", k, "from") + ": unknown bus " + std::to_string(line.from));
        }
        if (!ids.count(line.to)) {
            throw ValidationError(field("lines", k, "to") + ": unknown bus " + std::to_string(line.to));
        }
        if (line.from == line.to) {
            throw ValidationError(field("lines", k, "to") + ": self-loop on bus " + std::to_string(line.from));
        }
        if (!(line.reactance_pu > 0) || !std::isfinite(line.reactance_pu)) {
            throw ValidationError(field("lines", k, "reactance_pu") + ": non-positive reactance");
        }
        auto key = std::minmax(line.from, line.to);
        if (!pairs.insert(key).second) {
            throw ValidationError("lines[" + std::to_string(k) + "]: parallel line between buses " +
                                  std::to_string(key.first) + " and " + std::to_string(key.second));
        }
    }
    if (std::abs(total) > kImbalanceToleranceMw) {
        std::ostringstream ss;
        ss << "buses: injection imbalance, net injections sum to " << total << " MW";
        throw ValidationError(ss.str());
    }

    std::set<int> seen{net.slack_bus};
    std::queue<int> frontier;
    frontier.push(net.slack_bus);
    while (!frontier.empty()) {
        int bus = frontier.front();
        frontier.pop();
        for (const auto &line : net.lines) {
            int other = line.from == bus ? line.to : line.to == bus ? line.from : bus;
            if (other != bus && seen.insert(other).second) {
                frontier.push(other);
            }
        }
    }
    if (seen.size() != ids.size()) {
        for (int id : ids) {
            if (!seen.count(id)) {
                throw ValidationError("lines: disconnected graph, bus " + std::to_string(id) +
                                      " is not reachable from the slack bus");
            }
        }
    }
}

Network parse_network(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("network document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("network document must be a JSON object");
    }
    Network net;
    net.base_mva = require_number(doc, "base_mva", "base_mva");
    net.slack_bus = require_integer(doc, "slack_bus", "slack_bus");

    const json &buses = require(doc, "buses", "buses");
    if (!buses.is_array()) {
        throw ParseError("buses: expected an array");
    }
    for (size_t k = 0; k < buses.size(); k++) {
        const json &b = buses[k];
        if (!b.is_object()) {
            throw ParseError("buses[" + std::to_string(k) + "]: expected an object");
        }
        net.buses.push_back(Bus{require_integer(b, "id", field("buses", k, "id")),
                                require_number(b, "injection_mw", field("buses", k, "injection_mw"))});
    }

    const json &lines = require(doc, "lines", "lines");
    if (!lines.is_array()) {
        throw ParseError("lines: expected an array");
    }
    for (size_t k = 0; k < lines.size(); k++) {
        const json &l = lines[k];
        if (!l.is_object()) {
            throw ParseError("lines[" + std::to_string(k) + "]: expected an object");
        }
        net.lines.push_back(Line{require_integer(l, "from", field("lines", k, "from")),
                                 require_integer(l, "to", field("lines", k, "to")),
                                 require_number(l, "reactance_pu", field("lines", k, "reactance_pu"))});
    }
    validate_network(net);
    return net;
}

Network load_network(const std::filesystem::path &path) {
    std::filesystem::path resolved = path;
    if (!std::filesystem::exists(resolved) && resolved.extension().empty()) {
        std::filesystem::path with_ext = resolved;
        with_ext += ".json";
        if (std::filesystem::exists(with_ext)) {
            resolved = with_ext;
        }
    }
    std::ifstream in(resolved);
    if (!in) {
        throw ParseError("cannot open network file '" + path.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_network(buffer.str());
}

std::string emit_network(const Network &net) {
    json doc;
    doc["base_mva"] = net.base_mva;
    doc["slack_bus"] = net.slack_bus;
    doc["buses"] = json::array();
    for (const auto &b : net.buses) {
        doc["buses"].push_back({{"id", b.id}, {"injection_mw", b.injection_mw}});
    }
    doc["lines"] = json::array();
    for (const auto &l : net.lines) {
        doc["lines"].push_back({{"from", l.from}, {"to", l.to}, {"reactance_pu", l.reactance_pu}});
    }
    return doc.dump(2);
}

SusceptanceMatrix build_b_matrix(const Network &net) {
    size_t n = net.buses.size();
    SusceptanceMatrix out{RealMatrix(n, n), {}};
    for (const auto &bus : net.buses) {
        out.bus_ids.push_back(bus.id);
    }
    for (const auto &line : net.lines) {
        size_t m = net.bus_index(line.from);
        size_t k = net.bus_index(line.to);
        double b = line.susceptance_pu();
        out.b(m, k) -= b;
        out.b(k, m) -= b;
        out.b(m, m) += b;
        out.b(k, k) += b;
    }
    return out;
}

double power_of_ten_floor(double x) {
    if (!(x > 0) || !std::isfinite(x)) {
        throw ValidationError("power_of_ten_floor: argument must be positive and finite");
    }
    double p = std::pow(10.0, std::floor(std::log10(x)));
    while (p > x) {
        p /= 10;
    }
    while (p * 10 <= x) {
        p *= 10;
    }
    return p;
}

DcSystem reduce_and_scale(const SusceptanceMatrix &b, const Network &net) {
    if (!net.has_bus(net.slack_bus)) {
        throw ValidationError("slack_bus: bus " + std::to_string(net.slack_bus) + " is not in the bus list");
    }
    if (b.bus_ids.size() != net.buses.size() || b.b.rows() != net.buses.size()) {
        throw ValidationError("reduce_and_scale: susceptance matrix does not match the network");
    }
    size_t slack = net.bus_index(net.slack_bus);
    size_t n = net.buses.size() - 1;

    DcSystem sys;
    sys.slack_bus = net.slack_bus;
    std::vector<size_t> keep;
    for (size_t k = 0; k < net.buses.size(); k++) {
        if (k != slack) {
            keep.push_back(k);
            sys.bus_order.push_back(net.buses[k].id);
            sys.rhs_p.push_back(net.buses[k].injection_mw / net.base_mva);
        }
    }
    RealMatrix reduced(n, n);
    double max_diag = 0;
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            reduced(r, c) = b.b(keep[r], keep[c]);
        }
        max_diag = std::max(max_diag, std::abs(reduced(r, r)));
    }
    if (max_diag == 0) {
        throw ValidationError("disconnected after slack removal");
    }
    sys.matrix_scale = power_of_ten_floor(max_diag);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            reduced(r, c) /= sys.matrix_scale;
        }
    }
    if (eigh(HermitianMatrix(reduced)).eigenvalues.front() <= 1e-12) {
        throw ValidationError("disconnected after slack removal");
    }
    sys.reduced_b = std::move(reduced);
    return sys;
}

DcSystem make_dc_system(const Network &net) {
    validate_network(net);
    return reduce_and_scale(build_b_matrix(net), net);
}

std::vector<double> solve_classical(const DcSystem &sys) {
    return solve_direct(sys.reduced_b, sys.rhs_p);
}

std::map<int, double> expand_angles(const DcSystem &sys, std::span<const double> reduced_angles) {
    if (reduced_angles.size() != sys.bus_order.size()) {
        throw ValidationError("expand_angles: angle vector length does not match the system");
    }
    std::map<int, double> out{{sys.slack_bus, 0.0}};
    for (size_t k = 0; k < reduced_angles.size(); k++) {
        out[sys.bus_order[k]] = reduced_angles[k];
    }
    return out;
}

FlowReport line_flows(const Network &net, const std::map<int, double> &scaled_angles, double matrix_scale) {
    FlowReport out;
    for (const auto &bus : net.buses) {
        auto it = scaled_angles.find(bus.id);
        if (it == scaled_angles.end()) {
            throw ValidationError("line_flows: no angle for bus " + std::to_string(bus.id));
        }
        out.angles_rad[bus.id] = it->second / matrix_scale;
    }
    for (const auto &line : net.lines) {
        double flow = line.susceptance_pu() * (out.angles_rad.at(line.from) - out.angles_rad.at(line.to));
        out.lines.push_back(LineFlow{line.from, line.to, flow, flow * net.base_mva});
    }
    return out;
}

double max_nodal_mismatch(const Network &net, const FlowReport &report) {
    std::map<int, double> outgoing;
    for (const auto &f : report.lines) {
        outgoing[f.from] += f.flow_pu;
        outgoing[f.to] -= f.flow_pu;
    }
    double worst = 0;
    for (const auto &bus : net.buses) {
        worst = std::max(worst, std::abs(outgoing[bus.id] - bus.injection_mw / net.base_mva));
    }
    return worst;
}

}  // namespace qpf
