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

#include "qpf/cli.h"

#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "qpf/error.h"
#include "qpf/report.h"

namespace qpf {

namespace {

struct RunConfig {
    std::string command;
    std::string input_path;
    int alpha = 2;
    std::optional<double> t_override;
    std::optional<double> c_override;
    std::optional<uint64_t> shots;
    uint64_t seed = 1;
    std::string output_format = "table";
    std::vector<int> line;
    std::optional<double> n, s, k;
    double eps = 0.01;
    std::optional<double> growth;
};

/// Flag-level failure that is reported with exit code 2.
class FlagError : public Error {
   public:
    using Error::Error;
};

void add_hhl_options(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--alpha", cfg.alpha, "eigenvalue register qubits (1-8)")->check(CLI::Range(1, 8));
    sub->add_option("--t", cfg.t_override, "evolution time override (default: largest eigenvalue on top phase)");
    sub->add_option("--c", cfg.c_override, "rotation constant override");
    sub->add_option("--shots", cfg.shots, "sample this many shots instead of exact amplitudes")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "RNG seed for sampled mode");
}

HhlParams make_params(const DcSystem &sys, const RunConfig &cfg) {
    HhlParams p;
    try {
        p = default_params(sys, cfg.alpha);
        if (cfg.t_override) {
            p.t = *cfg.t_override;
            if (!cfg.c_override) {
                std::vector<double> eigs = eigh(HermitianMatrix(sys.reduced_b)).eigenvalues;
                p.c = choose_c(eigs, p.t, p.alpha);
            }
        }
        if (cfg.c_override) {
            p.c = *cfg.c_override;
        }
        if (cfg.shots) {
            p.sampling = Sampling{*cfg.shots, cfg.seed};
        }
        validate_params(sys, p);
    } catch (const ValidationError &e) {
        throw FlagError(std::string("invalid HHL parameters: ") + e.what());
    }
    return p;
}

Network load(const std::string &path) {
    try {
        return load_network(path);
    } catch (const ParseError &) {
        throw;
    } catch (const ValidationError &e) {
        throw ParseError(path + ": " + e.what());
    }
}

template <typename Report>
void emit(const Report &r, const RunConfig &cfg, std::ostream &out) {
    if (cfg.output_format == "json") {
        out << nlohmann::json(r).dump(2) << "\n";
    } else {
        out << report::to_table(r);
    }
}

void dispatch(const RunConfig &cfg, std::ostream &out) {
    if (cfg.command == "complexity") {
        ComplexityEstimate est;
        if (!cfg.input_path.empty()) {
            DcSystem sys = make_dc_system(load(cfg.input_path));
            try {
                est = estimate_complexity(sys, cfg.eps);
            } catch (const ValidationError &e) {
                throw FlagError(e.what());
            }
        } else {
            if (!cfg.n || !cfg.s || !cfg.k) {
                throw FlagError("complexity needs either a network file or all of --n, --s, --k");
            }
            try {
                est = estimate_complexity(*cfg.n, *cfg.s, *cfg.k, cfg.eps);
            } catch (const ValidationError &e) {
                throw FlagError(e.what());
            }
        }
        emit(report::make_complexity_report(est, cfg.growth), cfg, out);
        return;
    }

    Network net = load(cfg.input_path);
    if (cfg.command == "solve-classical") {
        emit(report::make_classical_report(net), cfg, out);
        return;
    }
    HhlParams params = make_params(make_dc_system(net), cfg);
    if (cfg.command == "solve-hhl") {
        emit(report::make_hhl_report(net, params), cfg, out);
    } else if (cfg.command == "flow") {
        if (!net.find_line(cfg.line[0], cfg.line[1])) {
            throw FlagError("--line " + std::to_string(cfg.line[0]) + " " + std::to_string(cfg.line[1]) +
                            ": no such line in the network");
        }
        emit(report::make_flow_report(net, params, cfg.line[0], cfg.line[1]), cfg, out);
    } else if (cfg.command == "resources") {
        emit(report::make_resources_report(net, params), cfg, out);
    } else if (cfg.command == "compare") {
        emit(report::make_compare_report(net, params), cfg, out);
    }
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    CLI::App app{"DC power flow via classical solve and simulated HHL", "qpf"};
    app.require_subcommand(1);
    auto format_option = [&](CLI::App *sub) {
        sub->add_option("--format", cfg.output_format, "table or json")
            ->check(CLI::IsMember({"table", "json"}));
    };

    auto *classical = app.add_subcommand("solve-classical", "direct solve of the DC power flow equations");
    classical->add_option("input", cfg.input_path, "network file")->required();
    format_option(classical);

    auto *hhl = app.add_subcommand("solve-hhl", "simulate HHL on the slack-reduced system");
    hhl->add_option("input", cfg.input_path, "network file")->required();
    add_hhl_options(hhl, cfg);
    format_option(hhl);

    auto *flow = app.add_subcommand("flow", "estimate one line flow from the HHL readout");
    flow->add_option("input", cfg.input_path, "network file")->required();
    flow->add_option("--line", cfg.line, "from and to bus ids")->required()->expected(2);
    add_hhl_options(flow, cfg);
    format_option(flow);

    auto *resources = app.add_subcommand("resources", "circuit width, depth and two-qubit gate count");
    resources->add_option("input", cfg.input_path, "network file")->required();
    add_hhl_options(resources, cfg);
    format_option(resources);

    auto *complexity = app.add_subcommand("complexity", "asymptotic classical vs quantum cost");
    auto *complexity_input = complexity->add_option("input", cfg.input_path, "network file (or give --n, --s, --k)");
    complexity->add_option("--n", cfg.n, "system dimension")->excludes(complexity_input);
    complexity->add_option("--s", cfg.s, "sparsity (max nonzeros per row)")->excludes(complexity_input);
    complexity->add_option("--k", cfg.k, "condition number")->excludes(complexity_input);
    complexity->add_option("--eps", cfg.eps, "target accuracy");
    complexity->add_option("--growth", cfg.growth, "also report costs with N multiplied by this factor")
        ->check(CLI::PositiveNumber);
    format_option(complexity);

    auto *compare = app.add_subcommand("compare", "classical and quantum solutions side by side");
    compare->add_option("input", cfg.input_path, "network file")->required();
    add_hhl_options(compare, cfg);
    format_option(compare);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadFlags;
    }
    for (auto *sub : app.get_subcommands()) {
        cfg.command = sub->get_name();
    }

    try {
        dispatch(cfg, out);
    } catch (const FlagError &e) {
        err << "error: " << e.what() << "\n";
        return kExitBadFlags;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitFileError;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitSolverError;
    }
    return kExitOk;
}

}  // namespace qpf
