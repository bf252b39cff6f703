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

#include "qpf/hhl.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qpf/error.h"

namespace qpf {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr int kMaxAlpha = 8;
constexpr size_t kMaxDim = 16;

void require_positive(std::span<const double> eigenvalues) {
    if (eigenvalues.empty()) {
        throw ValidationError("eigenvalue list is empty");
    }
    for (double l : eigenvalues) {
        if (!(l > 0)) {
            std::ostringstream ss;
            ss << "non-positive eigenvalue " << l << ": HHL here requires a positive definite matrix";
            throw ValidationError(ss.str());
        }
    }
}

void require_alpha(int alpha) {
    if (alpha < 1 || alpha > kMaxAlpha) {
        throw ValidationError("alpha must be between 1 and " + std::to_string(kMaxAlpha));
    }
}

struct Layout {
    QubitRange beta;
    QubitRange alpha;
    size_t ancilla;
};

Layout layout_of(const Circuit &c) {
    return {c.reg("beta").range, c.reg("alpha").range, c.reg("ancilla").range.first};
}

std::vector<double> system_eigenvalues(const DcSystem &sys) {
    return eigh(HermitianMatrix(sys.reduced_b)).eigenvalues;
}

/// State prep and phase estimation. Returns the circuit with registers declared.
Circuit qpe_circuit(const DcSystem &sys, const HhlParams &params, const HermitianMatrix &b) {
    size_t nb = beta_qubits(sys.dim());
    size_t na = static_cast<size_t>(params.alpha);
    if (nb + na + 1 > kMaxQubits) {
        throw ValidationError("dimension exceeds register budget: " + std::to_string(nb + na + 1) + " qubits needed");
    }
    Circuit c(nb + na + 1);
    c.add_register("beta", {0, nb});
    c.add_register("alpha", {nb, na});
    c.add_register("ancilla", {nb + na, 1});

    PreparedRhs rhs = prepare_rhs(sys);
    std::vector<double> amps;
    for (const auto &a : rhs.state.amplitudes()) {
        amps.push_back(a.real());
    }
    c.add(gates::StatePrep{{0, nb}, amps});
    for (size_t j = 0; j < na; j++) {
        c.add(gates::H{nb + j});
    }
    for (size_t j = 0; j < na; j++) {
        uint64_t power = uint64_t{1} << j;
        c.add(gates::ControlledUnitary{nb + j, {0, nb}, expm_hermitian(b, params.t * static_cast<double>(power)), power});
    }
    c.add(gates::InverseQft{{nb, na}});
    return c;
}

void append_rotation(Circuit &c, const HhlParams &params) {
    Layout l = layout_of(c);
    std::vector<size_t> controls;
    for (size_t q = l.alpha.first; q < l.alpha.end(); q++) {
        controls.push_back(q);
    }
    uint64_t levels = uint64_t{1} << l.alpha.count;
    for (uint64_t v = 1; v < levels; v++) {
        double lambda = static_cast<double>(v) * kTwoPi / (params.t * static_cast<double>(levels));
        double ratio = std::min(1.0, params.c / lambda);
        std::vector<size_t> flips;
        for (size_t bit = 0; bit < l.alpha.count; bit++) {
            if (!((v >> bit) & 1)) {
                flips.push_back(l.alpha.first + bit);
            }
        }
        for (size_t q : flips) {
            c.add(gates::X{q});
        }
        c.add(gates::ControlledRy{controls, l.ancilla, 2 * std::asin(ratio)});
        for (size_t q : flips) {
            c.add(gates::X{q});
        }
    }
}

void append_uncompute(Circuit &c, size_t qpe_ops) {
    // Inverse of every QPE op except the state preparation (op 0), in reverse order.
    std::vector<GateOp> tail;
    for (size_t k = qpe_ops; k-- > 1;) {
        tail.push_back(inverse(c.ops()[k]));
    }
    for (auto &op : tail) {
        c.add(std::move(op));
    }
}

struct Execution {
    Circuit circuit;
    StateVector final_state;
    std::vector<double> eigenvalues;
    double renorm;
};

Execution execute(const DcSystem &sys, const HhlParams &params) {
    validate_params(sys, params);
    Circuit c = build_circuit(sys, params);
    StateVector out = c.run();
    return {std::move(c), std::move(out), system_eigenvalues(sys), prepare_rhs(sys).renorm};
}

/// ancilla = 1 and alpha = 0 amplitudes of the beta register, unnormalized.
std::vector<complex> solution_sector(const StateVector &state, const Layout &l) {
    std::vector<complex> out(size_t{1} << l.beta.count);
    uint64_t anc = uint64_t{1} << l.ancilla;
    for (size_t i = 0; i < out.size(); i++) {
        out[i] = state[anc | (uint64_t{i} << l.beta.first)];
    }
    return out;
}

double fidelity_of(std::span<const complex> psi, std::span<const double> classical) {
    double cn = norm2(classical);
    double pn = norm2(psi);
    complex overlap = 0;
    for (size_t i = 0; i < classical.size(); i++) {
        overlap += classical[i] * psi[i];
    }
    double f = std::norm(overlap) / (cn * cn * pn * pn);
    return std::clamp(f, 0.0, 1.0);
}

}  // namespace

std::string bitstring(uint64_t value, size_t width) {
    std::string s(width, '0');
    for (size_t b = 0; b < width; b++) {
        if ((value >> b) & 1) {
            s[width - 1 - b] = '1';
        }
    }
    return s;
}

double choose_time(std::span<const double> eigenvalues, int alpha) {
    require_positive(eigenvalues);
    require_alpha(alpha);
    double levels = std::ldexp(1.0, alpha);
    double lambda_max = *std::max_element(eigenvalues.begin(), eigenvalues.end());
    return kTwoPi * ((levels - 1) / levels) / lambda_max;
}

double choose_c(std::span<const double> eigenvalues, double t, int alpha) {
    require_positive(eigenvalues);
    require_alpha(alpha);
    if (!(t > 0)) {
        throw ValidationError("evolution time t must be positive");
    }
    double lambda_min = *std::min_element(eigenvalues.begin(), eigenvalues.end());
    double preferred = t / kTwoPi;
    if (preferred <= lambda_min) {
        return preferred;
    }
    double steps = lambda_min * t / kTwoPi * std::ldexp(1.0, alpha);
    double nearest = std::round(steps);
    if (std::abs(steps - nearest) < 1e-9 && nearest >= 1 && nearest < std::ldexp(1.0, alpha)) {
        return lambda_min;
    }
    return 0.9 * lambda_min;
}

HhlParams default_params(const DcSystem &sys, int alpha) {
    std::vector<double> eigs = system_eigenvalues(sys);
    HhlParams p;
    p.alpha = alpha;
    p.t = choose_time(eigs, alpha);
    p.c = choose_c(eigs, p.t, alpha);
    return p;
}

void validate_params(const DcSystem &sys, const HhlParams &params) {
    require_alpha(params.alpha);
    if (!(params.t > 0) || !std::isfinite(params.t)) {
        throw ValidationError("evolution time t must be positive and finite");
    }
    std::vector<double> eigs = system_eigenvalues(sys);
    require_positive(eigs);
    double lambda_min = eigs.front();
    if (!(params.c > 0) || params.c > lambda_min * (1 + 1e-12)) {
        std::ostringstream ss;
        ss << "rotation constant C=" << params.c << " must lie in (0, " << lambda_min << "]";
        throw ValidationError(ss.str());
    }
    if (params.sampling && params.sampling->shots == 0) {
        throw ValidationError("shots must be at least 1");
    }
}

size_t beta_qubits(size_t dim) {
    if (dim == 0 || dim > kMaxDim) {
        throw ValidationError("dimension exceeds register budget: system dimension " + std::to_string(dim) +
                              " (supported 1.." + std::to_string(kMaxDim) + ")");
    }
    size_t n = 1;
    while ((size_t{1} << n) < dim) {
        n++;
    }
    return n;
}

PreparedRhs prepare_rhs(const DcSystem &sys) {
    size_t nb = beta_qubits(sys.dim());
    double renorm = norm2(sys.rhs_p);
    if (!(renorm > 0)) {
        throw ValidationError("right-hand side is zero: nothing to encode");
    }
    std::vector<complex> amps(size_t{1} << nb, complex{0, 0});
    for (size_t i = 0; i < sys.dim(); i++) {
        amps[i] = sys.rhs_p[i] / renorm;
    }
    return {StateVector::from_amplitudes(std::move(amps)), renorm};
}

HermitianMatrix padded_matrix(const DcSystem &sys) {
    size_t n = sys.dim();
    size_t padded = size_t{1} << beta_qubits(n);
    HermitianMatrix b(sys.reduced_b);
    if (padded == n) {
        return b;
    }
    double lambda_max = eigh(b).eigenvalues.back();
    RealMatrix out(padded, padded);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            out(r, c) = sys.reduced_b(r, c);
        }
    }
    for (size_t k = n; k < padded; k++) {
        out(k, k) = lambda_max;
    }
    return HermitianMatrix(out);
}

Circuit build_circuit(const DcSystem &sys, const HhlParams &params) {
    require_alpha(params.alpha);
    Circuit c = qpe_circuit(sys, params, padded_matrix(sys));
    size_t qpe_ops = c.ops().size();
    append_rotation(c, params);
    append_uncompute(c, qpe_ops);
    return c;
}

std::map<std::string, double> eigenphase_histogram(const DcSystem &sys, const HhlParams &params) {
    validate_params(sys, params);
    Circuit c = qpe_circuit(sys, params, padded_matrix(sys));
    StateVector state = c.run();
    Layout l = layout_of(c);
    std::vector<double> probs = register_probabilities(state, l.alpha);
    std::map<std::string, double> out;
    for (uint64_t v = 0; v < probs.size(); v++) {
        if (probs[v] > 1e-12) {
            out[bitstring(v, l.alpha.count)] = probs[v];
        }
    }
    return out;
}

Readout readout_state(const DcSystem &sys, const HhlParams &params) {
    Execution ex = execute(sys, params);
    Layout l = layout_of(ex.circuit);
    double p = probability_of(ex.final_state, l.ancilla, 1);
    std::vector<complex> sector = solution_sector(ex.final_state, l);
    double sector_norm = norm2(sector);
    if (p <= 1e-12 || sector_norm <= 1e-12) {
        throw PostselectionError("post-selection impossible: ancilla=1 branch has probability " + std::to_string(p));
    }
    for (auto &a : sector) {
        a /= sector_norm;
    }
    return {StateVector::from_amplitudes(std::move(sector)), p, std::sqrt(p) / params.c * ex.renorm};
}

HhlOutcome run(const DcSystem &sys, const HhlParams &params) {
    Execution ex = execute(sys, params);
    Layout l = layout_of(ex.circuit);
    const StateVector &state = ex.final_state;
    size_t dim = sys.dim();

    HhlOutcome out;
    out.params = params;
    out.classical_solution = solve_classical(sys);
    out.resources = count_resources(ex.circuit);
    out.eigenphase_histogram = eigenphase_histogram(sys, params);

    uint64_t alpha_mask = ((uint64_t{1} << l.alpha.count) - 1) << l.alpha.first;
    for (uint64_t k = 0; k < state.size(); k++) {
        if (k & alpha_mask) {
            out.alpha_leakage = std::max(out.alpha_leakage, std::abs(state[k]));
        }
    }

    double exact_p = probability_of(state, l.ancilla, 1);
    std::vector<complex> psi = solution_sector(state, l);
    double psi_norm = norm2(psi);
    if (exact_p <= 1e-12 || psi_norm <= 1e-12) {
        throw PostselectionError("post-selection impossible: ancilla=1 branch has probability " +
                                 std::to_string(exact_p));
    }
    for (auto &a : psi) {
        a /= psi_norm;
    }
    for (size_t i = dim; i < psi.size(); i++) {
        if (std::abs(psi[i]) > 1e-9) {
            throw Error("padded solution amplitude " + std::to_string(i) + " is nonzero");
        }
    }

    double p = exact_p;
    if (params.sampling) {
        Histogram h = sample(state, params.sampling->shots, params.sampling->seed);
        uint64_t anc = uint64_t{1} << l.ancilla;
        uint64_t beta_mask = (uint64_t{1} << l.beta.count) - 1;
        uint64_t ones = 0;
        std::vector<double> counts(psi.size(), 0.0);
        for (const auto &[index, n] : h) {
            if (index & anc) {
                ones += n;
                if (!(index & alpha_mask)) {
                    counts[(index >> l.beta.first) & beta_mask] += static_cast<double>(n);
                }
            }
        }
        double kept = 0;
        for (double c : counts) {
            kept += c;
        }
        if (ones == 0 || kept == 0) {
            throw PostselectionError("post-selection impossible: no shot measured ancilla=1");
        }
        p = static_cast<double>(ones) / static_cast<double>(params.sampling->shots);
        for (size_t i = 0; i < psi.size(); i++) {
            double sign = psi[i].real() < 0 ? -1 : 1;
            psi[i] = sign * std::sqrt(counts[i] / kept);
        }
        out.sign_source = "oracle-assisted";
    } else {
        out.sign_source = "statevector";
    }

    out.success_probability = p;
    out.norm_theta = std::sqrt(p) / params.c * ex.renorm;
    out.fidelity = fidelity_of(std::span<const complex>(psi).first(dim), out.classical_solution);
    out.solution.resize(dim);
    for (size_t i = 0; i < dim; i++) {
        out.solution[i] = psi[i].real() * out.norm_theta;
    }
    return out;
}

ComplexityEstimate estimate_complexity(double n, double s, double k, double eps) {
    if (!(n > 0) || !(s > 0) || !(k >= 1) || !(eps > 0) || !(eps < 1)) {
        throw ValidationError("complexity inputs must satisfy n > 0, s > 0, k >= 1, 0 < eps < 1");
    }
    ComplexityEstimate e{n, s, k, eps, 0, 0};
    e.classical_cost = n * s * k * std::log2(1 / eps);
    e.quantum_cost = std::log2(n) * s * s * k * k / eps;
    return e;
}

ComplexityEstimate estimate_complexity(const DcSystem &sys, double eps) {
    std::vector<double> eigs = system_eigenvalues(sys);
    require_positive(eigs);
    double sparsity = 0;
    for (size_t r = 0; r < sys.dim(); r++) {
        double nnz = 0;
        for (size_t c = 0; c < sys.dim(); c++) {
            if (sys.reduced_b(r, c) != 0) {
                nnz++;
            }
        }
        sparsity = std::max(sparsity, nnz);
    }
    return estimate_complexity(static_cast<double>(sys.dim()), sparsity, eigs.back() / eigs.front(), eps);
}

}  // namespace qpf
