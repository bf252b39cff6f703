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

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "qpf/error.h"
#include "test_util.h"

namespace qpf {
namespace {

using std::numbers::pi;

DcSystem fixture() {
    return make_dc_system(load_network(test_util::data_path("three_bus.json")));
}

DcSystem system_of(const RealMatrix &m, std::vector<double> rhs) {
    DcSystem s;
    s.reduced_b = m;
    s.rhs_p = std::move(rhs);
    s.slack_bus = 0;
    s.matrix_scale = 1;
    for (size_t k = 0; k < s.rhs_p.size(); k++) {
        s.bus_order.push_back(static_cast<int>(k + 1));
    }
    return s;
}

// Exact HHL prediction from the eigen-expansion of the right-hand side:
// P = sum_j |<u_j|b>|^2 c^2 / lambda_j^2 over the normalized rhs.
double expansion_success_probability(const RealMatrix &m, const std::vector<double> &rhs, double c) {
    auto eig = eigh(HermitianMatrix(m));
    double nb = norm2(rhs);
    double p = 0;
    for (size_t j = 0; j < eig.eigenvalues.size(); j++) {
        double overlap = 0;
        for (size_t r = 0; r < rhs.size(); r++) {
            overlap += eig.eigenvectors(r, j) * rhs[r] / nb;
        }
        p += overlap * overlap * c * c / (eig.eigenvalues[j] * eig.eigenvalues[j]);
    }
    return p;
}

TEST(ChooseTimeTest, LargestEigenvalueOnTopPhase) {
    std::vector<double> eigs{0.8, 1.2};
    EXPECT_NEAR(choose_time(eigs, 2), 2 * pi * 5 / 8, 1e-12);
    EXPECT_NEAR(choose_time(eigs, 3), 2 * pi * (7.0 / 8) / 1.2, 1e-12);
    std::vector<double> bad{0.0, 1.0};
    EXPECT_THROW(choose_time(bad, 2), ValidationError);
}

TEST(ChooseCTest, Rules) {
    std::vector<double> eigs{0.8, 1.2};
    EXPECT_NEAR(choose_c(eigs, 2 * pi * 5 / 8, 2), 0.625, 1e-12);
    // t / 2 pi = 2 exceeds lambda_min = 0.5, whose phase 0.5 * 2 = 1 wraps: not representable.
    std::vector<double> small{0.5, 1.0};
    EXPECT_NEAR(choose_c(small, 4 * pi, 2), 0.45, 1e-12);
    // t / 2 pi = 2, lambda_min = 0.375 has phase 0.75: representable in two bits.
    std::vector<double> dyadic{0.375, 0.45};
    EXPECT_NEAR(choose_c(dyadic, 4 * pi, 2), 0.375, 1e-12);
}

TEST(DefaultParamsTest, Fixture) {
    auto p = default_params(fixture());
    EXPECT_EQ(p.alpha, 2);
    EXPECT_NEAR(p.t, 3.926990816987, 1e-11);
    EXPECT_NEAR(p.c, 0.625, 1e-12);
    EXPECT_FALSE(p.sampling.has_value());
}

TEST(ValidateParamsTest, Rejects) {
    auto sys = fixture();
    auto good = default_params(sys);
    EXPECT_NO_THROW(validate_params(sys, good));
    auto p = good;
    p.alpha = 0;
    EXPECT_THROW(validate_params(sys, p), ValidationError);
    p = good;
    p.alpha = 9;
    EXPECT_THROW(validate_params(sys, p), ValidationError);
    p = good;
    p.t = 0;
    EXPECT_THROW(validate_params(sys, p), ValidationError);
    p = good;
    p.c = 0.81;
    EXPECT_THROW(validate_params(sys, p), ValidationError);
    p = good;
    p.c = -1;
    EXPECT_THROW(validate_params(sys, p), ValidationError);
    p = good;
    p.sampling = Sampling{0, 1};
    EXPECT_THROW(validate_params(sys, p), ValidationError);
}

TEST(PrepareRhsTest, NormalizesAndPads) {
    auto two = prepare_rhs(system_of(RealMatrix::identity(2), {3, 4}));
    EXPECT_NEAR(two.renorm, 5, 1e-12);
    EXPECT_NEAR(two.state[0].real(), 0.6, 1e-12);
    EXPECT_NEAR(two.state[1].real(), 0.8, 1e-12);

    auto three = prepare_rhs(system_of(RealMatrix::identity(3), {1, 2, 2}));
    EXPECT_EQ(three.state.n_qubits(), 2u);
    EXPECT_NEAR(three.state[2].real(), 2.0 / 3, 1e-12);
    EXPECT_EQ(three.state[3], complex(0));

    EXPECT_THROW(prepare_rhs(system_of(RealMatrix::identity(2), {0, 0})), ValidationError);
}

TEST(BetaQubitsTest, Sizes) {
    EXPECT_EQ(beta_qubits(1), 1u);
    EXPECT_EQ(beta_qubits(2), 1u);
    EXPECT_EQ(beta_qubits(3), 2u);
    EXPECT_EQ(beta_qubits(4), 2u);
    EXPECT_EQ(beta_qubits(5), 3u);
}

TEST(PaddedMatrixTest, PaddingBlockIsLambdaMax) {
    auto sys = system_of(make_real({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}), {1, 1, 1});
    auto m = padded_matrix(sys);
    EXPECT_EQ(m.dim(), 4u);
    EXPECT_NEAR(m.entries()(3, 3).real(), 5, 1e-12);
    EXPECT_NEAR(std::abs(m.entries()(0, 3)), 0, 1e-15);
}

TEST(BuildCircuitTest, Widths) {
    auto sys = fixture();
    auto p = default_params(sys);
    EXPECT_EQ(build_circuit(sys, p).n_qubits(), 4u);
    p.alpha = 1;
    p.c = 0.5;
    p.t = choose_time(std::vector<double>{0.8, 1.2}, 1);
    EXPECT_EQ(build_circuit(sys, p).n_qubits(), 3u);

    auto four = system_of(RealMatrix::identity(4), {1, 0, 0, 0});
    HhlParams q{3, pi, 0.5, std::nullopt};
    EXPECT_EQ(build_circuit(four, q).n_qubits(), 6u);
}

TEST(BuildCircuitTest, RegisterBudget) {
    size_t n = 17;
    auto sys = system_of(RealMatrix::identity(n), std::vector<double>(n, 1.0));
    HhlParams p{2, pi, 0.5, std::nullopt};
    EXPECT_THROW(build_circuit(sys, p), ValidationError);

    auto wide = system_of(RealMatrix::identity(2), {1, 0});
    HhlParams q{8, pi, 0.5, std::nullopt};
    EXPECT_NO_THROW(build_circuit(wide, q));
}

TEST(EigenphaseHistogramTest, Fixture) {
    auto sys = fixture();
    auto h = eigenphase_histogram(sys, default_params(sys));
    // Phases 0.8 t / 2 pi = 1/2 and 1.2 t / 2 pi = 3/4 on two bits, weighted by the squared
    // overlaps of (0.6, -0.8) with (1, 1) / sqrt 2 and (1, -1) / sqrt 2.
    double w_low = std::pow((0.6 - 0.8) / std::sqrt(2.0), 2);
    double w_high = std::pow((0.6 + 0.8) / std::sqrt(2.0), 2);
    ASSERT_EQ(h.size(), 2u);
    EXPECT_NEAR(h.at("10"), w_low, 1e-9);
    EXPECT_NEAR(h.at("11"), w_high, 1e-9);
    EXPECT_NEAR(w_low, 0.02, 1e-12);
    EXPECT_NEAR(w_high, 0.98, 1e-12);
}

TEST(BitstringTest, MostSignificantFirst) {
    EXPECT_EQ(bitstring(2, 2), "10");
    EXPECT_EQ(bitstring(1, 3), "001");
    EXPECT_EQ(bitstring(0, 1), "0");
}

TEST(RunTest, FixtureExact) {
    auto sys = fixture();
    auto p = default_params(sys);
    auto out = run(sys, p);
    auto direct = solve_direct(sys.reduced_b, sys.rhs_p);

    double norm_sq = direct[0] * direct[0] + direct[1] * direct[1];
    double expected_p = expansion_success_probability(sys.reduced_b, sys.rhs_p, p.c);
    EXPECT_NEAR(out.success_probability, expected_p, 1e-12);
    EXPECT_NEAR(out.success_probability, 0.27805, 1e-6);
    EXPECT_NEAR(out.norm_theta * out.norm_theta, norm_sq, 1e-12);
    EXPECT_NEAR(norm_sq, 0.656 / 0.9216, 1e-12);
    EXPECT_GE(out.fidelity, 1 - 1e-12);
    ASSERT_EQ(out.solution.size(), 2u);
    EXPECT_NEAR(out.solution[0], direct[0], 1e-9);
    EXPECT_NEAR(out.solution[1], direct[1], 1e-9);
    EXPECT_LT(out.alpha_leakage, 1e-9);
    EXPECT_EQ(out.sign_source, "statevector");
    EXPECT_EQ(out.resources.width, 4u);
}

TEST(RunTest, FixtureResourcesStable) {
    auto sys = fixture();
    auto a = run(sys, default_params(sys)).resources;
    auto b = run(sys, default_params(sys)).resources;
    EXPECT_EQ(a, b);
    EXPECT_GT(a.depth, 0u);
    EXPECT_GT(a.two_qubit_gates, 0u);
}

TEST(RunTest, IdentitySystem) {
    auto sys = system_of(RealMatrix::identity(2), {0.3, -0.4});
    HhlParams p{2, 2 * pi * 0.75, 0.5, std::nullopt};
    auto out = run(sys, p);
    EXPECT_NEAR(out.solution[0], 0.3, 1e-10);
    EXPECT_NEAR(out.solution[1], -0.4, 1e-10);
    EXPECT_NEAR(out.success_probability, 0.25, 1e-12);
}

TEST(RunTest, ThreeUnknownsArePadded) {
    auto sys = system_of(make_real({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}), {1, 0, -1});
    auto out = run(sys, default_params(sys, 4));
    auto direct = solve_direct(sys.reduced_b, sys.rhs_p);
    ASSERT_EQ(out.solution.size(), 3u);
    EXPECT_GT(out.fidelity, 0.9);
    EXPECT_EQ(out.classical_solution, direct);
}

// Random SPD systems whose eigenphases at t = 2 pi are multiples of 2^-alpha.
struct DyadicCase {
    DcSystem sys;
    HhlParams params;
};

DyadicCase dyadic_case(size_t n, int alpha, std::mt19937_64 &rng) {
    int top = (1 << alpha) - 1;
    std::vector<double> eigs;
    std::uniform_int_distribution<int> pick(1, top);
    for (size_t k = 0; k < n; k++) {
        eigs.push_back(pick(rng) / std::ldexp(1.0, alpha));
    }
    auto q = test_util::random_orthogonal(n, rng);
    std::normal_distribution<double> d;
    std::vector<double> rhs(n);
    for (double &x : rhs) {
        x = d(rng);
    }
    double lmin = *std::min_element(eigs.begin(), eigs.end());
    return {system_of(test_util::with_spectrum(q, eigs), rhs), HhlParams{alpha, 2 * pi, lmin, std::nullopt}};
}

void check_against_oracle(const DyadicCase &c) {
    auto out = run(c.sys, c.params);
    auto direct = solve_direct(c.sys.reduced_b, c.sys.rhs_p);
    double norm_sq = 0;
    for (double x : direct) {
        norm_sq += x * x;
    }
    double nb = norm2(c.sys.rhs_p);
    EXPECT_GE(out.fidelity, 1 - 1e-9);
    for (size_t k = 0; k < direct.size(); k++) {
        EXPECT_NEAR(out.solution[k], direct[k], 1e-8);
    }
    EXPECT_NEAR(out.success_probability, c.params.c * c.params.c * norm_sq / (nb * nb), 1e-9);
    EXPECT_LT(out.alpha_leakage, 1e-9);
}

TEST(OracleEquivalenceTest, RandomTwoByTwo) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; trial++) {
        int alpha = 2 + trial % 3;
        check_against_oracle(dyadic_case(2, alpha, rng));
    }
}

TEST(OracleEquivalenceTest, RandomFourByFour) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; trial++) {
        check_against_oracle(dyadic_case(4, 3, rng));
    }
}

TEST(UncomputeTest, NonDyadicPhasesLeak) {
    auto sys = system_of(make_real({{0.4, 0.05}, {0.05, 0.4}}), {0.6, -0.8});
    HhlParams p{2, 2 * pi, 0.2, std::nullopt};
    EXPECT_GT(run(sys, p).alpha_leakage, 1e-3);
}

// Eigenvalues {lambda_min, 0.75} at t = 2 pi: the larger phase is exact on every register,
// the smaller is not a dyadic fraction. c = 2^-8 keeps every rotation unclamped, so the
// fidelity depends on alpha only through the phase estimate.
TEST(MonotoneRefinementTest, SmallNonDyadicEigenvalue) {
    for (double lmin : {0.02, 0.03, 0.04, 0.06}) {
        double mid = (lmin + 0.75) / 2;
        double half = (0.75 - lmin) / 2;
        auto sys = system_of(make_real({{mid, half}, {half, mid}}), {0.6, -0.8});
        double prev = 0;
        for (int alpha = 1; alpha <= 6; alpha++) {
            HhlParams p{alpha, 2 * pi, std::ldexp(1.0, -8), std::nullopt};
            double f = run(sys, p).fidelity;
            EXPECT_GE(f, prev - 1e-12) << "lambda_min=" << lmin << " alpha=" << alpha;
            prev = f;
        }
        EXPECT_LT(prev, 1.0);
    }
}

TEST(SampledRunTest, WithinBinomialBand) {
    auto sys = fixture();
    auto exact = run(sys, default_params(sys));
    auto p = default_params(sys);
    p.sampling = Sampling{100000, 7};
    auto out = run(sys, p);
    double sigma = std::sqrt(exact.success_probability * (1 - exact.success_probability) / 1e5);
    EXPECT_NEAR(out.success_probability, exact.success_probability, 4 * sigma);
    EXPECT_EQ(out.sign_source, "oracle-assisted");
    EXPECT_NEAR(out.solution[0], exact.solution[0], 0.02);
    EXPECT_NEAR(out.solution[1], exact.solution[1], 0.02);
    EXPECT_GT(out.fidelity, 0.99);
}

TEST(SampledRunTest, SeedReproducible) {
    auto sys = fixture();
    auto p = default_params(sys);
    p.sampling = Sampling{5000, 42};
    auto a = run(sys, p);
    auto b = run(sys, p);
    EXPECT_EQ(a.solution, b.solution);
    EXPECT_EQ(a.success_probability, b.success_probability);
    p.sampling->seed = 43;
    EXPECT_NE(run(sys, p).success_probability, a.success_probability);
}

TEST(ComplexityTest, Formulas) {
    auto e = estimate_complexity(100, 3, 10, 0.01);
    EXPECT_NEAR(e.classical_cost, 100 * 3 * 10 * std::log2(100.0), 1e-9);
    EXPECT_NEAR(e.quantum_cost, std::log2(100.0) * 9 * 100 / 0.01, 1e-6);
    EXPECT_THROW(estimate_complexity(100, 3, 10, 1.0), ValidationError);
    EXPECT_THROW(estimate_complexity(100, 3, 0.5, 0.1), ValidationError);
    EXPECT_THROW(estimate_complexity(0, 3, 2, 0.1), ValidationError);
}

TEST(ComplexityTest, GrowthRatios) {
    for (double n : {2.0, 30.0, 1000.0}) {
        auto a = estimate_complexity(n, 4, 7, 0.05);
        auto b = estimate_complexity(1e4 * n, 4, 7, 0.05);
        EXPECT_NEAR(b.classical_cost / a.classical_cost, 1e4, 1e-8);
        EXPECT_NEAR(b.quantum_cost / a.quantum_cost, std::log(1e4 * n) / std::log(n), 1e-12);
    }
}

TEST(ComplexityTest, FromSystem) {
    auto e = estimate_complexity(fixture(), 0.01);
    EXPECT_EQ(e.n, 2);
    EXPECT_EQ(e.s, 2);
    EXPECT_NEAR(e.k, 1.5, 1e-10);
}

}  // namespace
}  // namespace qpf
