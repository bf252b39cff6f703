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
#include <random>

#include "gtest/gtest.h"
#include "qpf/error.h"
#include "test_util.h"

namespace qpf {
namespace {

Network fixture_net() {
    return load_network(test_util::data_path("three_bus.json"));
}

StateVector real_state(std::vector<double> v) {
    double n = norm2(v);
    std::vector<complex> a;
    for (double x : v) {
        a.emplace_back(x / n);
    }
    return StateVector::from_amplitudes(a);
}

TEST(DeltaEstimateTest, Fixture) {
    auto net = fixture_net();
    auto sys = make_dc_system(net);
    auto r = readout_state(sys, default_params(sys));
    auto est = estimate_delta_sq(r.beta_state, r.norm_theta * r.norm_theta);
    auto theta = solve_classical(sys);
    double direct = std::pow(theta[0] - theta[1], 2);
    EXPECT_NEAR(est.delta_theta_sq, direct, 1e-9);
    EXPECT_NEAR(est.delta_theta_sq, 1.3609, 2e-3);
    EXPECT_FALSE(est.shots.has_value());
}

TEST(DeltaEstimateTest, HadamardIdentityOnRandomStates) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> d;
    for (int trial = 0; trial < 100; trial++) {
        std::vector<double> theta{d(rng), d(rng)};
        double norm_sq = theta[0] * theta[0] + theta[1] * theta[1];
        auto est = estimate_delta_sq(real_state(theta), norm_sq);
        EXPECT_NEAR(est.delta_theta_sq, std::pow(theta[0] - theta[1], 2), 1e-10);
    }
}

TEST(DeltaEstimateTest, EdgeStates) {
    EXPECT_NEAR(estimate_delta_sq(real_state({1, 1}), 1).delta_theta_sq, 0, 1e-15);
    EXPECT_NEAR(estimate_delta_sq(real_state({1, -1}), 1).delta_theta_sq, 2, 1e-12);
}

TEST(DeltaEstimateTest, RejectsWiderReadout) {
    StateVector two(2);
    EXPECT_THROW(estimate_delta_sq(two, 1), ValidationError);
    EXPECT_THROW(estimate_delta_sq(real_state({1, 0}), -1), ValidationError);
}

TEST(SlackDeltaTest, Fixture) {
    auto net = fixture_net();
    auto sys = make_dc_system(net);
    auto theta = solve_classical(sys);
    auto r = readout_state(sys, default_params(sys));
    auto est = estimate_slack_delta_sq(r.beta_state, 0, r.norm_theta * r.norm_theta);
    EXPECT_NEAR(est.delta_theta_sq, theta[0] * theta[0], 1e-9);
    EXPECT_NEAR(est.delta_theta_sq, 0.21, 1e-3);
}

TEST(LineFlowTest, FixtureBetweenUnknowns) {
    auto net = fixture_net();
    auto sys = make_dc_system(net);
    auto f = measure_line_flow(net, sys, default_params(sys), 2, 3);
    auto classical = line_flows(net, expand_angles(sys, solve_classical(sys)), sys.matrix_scale);
    const LineFlow *ref = nullptr;
    for (const auto &l : classical.lines) {
        if (l.from == 2 && l.to == 3) {
            ref = &l;
        }
    }
    ASSERT_NE(ref, nullptr);
    EXPECT_NEAR(std::abs(f.flow_mw), 23.33, 0.05);
    EXPECT_NEAR(f.flow_mw, ref->flow_mw, 1e-6);
    EXPECT_NEAR(f.flow_pu, ref->flow_pu, 1e-8);
    EXPECT_TRUE(f.sign_oracle_assisted);
    EXPECT_FALSE(f.shots.has_value());
}

TEST(LineFlowTest, FixtureSlackLine) {
    auto net = fixture_net();
    auto sys = make_dc_system(net);
    auto f = measure_line_flow(net, sys, default_params(sys), 1, 2);
    // 80 pu susceptance times the 0.4583e-2 rad angle of bus 2, flowing from the slack.
    EXPECT_NEAR(f.flow_pu, -80 * (0.44 / 0.96) / 100, 1e-8);
    EXPECT_NEAR(std::abs(f.flow_pu), 0.3667, 1e-4);
}

TEST(LineFlowTest, UnknownLine) {
    auto net = fixture_net();
    auto sys = make_dc_system(net);
    EXPECT_THROW(measure_line_flow(net, sys, default_params(sys), 2, 4), ValidationError);
    DeltaEstimate est{1.0, 0.5, std::nullopt};
    EXPECT_THROW(to_line_flow(est, 7, 8, net, 100, 1), ValidationError);
}

TEST(LineFlowTest, PairwiseNeedsTwoUnknowns) {
    Network net;
    net.base_mva = 100;
    net.slack_bus = 1;
    net.buses = {{1, 30}, {2, 10}, {3, -20}, {4, -20}};
    net.lines = {{1, 2, 0.1}, {2, 3, 0.1}, {3, 4, 0.1}, {1, 4, 0.1}};
    auto sys = make_dc_system(net);
    EXPECT_THROW(measure_line_flow(net, sys, default_params(sys, 3), 2, 3), ValidationError);
    EXPECT_NO_THROW(measure_line_flow(net, sys, default_params(sys, 3), 1, 2));
}

TEST(LineFlowTest, SampledWithinBinomialBand) {
    auto net = fixture_net();
    auto sys = make_dc_system(net);
    auto exact = measure_line_flow(net, sys, default_params(sys), 2, 3);
    auto p = default_params(sys);
    p.sampling = Sampling{100000, 5};
    auto sampled = measure_line_flow(net, sys, p, 2, 3);

    // delta = 2 ||theta||^2 P with ||theta||^2 proportional to the ancilla probability:
    // both factors are independent binomial estimates.
    double shots = 1e5;
    double ps = run(sys, default_params(sys)).success_probability;
    auto r = readout_state(sys, default_params(sys));
    double pd = estimate_delta_sq(r.beta_state, 1).probability;
    double rel = std::sqrt((1 - ps) / (ps * shots) + (1 - pd) / (pd * shots));
    EXPECT_NEAR(sampled.delta_theta_sq, exact.delta_theta_sq, 4 * rel * exact.delta_theta_sq);
    EXPECT_EQ(sampled.shots, std::optional<uint64_t>(100000));

    auto again = measure_line_flow(net, sys, p, 2, 3);
    EXPECT_EQ(again, sampled);
}

TEST(SampledDeltaTest, FrequencyWithinBand) {
    auto psi = real_state({0.3, -0.9});
    auto exact = estimate_delta_sq(psi, 1);
    auto sampled = estimate_delta_sq(psi, 1, Sampling{100000, 9});
    double sigma = std::sqrt(exact.probability * (1 - exact.probability) / 1e5);
    EXPECT_NEAR(sampled.probability, exact.probability, 4 * sigma);
    EXPECT_EQ(estimate_delta_sq(psi, 1, Sampling{100000, 9}).probability, sampled.probability);
}

// The estimators applied to the exact normalized solution reproduce the classical flows on
// random networks with two unknown angles.
TEST(LineFlowTest, RandomTwoUnknownNetworks) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; trial++) {
        auto net = test_util::random_network(3, rng);
        auto sys = make_dc_system(net);
        auto theta = solve_classical(sys);
        double norm_sq = theta[0] * theta[0] + theta[1] * theta[1];
        auto psi = real_state(theta);
        auto angles = expand_angles(sys, theta);
        auto classical = line_flows(net, angles, sys.matrix_scale);
        for (const auto &ref : classical.lines) {
            double sign = angles.at(ref.from) - angles.at(ref.to) < 0 ? -1 : 1;
            DeltaEstimate est;
            if (ref.from == sys.slack_bus || ref.to == sys.slack_bus) {
                int other = ref.from == sys.slack_bus ? ref.to : ref.from;
                uint64_t index = other == sys.bus_order[0] ? 0 : 1;
                est = estimate_slack_delta_sq(psi, index, norm_sq);
            } else {
                est = estimate_delta_sq(psi, norm_sq);
            }
            auto f = to_line_flow(est, ref.from, ref.to, net, sys.matrix_scale, sign);
            EXPECT_NEAR(f.flow_pu, ref.flow_pu, 1e-6);
        }
    }
}

}  // namespace
}  // namespace qpf
