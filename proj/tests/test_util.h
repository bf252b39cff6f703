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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qpf/grid.h"
#include "qpf/numerics.h"
#include "qpf/state_vector.h"

namespace qpf::test_util {

inline std::string data_path(const std::string &name) {
    return std::string(QPF_DATA_DIR) + "/" + name;
}

inline RealMatrix random_symmetric(size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> d(-1, 1);
    RealMatrix m(n, n);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = r; c < n; c++) {
            m(r, c) = m(c, r) = d(rng);
        }
    }
    return m;
}

/// Random orthogonal matrix via Gram-Schmidt on a Gaussian matrix.
inline RealMatrix random_orthogonal(size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> d;
    RealMatrix q(n, n);
    for (size_t c = 0; c < n; c++) {
        std::vector<double> v(n);
        for (double &x : v) {
            x = d(rng);
        }
        for (size_t prev = 0; prev < c; prev++) {
            double dot = 0;
            for (size_t r = 0; r < n; r++) {
                dot += v[r] * q(r, prev);
            }
            for (size_t r = 0; r < n; r++) {
                v[r] -= dot * q(r, prev);
            }
        }
        double nv = norm2(v);
        for (size_t r = 0; r < n; r++) {
            q(r, c) = v[r] / nv;
        }
    }
    return q;
}

/// Q diag(eigenvalues) Q^T.
inline RealMatrix with_spectrum(const RealMatrix &q, const std::vector<double> &eigenvalues) {
    size_t n = eigenvalues.size();
    RealMatrix m(n, n);
    for (size_t k = 0; k < n; k++) {
        for (size_t r = 0; r < n; r++) {
            for (size_t c = 0; c < n; c++) {
                m(r, c) += eigenvalues[k] * q(r, k) * q(c, k);
            }
        }
    }
    for (size_t r = 0; r < n; r++) {
        for (size_t c = r + 1; c < n; c++) {
            m(c, r) = m(r, c);
        }
    }
    return m;
}

inline std::vector<complex> random_state(size_t n_qubits, std::mt19937_64 &rng) {
    std::normal_distribution<double> d;
    std::vector<complex> a(size_t{1} << n_qubits);
    double acc = 0;
    for (auto &x : a) {
        x = complex(d(rng), d(rng));
        acc += std::norm(x);
    }
    for (auto &x : a) {
        x /= std::sqrt(acc);
    }
    return a;
}

/// Connected network: random spanning tree plus extra edges, balanced injections.
inline Network random_network(size_t buses, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> reactance(0.01, 0.5);
    std::uniform_real_distribution<double> injection(-100, 100);
    Network net;
    net.base_mva = 100;
    std::vector<int> ids;
    for (size_t k = 0; k < buses; k++) {
        ids.push_back(static_cast<int>(10 + 3 * k));
    }
    std::shuffle(ids.begin(), ids.end(), rng);
    double total = 0;
    for (size_t k = 0; k < buses; k++) {
        double p = k + 1 < buses ? injection(rng) : -total;
        total += p;
        net.buses.push_back(Bus{ids[k], p});
    }
    net.slack_bus = ids[std::uniform_int_distribution<size_t>(0, buses - 1)(rng)];
    for (size_t k = 1; k < buses; k++) {
        size_t parent = std::uniform_int_distribution<size_t>(0, k - 1)(rng);
        net.lines.push_back(Line{ids[parent], ids[k], reactance(rng)});
    }
    std::bernoulli_distribution extra(0.3);
    for (size_t a = 0; a < buses; a++) {
        for (size_t b = a + 1; b < buses; b++) {
            if (!net.find_line(ids[a], ids[b]) && extra(rng)) {
                net.lines.push_back(Line{ids[a], ids[b], reactance(rng)});
            }
        }
    }
    return net;
}

}  // namespace qpf::test_util
