// Copyright 2026 The qcomm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qcomm/quantum/dfs.hpp"

namespace qcomm {

/// (s, t): Alice's and Bob's outputs.
using OutcomePair = std::pair<std::uint64_t, std::uint64_t>;

/**
 * @brief Joint pmf q(s,t) = p_fg(s xor t) / N of the entangled protocol,
 * flattened as index s * N + t.
 */
inline OutcomeDistribution ddfs_joint_pmf(const DfsInstance &inst) {
    const auto p = dfs_distribution(inst);
    const std::size_t n = inst.size();
    std::vector<double> q(n * n);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            q[s * n + t] = p[s ^ t] / static_cast<double>(n);
        }
    }
    return OutcomeDistribution(std::move(q));
}

/**
 * @brief Same joint pmf from the full 2n-qubit statevector: shared maximally
 * entangled state, U_f and U_g on the two halves, Hadamards everywhere.
 *
 * Index layout: Alice's register in the high n bits. Kept for n <= 4 as a
 * cross-check of the closed form.
 */
inline OutcomeDistribution ddfs_statevector_joint_pmf(const DfsInstance &inst) {
    const std::size_t n = inst.size();
    const std::size_t q = inst.qubits();
    detail::require<DimensionError>(q <= 4,
                                    "2n-qubit statevector path limited to n<=4");
    CVector psi = CVector::Zero(static_cast<Eigen::Index>(n * n));
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t x = 0; x < n; ++x) {
        psi(static_cast<Eigen::Index>(x * n + x)) = amp;
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            psi(static_cast<Eigen::Index>(a * n + b)) *=
                static_cast<double>(inst.f[a] * inst.g[b]);
        }
    }
    for (std::size_t k = 0; k < 2 * q; ++k) {
        apply_hadamard(psi, k);
    }
    return born_distribution(psi);
}

/// Draws u ~ p_fg, s uniform, t = s xor u.
template <class Engine>
std::vector<OutcomePair> ddfs_quantum_sample(const DfsInstance &inst,
                                             Engine &rng, std::size_t shots) {
    detail::require<ValidationError>(shots >= 1, "shots must be >= 1");
    const auto p = dfs_distribution(inst);
    std::uniform_int_distribution<std::uint64_t> pick(0, inst.size() - 1);
    std::vector<OutcomePair> out;
    out.reserve(shots);
    for (std::size_t i = 0; i < shots; ++i) {
        const std::uint64_t u = p.sample(rng);
        const std::uint64_t s = pick(rng);
        out.emplace_back(s, s ^ u);
    }
    return out;
}

/// Law of s xor t under a joint pmf over (s, t) flattened as s * N + t.
inline OutcomeDistribution xor_pushforward(const OutcomeDistribution &joint,
                                           std::size_t n) {
    detail::require<DimensionError>(joint.size() == n * n,
                                    "joint pmf has the wrong size");
    std::vector<double> u(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            u[s ^ t] += joint[s * n + t];
        }
    }
    return OutcomeDistribution(std::move(u));
}

/// Marginal law of Alice's output s.
inline OutcomeDistribution alice_marginal(const OutcomeDistribution &joint,
                                          std::size_t n) {
    std::vector<double> m(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            m[s] += joint[s * n + t];
        }
    }
    return OutcomeDistribution(std::move(m));
}

inline OutcomeDistribution bob_marginal(const OutcomeDistribution &joint,
                                        std::size_t n) {
    std::vector<double> m(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            m[t] += joint[s * n + t];
        }
    }
    return OutcomeDistribution(std::move(m));
}

} // namespace qcomm
