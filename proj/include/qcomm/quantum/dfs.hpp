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
#include <vector>

#include "qcomm/core/distribution.hpp"
#include "qcomm/core/pure_state.hpp"
#include "qcomm/core/sign_vector.hpp"
#include "qcomm/core/walsh_hadamard.hpp"

namespace qcomm {

/**
 * @brief Distributed Fourier Sampling input: Alice holds f, Bob holds g,
 * both tables of length N = 2^n.
 *
 * Bit convention everywhere: s.x is the mod-2 dot product of the binary
 * expansions of the indices, bit 0 least significant.
 */
struct DfsInstance {
    SignVector f;
    SignVector g;

    DfsInstance(SignVector alice, SignVector bob)
        : f(std::move(alice)), g(std::move(bob)) {
        detail::require<ValidationError>(f.size() == g.size(),
                                         "f and g have different lengths");
        log2_exact(f.size());
    }

    [[nodiscard]] std::size_t qubits() const { return log2_exact(f.size()); }
    [[nodiscard]] std::size_t size() const noexcept { return f.size(); }
};

/// p_fg(s) = (2^{-n} sum_x (-1)^{s.x} f(x) g(x))^2, via the fast transform
/// of the pointwise product fg.
inline OutcomeDistribution dfs_distribution(const DfsInstance &inst) {
    auto coeffs = walsh_hadamard(pointwise(inst.f, inst.g));
    for (auto &c : coeffs) {
        c *= c;
    }
    return OutcomeDistribution(std::move(coeffs));
}

/// Applies a Hadamard gate to qubit `q` of a statevector.
inline void apply_hadamard(CVector &psi, std::size_t q) {
    const std::size_t stride = std::size_t{1} << q;
    const double r = 1.0 / std::sqrt(2.0);
    const auto n = static_cast<std::size_t>(psi.size());
    for (std::size_t i = 0; i < n; ++i) {
        if ((i & stride) != 0) {
            continue;
        }
        const auto i0 = static_cast<Eigen::Index>(i);
        const auto i1 = static_cast<Eigen::Index>(i | stride);
        const Complex a = psi(i0);
        const Complex b = psi(i1);
        psi(i0) = r * (a + b);
        psi(i1) = r * (a - b);
    }
}

/// Born-rule pmf of a statevector in the computational basis.
inline OutcomeDistribution born_distribution(const CVector &psi) {
    std::vector<double> p(static_cast<std::size_t>(psi.size()));
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = std::norm(psi(static_cast<Eigen::Index>(i)));
    }
    return OutcomeDistribution(std::move(p));
}

/**
 * @brief The one-message quantum protocol as an explicit statevector
 * pipeline: Alice prepares |psi_f>, Bob applies U_g, a Hadamard on every
 * qubit, and measures.
 */
inline OutcomeDistribution dfs_statevector_pmf(const DfsInstance &inst) {
    const std::size_t n = inst.size();
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    CVector psi(static_cast<Eigen::Index>(n));
    for (std::size_t x = 0; x < n; ++x) {
        psi(static_cast<Eigen::Index>(x)) = amp * inst.f[x];
    }
    for (std::size_t x = 0; x < n; ++x) {
        psi(static_cast<Eigen::Index>(x)) *= static_cast<double>(inst.g[x]);
    }
    for (std::size_t q = 0; q < inst.qubits(); ++q) {
        apply_hadamard(psi, q);
    }
    return born_distribution(psi);
}

struct DfsSimulation {
    OutcomeDistribution pipeline_pmf;
    std::vector<std::size_t> samples;
    OutcomeDistribution empirical;
};

/// Runs the statevector pipeline and draws `shots` i.i.d. outcomes.
template <class Engine>
DfsSimulation dfs_quantum_simulate(const DfsInstance &inst, Engine &rng,
                                   std::size_t shots) {
    detail::require<ValidationError>(shots >= 1, "shots must be >= 1");
    DfsSimulation out{dfs_statevector_pmf(inst), {}, {}};
    out.samples.reserve(shots);
    for (std::size_t i = 0; i < shots; ++i) {
        out.samples.push_back(out.pipeline_pmf.sample(rng));
    }
    out.empirical = OutcomeDistribution::empirical(out.samples, inst.size());
    return out;
}

} // namespace qcomm
