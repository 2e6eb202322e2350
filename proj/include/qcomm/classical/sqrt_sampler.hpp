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
#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "qcomm/classical/query_to_comm.hpp"
#include "qcomm/core/errors.hpp"
#include "qcomm/core/sign_vector.hpp"

namespace qcomm {

/**
 * @brief Gap-orthogonality sampler as a query algorithm over h = xy.
 *
 * Queries k positions uniformly with replacement and accepts iff all answers
 * are equal (all agree or all disagree). All k queries are always made, so
 * the cost does not depend on the answers.
 */
struct SqrtSamplerAlgorithm {
    std::size_t k;

    template <class Oracle, class Engine>
    bool operator()(Oracle &oracle, Engine &rng) const {
        detail::require<DomainError>(k >= 1, "sampler needs k >= 1 queries");
        std::uniform_int_distribution<std::size_t> pick(0, oracle.size() - 1);
        const int first = oracle(pick(rng));
        bool same = true;
        for (std::size_t i = 1; i < k; ++i) {
            same = (oracle(pick(rng)) == first) && same;
        }
        return same;
    }
};

struct SqrtSamplerRun {
    bool accept;
    ProtocolRun run;
};

/// Two-party run of the sampler on (x, y); costs 2k bits.
template <class Engine>
SqrtSamplerRun sqrt_sampler(const SignVector &x, const SignVector &y,
                            std::size_t k, Engine &rng) {
    detail::require<ValidationError>(x.size() == y.size(),
                                     "x and y have different lengths");
    auto r = query_to_comm(SqrtSamplerAlgorithm{k}, x, y, rng);
    return {r.output, std::move(r.run)};
}

/// Fraction of positions where x and y agree.
inline double agree_fraction(const SignVector &x, const SignVector &y) {
    const long ip = inner_product(x, y);
    return 0.5 + 0.5 * static_cast<double>(ip) /
                     static_cast<double>(x.size());
}

/// Exact acceptance probability a^k + (1-a)^k.
inline double sqrt_sampler_exact_prob(double agree, std::size_t k) {
    detail::require<DomainError>(agree >= 0.0 && agree <= 1.0,
                                 "agree fraction must lie in [0,1]");
    detail::require<DomainError>(k >= 1, "sampler needs k >= 1 queries");
    const auto kk = static_cast<double>(k);
    return std::pow(agree, kk) + std::pow(1.0 - agree, kk);
}

/// Acceptance at k = sqrt(N) queries when the strings disagree on a
/// 1/2 + delta/sqrt(N) fraction of positions.
inline double sqrt_sampler_prob_at_delta(std::size_t n, double delta) {
    const double rt = std::sqrt(static_cast<double>(n));
    const auto k = static_cast<std::size_t>(std::llround(rt));
    detail::require<DomainError>(k * k == n, "N must be a perfect square");
    const double disagree = 0.5 + delta / rt;
    detail::require<DomainError>(disagree >= 0.0 && disagree <= 1.0,
                                 "|delta| must be at most sqrt(N)/2");
    return sqrt_sampler_exact_prob(1.0 - disagree, k);
}

/// Large-N approximation 2^{1-sqrt N} cosh(2 delta).
inline double sqrt_sampler_cosh_approx(std::size_t n, double delta) {
    const double rt = std::sqrt(static_cast<double>(n));
    return std::exp2(1.0 - rt) * std::cosh(2.0 * delta);
}

/// Sign strings of length N at inner product exactly `ip`: x is all +1 and y
/// has (N - ip)/2 entries of -1 at random positions.
template <class Engine>
std::pair<SignVector, SignVector> pair_with_inner_product(std::size_t n,
                                                          long ip,
                                                          Engine &rng) {
    const long nn = static_cast<long>(n);
    detail::require<DomainError>(ip >= -nn && ip <= nn && (nn - ip) % 2 == 0,
                                 "inner product must have the parity of N");
    std::vector<int> y(n, 1);
    std::fill(y.begin(), y.begin() + (nn - ip) / 2, -1);
    std::shuffle(y.begin(), y.end(), rng);
    return {SignVector::constant(n), SignVector(std::move(y))};
}

} // namespace qcomm
