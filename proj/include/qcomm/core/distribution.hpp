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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qcomm/core/errors.hpp"
#include "qcomm/core/rng.hpp"

namespace qcomm {

/**
 * @brief Finite pmf over outcome indices 0..size()-1.
 *
 * Indices past the end read as probability 0. Entries in [-1e-12, 0) are
 * clamped to 0; anything more negative, or a total outside 1 +- 1e-9, is
 * rejected.
 */
class OutcomeDistribution {
  public:
    static constexpr double kClampTol = 1e-12;
    static constexpr double kTotalTol = 1e-9;

    OutcomeDistribution() = default;

    explicit OutcomeDistribution(std::vector<double> probs)
        : probs_(std::move(probs)) {
        detail::require<ValidationError>(!probs_.empty(),
                                         "distribution has no outcomes");
        double total = 0.0;
        for (auto &p : probs_) {
            detail::require<ValidationError>(
                std::isfinite(p) && p >= -kClampTol,
                "negative probability " + std::to_string(p));
            p = std::max(p, 0.0);
            total += p;
        }
        detail::require<ValidationError>(std::abs(total - 1.0) <= kTotalTol,
                                         "probabilities sum to " +
                                             std::to_string(total));
    }

    static OutcomeDistribution point_mass(std::size_t outcome,
                                          std::size_t size) {
        std::vector<double> p(std::max(size, outcome + 1), 0.0);
        p[outcome] = 1.0;
        return OutcomeDistribution(std::move(p));
    }

    static OutcomeDistribution uniform(std::size_t size) {
        return OutcomeDistribution(
            std::vector<double>(size, 1.0 / static_cast<double>(size)));
    }

    /// Empirical law of `samples` over outcomes 0..size-1.
    static OutcomeDistribution
    empirical(std::span<const std::size_t> samples, std::size_t size) {
        detail::require<ValidationError>(!samples.empty(),
                                         "empirical law of zero samples");
        std::vector<double> counts(size, 0.0);
        for (auto s : samples) {
            detail::require<ValidationError>(s < size, "sample out of range");
            counts[s] += 1.0;
        }
        for (auto &c : counts) {
            c /= static_cast<double>(samples.size());
        }
        return OutcomeDistribution(std::move(counts));
    }

    [[nodiscard]] std::size_t size() const noexcept { return probs_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept {
        return i < probs_.size() ? probs_[i] : 0.0;
    }
    [[nodiscard]] std::span<const double> probabilities() const noexcept {
        return probs_;
    }

    /// Inverse-CDF draw using one uniform variate.
    template <class Engine> std::size_t sample(Engine &rng) const {
        const double u = uniform01(rng);
        double acc = 0.0;
        for (std::size_t i = 0; i < probs_.size(); ++i) {
            acc += probs_[i];
            if (u < acc) {
                return i;
            }
        }
        // u landed in the rounding slack above the last partial sum
        for (std::size_t i = probs_.size(); i-- > 0;) {
            if (probs_[i] > 0.0) {
                return i;
            }
        }
        return 0;
    }

  private:
    std::vector<double> probs_;
};

/// sum_i |a_i - b_i|, with missing outcomes read as 0.
inline double l1_distance(const OutcomeDistribution &a,
                          const OutcomeDistribution &b) {
    const std::size_t n = std::max(a.size(), b.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += std::abs(a[i] - b[i]);
    }
    return acc;
}

} // namespace qcomm
