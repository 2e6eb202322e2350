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
#include <cstdint>
#include <vector>

#include "qcomm/core/errors.hpp"
#include "qcomm/core/haar.hpp"

namespace qcomm {

/// Upper bound on Pr[<psi|P|psi> >= (1+delta) r/N] for Haar psi and a
/// rank-r projector: exp(-r delta^2/3) for delta <= 1, exp(-r delta/3) above.
inline double randomproj_tail_bound(std::size_t r, double delta) {
    detail::require<DomainError>(delta >= 0.0, "delta must be >= 0");
    const auto rr = static_cast<double>(r);
    return delta <= 1.0 ? std::exp(-rr * delta * delta / 3.0)
                        : std::exp(-rr * delta / 3.0);
}

struct TailCheck {
    double empirical_tail = 0.0;
    double bound = 0.0;
    double std_error = 0.0;
    bool holds = false; ///< empirical <= bound + 3 sigma
};

/**
 * @brief Monte Carlo tail of <psi|P|psi> against the bound above.
 *
 * P projects onto the first r basis vectors; by unitary invariance this is
 * the same law as any fixed rank-r projector. Sigma is the binomial standard
 * error at the bound.
 */
template <class Engine>
TailCheck randomproj_tail_check(std::size_t n, std::size_t r, double delta,
                                std::uint64_t trials, Engine &rng) {
    detail::require<DomainError>(r >= 1 && r <= n,
                                 "projector rank must satisfy 1 <= r <= N");
    detail::require<DomainError>(delta >= 0.0, "delta must be >= 0");
    detail::require<ValidationError>(trials > 0, "need at least one trial");
    const double threshold =
        (1.0 + delta) * static_cast<double>(r) / static_cast<double>(n);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const CVector g = complex_gaussian(n, rng);
        const double inside =
            g.head(static_cast<Eigen::Index>(r)).squaredNorm() /
            g.squaredNorm();
        hits += inside >= threshold ? 1 : 0;
    }
    TailCheck out;
    out.empirical_tail =
        static_cast<double>(hits) / static_cast<double>(trials);
    out.bound = randomproj_tail_bound(r, delta);
    const double pb = std::min(out.bound, 1.0);
    out.std_error = std::sqrt(pb * (1.0 - pb) / static_cast<double>(trials));
    out.holds = out.empirical_tail <= out.bound + 3.0 * out.std_error;
    return out;
}

/// Pr[|<phi|psi>|^2 >= x] = (1 - x)^{N-1} for independent Haar states.
inline double overlap_survival(std::size_t n, double x) {
    detail::require<DomainError>(n >= 1, "dimension must be >= 1");
    return std::pow(1.0 - std::clamp(x, 0.0, 1.0),
                    static_cast<double>(n - 1));
}

struct OverlapLawCheck {
    double ks = 0.0;             ///< sup |F_emp - F|
    double max_point_dev = 0.0;  ///< worst |F_emp - F| / sigma on the probes
    std::uint64_t samples = 0;
};

/**
 * @brief Compares the empirical CDF of |<phi|psi>|^2 (psi fixed to |0>,
 * phi Haar) with 1 - (1-x)^{N-1}: the Kolmogorov-Smirnov statistic and the
 * worst standardized deviation at the probe points.
 */
template <class Engine>
OverlapLawCheck overlap_law_check(std::size_t n, std::uint64_t samples,
                                  const std::vector<double> &probes,
                                  Engine &rng) {
    detail::require<DomainError>(n >= 2, "overlap law needs N >= 2");
    detail::require<ValidationError>(samples > 0, "need samples > 0");
    std::vector<double> xs(samples);
    for (auto &x : xs) {
        const CVector g = complex_gaussian(n, rng);
        x = std::norm(g(0)) / g.squaredNorm();
    }
    std::sort(xs.begin(), xs.end());
    OverlapLawCheck out;
    out.samples = samples;
    const auto m = static_cast<double>(samples);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double cdf = 1.0 - overlap_survival(n, xs[i]);
        const double lo = static_cast<double>(i) / m;
        const double hi = static_cast<double>(i + 1) / m;
        out.ks = std::max({out.ks, std::abs(cdf - lo), std::abs(hi - cdf)});
    }
    for (double x : probes) {
        const double cdf = 1.0 - overlap_survival(n, x);
        const auto below = static_cast<double>(
            std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
        const double sigma = std::sqrt(cdf * (1.0 - cdf) / m);
        if (sigma > 0.0) {
            out.max_point_dev =
                std::max(out.max_point_dev, std::abs(below / m - cdf) / sigma);
        }
    }
    return out;
}

} // namespace qcomm
