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
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "qcomm/core/errors.hpp"

namespace qcomm {

/// Xi_eta on R^N x R^N: x, z standard Gaussian, y = eta x + sqrt(1-eta^2) z.
struct GaussianXiParams {
    std::size_t n;
    double eta;

    GaussianXiParams(std::size_t length, double corr) : n(length), eta(corr) {
        detail::require<DomainError>(n >= 1, "Xi needs N >= 1");
        detail::require<DomainError>(eta >= -1.0 && eta <= 1.0,
                                     "correlation eta outside [-1,1]");
    }
};

using RealVector = std::vector<double>;

template <class Engine>
std::pair<RealVector, RealVector> gaussian_xi_sample(const GaussianXiParams &g,
                                                     Engine &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double c = std::sqrt(std::max(0.0, 1.0 - g.eta * g.eta));
    RealVector x(g.n);
    RealVector y(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        x[i] = normal(rng);
        y[i] = g.eta * x[i] + c * normal(rng);
    }
    return {std::move(x), std::move(y)};
}

/// Correlation of (sgn x_i, sgn y_i) under Xi_eta: 1 - (2/pi) arccos(eta).
inline double sign_map_p(double eta) {
    detail::require<DomainError>(eta >= -1.0 && eta <= 1.0,
                                 "correlation eta outside [-1,1]");
    return 1.0 - 2.0 / std::numbers::pi * std::acos(eta);
}

struct SignMapCheck {
    double p = 0.0;
    double expected_agreement = 0.0; ///< (1 + p)/2
    double agreement = 0.0;
    double std_error = 0.0;
    double mean_product = 0.0; ///< empirical E[x_i y_i]
    std::uint64_t coordinates = 0;
    bool holds = false;        ///< agreement within 3 sigma
};

/// Sign-agreement rate of Xi_eta samples against (1 + p)/2, pooled over
/// coordinates (which are independent).
template <class Engine>
SignMapCheck sign_map_check(std::size_t n, double eta, std::uint64_t samples,
                            Engine &rng) {
    detail::require<ValidationError>(samples > 0, "need samples > 0");
    const GaussianXiParams g(n, eta);
    SignMapCheck out;
    out.p = sign_map_p(eta);
    out.expected_agreement = (1.0 + out.p) / 2.0;
    std::uint64_t agree = 0;
    double prod = 0.0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        const auto [x, y] = gaussian_xi_sample(g, rng);
        for (std::size_t i = 0; i < n; ++i) {
            agree += std::signbit(x[i]) == std::signbit(y[i]) ? 1 : 0;
            prod += x[i] * y[i];
        }
    }
    out.coordinates = samples * n;
    const auto m = static_cast<double>(out.coordinates);
    out.agreement = static_cast<double>(agree) / m;
    out.mean_product = prod / m;
    const double q = out.expected_agreement;
    out.std_error = std::sqrt(q * (1.0 - q) / m);
    out.holds = std::abs(out.agreement - q) <= 3.0 * out.std_error;
    return out;
}

/// {x : <normal, x> >= offset}.
struct Halfspace {
    RealVector normal;
    double offset = 0.0;

    [[nodiscard]] bool contains(const RealVector &x) const {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            s += normal[i] * x[i];
        }
        return s >= offset;
    }

    /// Standard Gaussian measure, exact.
    [[nodiscard]] double gaussian_measure() const {
        double nn = 0.0;
        for (double v : normal) {
            nn += v * v;
        }
        return 0.5 * std::erfc(offset / std::sqrt(2.0 * nn));
    }
};

struct HalfspaceCheck {
    double lhs = 0.0; ///< (e^s P_{-eta} + e^{-s} P_{eta}) / 2, Monte Carlo
    double rhs = 0.0; ///< (1 - eps) gamma(A) gamma(B), exact
    double std_error = 0.0;
    bool holds = false; ///< lhs >= rhs - 4 sigma
};

/**
 * @brief Skewed Gaussian inequality on a half-space product A x B.
 *
 * P_zeta = Pr_{Xi_zeta}[x in A and y in B] is estimated from independent
 * sample streams for zeta = -eta and +eta.
 */
template <class Engine>
HalfspaceCheck halfspace_check(const Halfspace &a, const Halfspace &b,
                               double eta, double s, double eps,
                               std::uint64_t samples, Engine &rng) {
    const std::size_t n = a.normal.size();
    detail::require<DimensionError>(b.normal.size() == n && n >= 1,
                                    "half-spaces must share a dimension");
    detail::require<ValidationError>(samples > 0, "need samples > 0");
    auto estimate = [&](double zeta) {
        const GaussianXiParams g(n, zeta);
        std::uint64_t hits = 0;
        for (std::uint64_t i = 0; i < samples; ++i) {
            const auto [x, y] = gaussian_xi_sample(g, rng);
            hits += a.contains(x) && b.contains(y) ? 1 : 0;
        }
        const double f = static_cast<double>(hits) / static_cast<double>(samples);
        return std::pair{f, f * (1.0 - f) / static_cast<double>(samples)};
    };
    const auto [pm, vm] = estimate(-eta);
    const auto [pp, vp] = estimate(eta);
    HalfspaceCheck out;
    out.lhs = 0.5 * (std::exp(s) * pm + std::exp(-s) * pp);
    out.rhs = (1.0 - eps) * a.gaussian_measure() * b.gaussian_measure();
    out.std_error =
        0.5 * std::sqrt(std::exp(2 * s) * vm + std::exp(-2 * s) * vp);
    out.holds = out.lhs >= out.rhs - 4.0 * out.std_error;
    return out;
}

} // namespace qcomm
