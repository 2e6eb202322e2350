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
#include <cstdint>
#include <numbers>
#include <string>

#include "qcomm/core/errors.hpp"

namespace qcomm {

/**
 * @brief Binary entropy in nats, h(x) = -x ln x - (1-x) ln(1-x).
 *
 * The endpoints return 0 by continuity. The overload taking `x` and its
 * complement `1-x` separately keeps full precision when one of them is tiny.
 */
inline long double binary_entropy(long double x, long double one_minus_x) {
    detail::require<DomainError>(x >= 0.0L && one_minus_x >= 0.0L,
                                 "binary entropy argument outside [0,1]");
    long double h = 0.0L;
    if (x > 0.0L) {
        h -= x * std::log(x);
    }
    if (one_minus_x > 0.0L) {
        h -= one_minus_x * std::log(one_minus_x);
    }
    return h;
}

inline double binary_entropy(double x) {
    detail::require<DomainError>(x >= 0.0 && x <= 1.0,
                                 "binary entropy argument outside [0,1]");
    return static_cast<double>(binary_entropy(
        static_cast<long double>(x), 1.0L - static_cast<long double>(x)));
}

/// ln C(n, k) via lgamma in extended precision.
inline long double log_binomial(std::int64_t n, std::int64_t k) {
    detail::require<DomainError>(n >= 0 && k >= 0 && k <= n,
                                 "binomial coefficient out of range");
    return std::lgamma(static_cast<long double>(n) + 1.0L) -
           std::lgamma(static_cast<long double>(k) + 1.0L) -
           std::lgamma(static_cast<long double>(n - k) + 1.0L);
}

struct BinomialBoundCheck {
    double lower = 0.0;
    double exact = 0.0;
    double upper = 0.0;
    bool holds = false;
};

/**
 * @brief Evaluates sqrt(N/(8k(N-k))) e^{N h(k/N)} <= C(N,k) <=
 * sqrt(N/(2 pi k(N-k))) e^{N h(k/N)} for 1 <= k <= N-1.
 *
 * Comparison is done in log space. The lower bound is attained at N=2, k=1,
 * so each side is allowed 1e-12 relative rounding slack.
 */
inline BinomialBoundCheck check_binomial_bounds(std::int64_t n,
                                                std::int64_t k) {
    detail::require<DomainError>(n >= 2 && k >= 1 && k <= n - 1,
                                 "need 1 <= k <= N-1 (N=" + std::to_string(n) +
                                     ", k=" + std::to_string(k) + ")");
    detail::require<DomainError>(n <= 1000, "N above 1000 is not supported");
    const long double nn = static_cast<long double>(n);
    const long double kk = static_cast<long double>(k);
    const long double nh =
        nn * binary_entropy(kk / nn, (nn - kk) / nn);
    const long double prod = kk * (nn - kk);
    const long double log_lower = 0.5L * std::log(nn / (8.0L * prod)) + nh;
    const long double log_upper =
        0.5L * std::log(nn / (2.0L * std::numbers::pi_v<long double> * prod)) +
        nh;
    const long double log_exact = log_binomial(n, k);
    constexpr long double slack = 1e-12L;
    BinomialBoundCheck out;
    out.lower = static_cast<double>(std::exp(log_lower));
    out.exact = static_cast<double>(std::exp(log_exact));
    out.upper = static_cast<double>(std::exp(log_upper));
    out.holds = log_lower <= log_exact + slack && log_exact <= log_upper + slack;
    return out;
}

} // namespace qcomm
