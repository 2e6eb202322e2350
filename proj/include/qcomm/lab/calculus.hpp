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
#include "qcomm/core/special.hpp"

namespace qcomm {

/// F(x) = ln 2 + h(x + 1/2) - 2 h(x/2 + 1/2), h in nats, for x in [0, 1/2].
/// Complements are passed explicitly so F stays accurate next to 1/2.
inline long double f_function(long double x) {
    detail::require<DomainError>(x >= 0.0L && x <= 0.5L,
                                 "F is defined on [0, 1/2]");
    return std::log(2.0L) + binary_entropy(x + 0.5L, 0.5L - x) -
           2.0L * binary_entropy(x / 2.0L + 0.5L, 0.5L - x / 2.0L);
}

/// Closed form F''(x) = -(2 + 4x^2) / (1 - 5x^2 + 4x^4).
inline long double f_second_closed(long double x) {
    detail::require<DomainError>(x >= 0.0L && x < 0.5L,
                                 "F'' is finite on [0, 1/2)");
    const long double x2 = x * x;
    return -(2.0L + 4.0L * x2) / ((1.0L - x2) * (1.0L - 4.0L * x2));
}

/**
 * @brief F''(x) from central second differences of F with two Richardson
 * steps. The base step shrinks with the distance to the singularity at 1/2.
 */
inline long double f_second_numeric(long double x) {
    const long double gap = 0.5L - x;
    const long double h = std::min(1e-3L, gap / 32.0L);
    // F is even, so F(x - s) = F(|x - s|) keeps the stencil in the domain
    auto d2 = [x](long double s) {
        return (f_function(x + s) - 2.0L * f_function(x) +
                f_function(std::abs(x - s))) /
               (s * s);
    };
    const long double a = d2(h);
    const long double b = d2(h / 2);
    const long double c = d2(h / 4);
    const long double ab = (4 * b - a) / 3;
    const long double bc = (4 * c - b) / 3;
    return (16 * bc - ab) / 15;
}

struct FCheck {
    double x = 0.0;
    double f = 0.0;
    double f_second = 0.0;
    double f_second_fd = 0.0;
    double fd_error = 0.0;
    bool bound_holds = false; ///< F <= -x^2 and F'' < -2
    bool boundary = false;    ///< x = 0, where F'' = -2 exactly
};

inline FCheck f_function_checks(double x) {
    detail::require<DomainError>(x >= 0.0 && x < 0.5,
                                 "F checks need x in [0, 1/2)");
    const long double xl = x;
    FCheck out;
    out.x = x;
    out.f = static_cast<double>(f_function(xl));
    const long double closed = f_second_closed(xl);
    const long double fd = f_second_numeric(xl);
    out.f_second = static_cast<double>(closed);
    out.f_second_fd = static_cast<double>(fd);
    out.fd_error = static_cast<double>(std::abs(closed - fd));
    out.boundary = x == 0.0;
    const bool f_ok = f_function(xl) <= -xl * xl + 1e-12L;
    const bool second_ok = out.boundary ? closed <= -2.0L : closed < -2.0L;
    out.bound_holds = f_ok && second_ok;
    return out;
}

/**
 * @brief min over q of E|q - S_m^2| for S_m a sum of m uniform signs.
 *
 * The minimizer is a median of S_m^2; the value is taken from the exact
 * binomial law of S_m.
 */
inline double appendix_b_min_abs_error(std::size_t m) {
    detail::require<DomainError>(m >= 1 && m <= 64, "need 1 <= m <= 64");
    const auto mm = static_cast<std::int64_t>(m);
    // law of S^2 over k = number of +1 signs, merged by |S|
    std::vector<double> value;
    std::vector<long double> prob;
    for (std::int64_t k = 0; k <= mm; ++k) {
        const std::int64_t s = 2 * k - mm;
        if (s < 0) {
            continue;
        }
        long double pr = std::exp(log_binomial(mm, k) -
                                  static_cast<long double>(m) *
                                      std::log(2.0L));
        if (s > 0) {
            pr *= 2.0L; // +s and -s
        }
        value.push_back(static_cast<double>(s * s));
        prob.push_back(pr);
    }
    // values ascend with k, so the first crossing of 1/2 is a median
    long double cum = 0.0L;
    double median = value.back();
    for (std::size_t i = 0; i < value.size(); ++i) {
        cum += prob[i];
        if (cum >= 0.5L - 1e-15L) {
            median = value[i];
            break;
        }
    }
    long double acc = 0.0L;
    for (std::size_t i = 0; i < value.size(); ++i) {
        acc += prob[i] * std::abs(static_cast<long double>(value[i]) - median);
    }
    return static_cast<double>(acc);
}

} // namespace qcomm
