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
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "qcomm/core/errors.hpp"
#include "qcomm/core/rng.hpp"
#include "qcomm/core/sign_vector.hpp"
#include "qcomm/core/special.hpp"

namespace qcomm {

/// xi_p on {+-1}^N x {+-1}^N: x uniform, y_i = x_i with probability
/// (1+p)/2 independently.
struct XiParams {
    std::size_t n;
    double p;

    XiParams(std::size_t length, double corr) : n(length), p(corr) {
        detail::require<DomainError>(n >= 1, "xi_p needs N >= 1");
        detail::require<DomainError>(p >= -1.0 && p <= 1.0,
                                     "correlation p outside [-1,1]");
    }
};

template <class Engine>
std::pair<SignVector, SignVector> xi_sample(const XiParams &params,
                                            Engine &rng) {
    std::vector<int> x(params.n);
    std::vector<int> y(params.n);
    const double keep = (1.0 + params.p) / 2.0;
    for (std::size_t i = 0; i < params.n; ++i) {
        x[i] = (rng() & 1U) != 0U ? -1 : 1;
        y[i] = bernoulli(rng, keep) ? x[i] : -x[i];
    }
    return {SignVector(std::move(x)), SignVector(std::move(y))};
}

/// log Pr_{xi_p}[<x,y> = delta]; -inf off the support.
inline long double xi_overlap_log_pmf(std::size_t n, double p, long delta) {
    detail::require<DomainError>(p >= -1.0 && p <= 1.0,
                                 "correlation p outside [-1,1]");
    const long nn = static_cast<long>(n);
    if (delta < -nn || delta > nn || (nn + delta) % 2 != 0) {
        return -INFINITY;
    }
    const long agree = (nn + delta) / 2;
    const long differ = nn - agree;
    const long double up = (1.0L + p) / 2.0L;
    const long double down = (1.0L - p) / 2.0L;
    if ((up == 0.0L && agree > 0) || (down == 0.0L && differ > 0)) {
        return -INFINITY;
    }
    long double lp = log_binomial(nn, agree);
    if (agree > 0) {
        lp += static_cast<long double>(agree) * std::log(up);
    }
    if (differ > 0) {
        lp += static_cast<long double>(differ) * std::log(down);
    }
    return lp;
}

/// Pr_{xi_p}[<x,y> = delta] = C(N, a) ((1+p)/2)^a ((1-p)/2)^{N-a} with
/// a = (N + delta)/2 agreements; 0 for the wrong parity.
inline double xi_overlap_pmf(std::size_t n, double p, long delta) {
    return static_cast<double>(std::exp(xi_overlap_log_pmf(n, p, delta)));
}

/// Whole overlap law as a vector indexed by (delta + N)/2.
inline std::vector<double> xi_overlap_law(std::size_t n, double p) {
    std::vector<double> law(n + 1);
    for (std::size_t a = 0; a <= n; ++a) {
        law[a] = xi_overlap_pmf(n, p, 2 * static_cast<long>(a) -
                                          static_cast<long>(n));
    }
    return law;
}

/// E[(<x,y>/N)^2] under xi_p in closed form: 1/N + (1 - 1/N) p^2.
inline double expected_squared_overlap(std::size_t n, double p) {
    const double inv = 1.0 / static_cast<double>(n);
    return inv + (1.0 - inv) * p * p;
}

/// Same expectation summed over the exact overlap pmf.
inline double expected_squared_overlap_by_pmf(std::size_t n, double p) {
    long double acc = 0.0L;
    const auto nn = static_cast<long double>(n);
    for (long d = -static_cast<long>(n); d <= static_cast<long>(n); d += 2) {
        const long double r = static_cast<long double>(d) / nn;
        acc += r * r * std::exp(xi_overlap_log_pmf(n, p, d));
    }
    return static_cast<double>(acc);
}

/// Correlation after shifting with replacement probability q: p + q - pq.
inline double shifted_correlation(double p, double q) {
    return p + q - p * q;
}

/**
 * @brief Per coordinate, with probability q replaces (x_i, y_i) by a fresh
 * equal pair (v, v) with v uniform. Maps xi_p to xi_{p+q-pq}.
 */
template <class Engine>
std::pair<SignVector, SignVector> shift_pairs(const SignVector &x,
                                              const SignVector &y, double q,
                                              Engine &rng) {
    detail::require<ValidationError>(x.size() == y.size(),
                                     "x and y have different lengths");
    detail::require<DomainError>(q >= 0.0 && q <= 1.0, "q outside [0,1]");
    SignVector xs = x;
    SignVector ys = y;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (bernoulli(rng, q)) {
            const int v = (rng() & 1U) != 0U ? -1 : 1;
            xs.set(i, v);
            ys.set(i, v);
        }
    }
    return {std::move(xs), std::move(ys)};
}

/// Exact per-coordinate agreement probability after shifting xi_p by q:
/// (1-q)(1+p)/2 + q.
inline double shifted_agreement(double p, double q) {
    return (1.0 - q) * (1.0 + p) / 2.0 + q;
}

/// Fixed zero-overlap pad for xi'_p: x'' all +1, y'' with -1 on the first
/// N/2 positions.
inline std::pair<SignVector, SignVector> xi_prime_pad(std::size_t n) {
    detail::require<ValidationError>(n >= 2 && n % 2 == 0,
                                     "xi' pad needs an even N");
    std::vector<int> y(n, 1);
    std::fill(y.begin(), y.begin() + static_cast<long>(n / 2), -1);
    return {SignVector::constant(n), SignVector(std::move(y))};
}

/**
 * @brief Sample of xi'_p on {+-1}^{2N}: (x, y) ~ xi_p, concatenated with the
 * fixed pad, then one uniformly random permutation applied to both strings.
 */
template <class Engine>
std::pair<SignVector, SignVector> xi_prime_sample(std::size_t n, double p,
                                                  Engine &rng) {
    const auto [px, py] = xi_prime_pad(n);
    const auto [x, y] = xi_sample(XiParams(n, p), rng);
    const SignVector cx = concat(x, px);
    const SignVector cy = concat(y, py);
    std::vector<std::size_t> perm(2 * n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> ox(2 * n);
    std::vector<int> oy(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) {
        ox[i] = cx[perm[i]];
        oy[i] = cy[perm[i]];
    }
    return {SignVector(std::move(ox)), SignVector(std::move(oy))};
}

/**
 * @brief Exact overlap law of xi'_p over delta in [-2N, 2N], indexed by
 * delta + 2N.
 *
 * A permutation applied to both strings leaves the inner product unchanged,
 * so the law is the xi_p law convolved with the point mass at the pad's own
 * overlap.
 */
inline std::vector<double> xi_prime_overlap_law(std::size_t n, double p) {
    const auto [px, py] = xi_prime_pad(n);
    const long pad = inner_product(px, py);
    const long nn = static_cast<long>(n);
    std::vector<double> law(4 * n + 1, 0.0);
    for (long d = -nn; d <= nn; d += 2) {
        law[static_cast<std::size_t>(d + pad + 2 * nn)] +=
            xi_overlap_pmf(n, p, d);
    }
    return law;
}

inline double xi_prime_overlap_pmf(std::size_t n, double p, long delta) {
    const long nn = static_cast<long>(n);
    if (delta < -2 * nn || delta > 2 * nn) {
        return 0.0;
    }
    return xi_prime_overlap_law(n, p)[static_cast<std::size_t>(delta + 2 * nn)];
}

/**
 * @brief Pr_{xi'_p}[<x',y'> = delta] / (e^{2 p^2 N} Pr_{xi_0^{2N}}[delta]),
 * evaluated in log space. N must be even so both laws share the parity.
 */
inline double techbound_ratio(std::size_t n, double p, long delta) {
    detail::require<ValidationError>(n >= 2 && n % 2 == 0,
                                     "ratio needs an even N");
    const long double num = xi_overlap_log_pmf(n, p, delta);
    const long double den = xi_overlap_log_pmf(2 * n, 0.0, delta);
    if (std::isinf(den)) {
        detail::require<DomainError>(std::isinf(num),
                                     "reference law vanishes where xi'_p "
                                     "does not");
        return 0.0;
    }
    const long double e = 2.0L * p * p * static_cast<long double>(n);
    return static_cast<double>(std::exp(num - den - e));
}

struct TechboundSweep {
    std::size_t n = 0;
    double max_ratio = 0.0;
    double arg_p = 0.0;
    long arg_delta = 0;
    bool in_hypothesis = true; ///< every p had |p| <= 0.01
};

/// Max of techbound_ratio over the given p values and every delta.
inline TechboundSweep techbound_sweep(std::size_t n,
                                      const std::vector<double> &ps) {
    TechboundSweep out;
    out.n = n;
    for (double p : ps) {
        out.in_hypothesis = out.in_hypothesis && std::abs(p) <= 0.01;
        for (long d = -static_cast<long>(n); d <= static_cast<long>(n);
             d += 2) {
            const double r = techbound_ratio(n, p, d);
            if (r > out.max_ratio) {
                out.max_ratio = r;
                out.arg_p = p;
                out.arg_delta = d;
            }
        }
    }
    return out;
}

/// p grid {-0.01, -0.009, ..., 0.01}.
inline std::vector<double> techbound_p_grid() {
    std::vector<double> ps;
    for (int i = -10; i <= 10; ++i) {
        ps.push_back(static_cast<double>(i) / 1000.0);
    }
    return ps;
}

} // namespace qcomm
