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

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qcomm/core/rng.hpp"
#include "qcomm/core/sign_vector.hpp"
#include "qcomm/core/walsh_hadamard.hpp"

namespace qcomm {

/// Largest |A|*|B| (or |X|*|Y|) the exact enumerations accept.
inline constexpr std::uint64_t kMaxEnumerablePairs = std::uint64_t{1} << 24;

/**
 * @brief Explicit product set A x B over X = [0, nx), Y = [0, ny).
 *
 * When the domains are {+-1}^N (cube_dim() set), inputs are packed sign
 * vectors as in SignVector::packed().
 */
class Rectangle {
  public:
    Rectangle(std::vector<std::uint8_t> alice, std::vector<std::uint8_t> bob,
              std::optional<std::size_t> cube_dim = std::nullopt)
        : a_(std::move(alice)), b_(std::move(bob)), cube_(cube_dim) {
        detail::require<ValidationError>(!a_.empty() && !b_.empty(),
                                         "rectangle domains must be non-empty");
        if (cube_) {
            detail::require<DimensionError>(
                *cube_ <= 20 && a_.size() == (std::size_t{1} << *cube_) &&
                    b_.size() == a_.size(),
                "cube rectangle needs bitsets of length 2^N (N <= 20)");
        }
        for (auto v : a_) {
            na_ += v != 0 ? 1 : 0;
        }
        for (auto v : b_) {
            nb_ += v != 0 ? 1 : 0;
        }
    }

    static Rectangle full(std::size_t nx, std::size_t ny) {
        return {std::vector<std::uint8_t>(nx, 1),
                std::vector<std::uint8_t>(ny, 1)};
    }

    static Rectangle full_cube(std::size_t n) {
        const std::size_t m = std::size_t{1} << n;
        return {std::vector<std::uint8_t>(m, 1),
                std::vector<std::uint8_t>(m, 1), n};
    }

    [[nodiscard]] bool contains(std::size_t x, std::size_t y) const {
        return a_[x] != 0 && b_[y] != 0;
    }
    [[nodiscard]] std::span<const std::uint8_t> alice() const noexcept {
        return a_;
    }
    [[nodiscard]] std::span<const std::uint8_t> bob() const noexcept {
        return b_;
    }
    [[nodiscard]] std::size_t alice_count() const noexcept { return na_; }
    [[nodiscard]] std::size_t bob_count() const noexcept { return nb_; }
    [[nodiscard]] std::optional<std::size_t> cube_dim() const noexcept {
        return cube_;
    }

  private:
    std::vector<std::uint8_t> a_;
    std::vector<std::uint8_t> b_;
    std::optional<std::size_t> cube_;
    std::size_t na_ = 0;
    std::size_t nb_ = 0;
};

/// Rectangle over {+-1}^N given by membership predicates; for N too large
/// to enumerate.
struct PredicateRectangle {
    std::size_t n = 0;
    std::function<bool(const SignVector &)> alice;
    std::function<bool(const SignVector &)> bob;
};

struct Measure {
    double value = 0.0;
    double std_error = 0.0;
};

/**
 * @brief hist[d] = #{(x, y) in A x B : x and y differ in d coordinates}.
 *
 * Computed exactly as an XOR correlation through two Walsh-Hadamard
 * transforms; all intermediate values are integers below 2^53.
 */
inline std::vector<double> distance_histogram(const Rectangle &r) {
    detail::require<ValidationError>(r.cube_dim().has_value(),
                                     "distance histogram needs a cube "
                                     "rectangle");
    const std::size_t n = *r.cube_dim();
    const std::size_t m = std::size_t{1} << n;
    std::vector<double> fa(m);
    std::vector<double> fb(m);
    for (std::size_t i = 0; i < m; ++i) {
        fa[i] = r.alice()[i];
        fb[i] = r.bob()[i];
    }
    fwht_inplace(std::span<double>(fa));
    fwht_inplace(std::span<double>(fb));
    for (std::size_t i = 0; i < m; ++i) {
        fa[i] *= fb[i];
    }
    fwht_inplace(std::span<double>(fa));
    std::vector<double> hist(n + 1, 0.0);
    for (std::size_t z = 0; z < m; ++z) {
        hist[static_cast<std::size_t>(std::popcount(z))] +=
            std::round(fa[z] / static_cast<double>(m));
    }
    return hist;
}

/// Probability under xi_p of one particular pair at Hamming distance d.
inline double xi_pair_probability(std::size_t n, double p, std::size_t d) {
    return std::ldexp(1.0, -static_cast<int>(n)) *
           std::pow((1.0 + p) / 2.0, static_cast<double>(n - d)) *
           std::pow((1.0 - p) / 2.0, static_cast<double>(d));
}

/// Exact xi_p(A x B) = sum over pairs of 2^{-N} ((1+p)/2)^{agree}
/// ((1-p)/2)^{disagree}. Requires |A|*|B| <= 2^24.
inline Measure rect_measure_exact(const Rectangle &r, double p) {
    detail::require<DomainError>(p >= -1.0 && p <= 1.0,
                                 "correlation p outside [-1,1]");
    detail::require<CapacityError>(
        static_cast<std::uint64_t>(r.alice_count()) * r.bob_count() <=
            kMaxEnumerablePairs,
        "rectangle too large for exact measure");
    const auto hist = distance_histogram(r);
    const std::size_t n = *r.cube_dim();
    double acc = 0.0;
    for (std::size_t d = 0; d <= n; ++d) {
        if (hist[d] != 0.0) {
            acc += hist[d] * xi_pair_probability(n, p, d);
        }
    }
    return {acc, 0.0};
}

namespace detail {
template <class Engine>
std::pair<std::uint64_t, std::uint64_t> xi_packed_pair(std::size_t n, double p,
                                                       Engine &rng) {
    std::uint64_t x = 0;
    std::uint64_t flips = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if ((rng() & 1U) != 0U) {
            x |= std::uint64_t{1} << i;
        }
        if (!bernoulli(rng, (1.0 + p) / 2.0)) {
            flips |= std::uint64_t{1} << i;
        }
    }
    return {x, x ^ flips};
}

inline Measure binomial_estimate(std::uint64_t hits, std::uint64_t samples) {
    const double f = static_cast<double>(hits) / static_cast<double>(samples);
    return {f, std::sqrt(f * (1.0 - f) / static_cast<double>(samples))};
}
} // namespace detail

/// Monte Carlo estimate of xi_p(R) with its binomial standard error.
template <class Engine>
Measure rect_measure_mc(const Rectangle &r, double p, std::uint64_t samples,
                        Engine &rng) {
    detail::require<DomainError>(p >= -1.0 && p <= 1.0,
                                 "correlation p outside [-1,1]");
    detail::require<ValidationError>(r.cube_dim().has_value() && samples > 0,
                                     "MC measure needs a cube rectangle and "
                                     "samples > 0");
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        const auto [x, y] = detail::xi_packed_pair(*r.cube_dim(), p, rng);
        hits += r.contains(x, y) ? 1 : 0;
    }
    return detail::binomial_estimate(hits, samples);
}

template <class Engine>
Measure rect_measure_mc(const PredicateRectangle &r, double p,
                        std::uint64_t samples, Engine &rng) {
    detail::require<DomainError>(p >= -1.0 && p <= 1.0,
                                 "correlation p outside [-1,1]");
    detail::require<ValidationError>(r.n >= 1 && samples > 0,
                                     "MC measure needs N >= 1 and samples > 0");
    std::uint64_t hits = 0;
    std::vector<int> xs(r.n);
    std::vector<int> ys(r.n);
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < r.n; ++i) {
            xs[i] = (rng() & 1U) != 0U ? -1 : 1;
            ys[i] = bernoulli(rng, (1.0 + p) / 2.0) ? xs[i] : -xs[i];
        }
        const SignVector x(xs);
        const SignVector y(ys);
        hits += (r.alice(x) && r.bob(y)) ? 1 : 0;
    }
    return detail::binomial_estimate(hits, samples);
}

enum class MeasureMode { Exact, MonteCarlo };

/// Dispatching front end: exact enumeration or Monte Carlo.
template <class Engine>
Measure rect_measure(const Rectangle &r, double p, MeasureMode mode,
                     std::uint64_t samples, Engine &rng) {
    if (mode == MeasureMode::Exact) {
        return rect_measure_exact(r, p);
    }
    return rect_measure_mc(r, p, samples, rng);
}

} // namespace qcomm
