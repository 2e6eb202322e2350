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
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qcomm/core/errors.hpp"

namespace qcomm {

/// True iff `n` is a positive power of two.
inline constexpr bool is_pow2(std::size_t n) noexcept {
    return n != 0 && (n & (n - 1)) == 0;
}

inline std::size_t log2_exact(std::size_t n) {
    detail::require<DimensionError>(is_pow2(n),
                                    "length " + std::to_string(n) +
                                        " is not a power of two");
    return static_cast<std::size_t>(std::countr_zero(n));
}

/// Mod-2 dot product of the binary expansions of `s` and `x`.
inline constexpr int dot_parity(std::uint64_t s, std::uint64_t x) noexcept {
    return std::popcount(s & x) & 1;
}

/**
 * @brief A string in {-1,+1}^N.
 *
 * Used both as a boolean-function table (N = 2^n, entry x holds h(x)) and as a
 * plain sign string. Bit i of a packed index is 1 iff entry i is -1.
 */
class SignVector {
  public:
    SignVector() = default;

    explicit SignVector(std::vector<int> entries) {
        detail::require<ValidationError>(!entries.empty(),
                                         "sign vector must be non-empty");
        entries_.reserve(entries.size());
        for (int e : entries) {
            detail::require<ValidationError>(e == 1 || e == -1,
                                             "sign vector entries must be +-1");
            entries_.push_back(static_cast<std::int8_t>(e));
        }
    }

    static SignVector constant(std::size_t n, int value = 1) {
        return SignVector(std::vector<int>(n, value));
    }

    /// Inverse of `packed()`; requires n <= 64.
    static SignVector from_packed(std::uint64_t bits, std::size_t n) {
        detail::require<DimensionError>(n >= 1 && n <= 64,
                                        "packed sign vectors hold 1..64 entries");
        std::vector<int> e(n);
        for (std::size_t i = 0; i < n; ++i) {
            e[i] = ((bits >> i) & 1U) != 0U ? -1 : 1;
        }
        return SignVector(std::move(e));
    }

    [[nodiscard]] std::uint64_t packed() const {
        detail::require<DimensionError>(size() <= 64,
                                        "only vectors of length <= 64 pack");
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < size(); ++i) {
            if (entries_[i] < 0) {
                bits |= std::uint64_t{1} << i;
            }
        }
        return bits;
    }

    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] int operator[](std::size_t i) const noexcept {
        return entries_[i];
    }
    void flip(std::size_t i) noexcept {
        entries_[i] = static_cast<std::int8_t>(-entries_[i]);
    }
    void set(std::size_t i, int value) {
        detail::require<ValidationError>(value == 1 || value == -1,
                                         "sign vector entries must be +-1");
        entries_[i] = static_cast<std::int8_t>(value);
    }

    [[nodiscard]] std::span<const std::int8_t> entries() const noexcept {
        return entries_;
    }

    [[nodiscard]] std::vector<int> to_ints() const {
        return {entries_.begin(), entries_.end()};
    }

    [[nodiscard]] SignVector negated() const {
        SignVector out = *this;
        for (auto &e : out.entries_) {
            e = static_cast<std::int8_t>(-e);
        }
        return out;
    }

    friend bool operator==(const SignVector &, const SignVector &) = default;

  private:
    std::vector<std::int8_t> entries_;
};

/// <x,y> = sum_i x_i y_i.
inline long inner_product(const SignVector &x, const SignVector &y) {
    detail::require<DimensionError>(x.size() == y.size(),
                                    "inner product of unequal lengths");
    long acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += x[i] * y[i];
    }
    return acc;
}

/// Pointwise product (fg)(x) = f(x) g(x).
inline SignVector pointwise(const SignVector &f, const SignVector &g) {
    detail::require<DimensionError>(f.size() == g.size(),
                                    "pointwise product of unequal lengths");
    std::vector<int> e(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        e[i] = f[i] * g[i];
    }
    return SignVector(std::move(e));
}

/// Concatenation (x, tail).
inline SignVector concat(const SignVector &head, const SignVector &tail) {
    std::vector<int> e = head.to_ints();
    const auto t = tail.to_ints();
    e.insert(e.end(), t.begin(), t.end());
    return SignVector(std::move(e));
}

template <class Engine>
SignVector random_sign_vector(std::size_t n, Engine &rng) {
    std::vector<int> e(n);
    for (auto &v : e) {
        v = (rng() & 1U) != 0U ? -1 : 1;
    }
    return SignVector(std::move(e));
}

} // namespace qcomm
