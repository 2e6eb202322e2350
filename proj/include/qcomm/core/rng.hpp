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

#include <cstdint>
#include <random>

namespace qcomm {

/// Engine used throughout the library. Every random operation takes the
/// engine by reference; nothing draws from a global source.
using Rng = std::mt19937_64;

inline constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/**
 * @brief Seed of the `stream`-th child of `master`.
 *
 * Split rule: child = splitmix64(master ^ splitmix64(stream)). Workers,
 * trials and codebook entries each get their own stream index, so results do
 * not depend on iteration order or on how work is partitioned.
 */
inline constexpr std::uint64_t derive_seed(std::uint64_t master,
                                           std::uint64_t stream) noexcept {
    return splitmix64(master ^ splitmix64(stream));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t stream) {
    return Rng{derive_seed(master, stream)};
}

/**
 * @brief Counter-based splitmix64 engine: free to seed, so it suits
 * per-item streams (one per codeword) where seeding an mt19937_64 would
 * dominate the cost.
 */
class SplitMixEngine {
  public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMixEngine(std::uint64_t seed) noexcept
        : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    constexpr result_type operator()() noexcept {
        const std::uint64_t out = splitmix64(state_);
        state_ += 0x9E3779B97F4A7C15ULL;
        return out;
    }

  private:
    std::uint64_t state_;
};

/// Engine adaptor that counts how many words were drawn. Used to audit that
/// an operation consumes randomness only from the engine it is handed.
template <class Engine = Rng> class CountingEngine {
  public:
    using result_type = typename Engine::result_type;

    explicit CountingEngine(std::uint64_t seed) : engine_(seed) {}

    static constexpr result_type min() { return Engine::min(); }
    static constexpr result_type max() { return Engine::max(); }

    result_type operator()() {
        ++draws_;
        return engine_();
    }

    [[nodiscard]] std::uint64_t draws() const noexcept { return draws_; }

  private:
    Engine engine_;
    std::uint64_t draws_ = 0;
};

template <class Engine> inline double uniform01(Engine &rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

template <class Engine> inline bool bernoulli(Engine &rng, double prob) {
    return uniform01(rng) < prob;
}

} // namespace qcomm
