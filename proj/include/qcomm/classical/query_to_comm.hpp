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

#include <cstddef>
#include <utility>

#include "qcomm/core/errors.hpp"
#include "qcomm/core/sign_vector.hpp"
#include "qcomm/protocol/run.hpp"

namespace qcomm {

/**
 * @brief Oracle for h = f * g held jointly by Alice (f) and Bob (g).
 *
 * Each query at position x costs two bits: Alice sends [f(x) = -1], then Bob
 * sends [g(x) = -1], after which both know h(x). Query positions come from
 * the algorithm's shared randomness and earlier answers, so both parties can
 * run it in lockstep.
 */
class TwoPartyOracle {
  public:
    TwoPartyOracle(const SignVector &f, const SignVector &g,
                   ProtocolRun &run)
        : f_(f), g_(g), run_(run) {
        detail::require<ValidationError>(f.size() == g.size(),
                                         "f and g have different lengths");
    }

    [[nodiscard]] std::size_t size() const noexcept { return f_.size(); }

    int operator()(std::size_t x) {
        detail::require<DomainError>(x < f_.size(), "query out of range");
        run_.send_bit(Party::Alice, f_[x] < 0);
        run_.send_bit(Party::Bob, g_[x] < 0);
        ++queries_;
        return f_[x] * g_[x];
    }

    [[nodiscard]] std::size_t queries() const noexcept { return queries_; }

  private:
    const SignVector &f_;
    const SignVector &g_;
    ProtocolRun &run_;
    std::size_t queries_ = 0;
};

/// Oracle over a single table h, for running an algorithm directly.
class DirectOracle {
  public:
    explicit DirectOracle(const SignVector &h) : h_(h) {}

    [[nodiscard]] std::size_t size() const noexcept { return h_.size(); }

    int operator()(std::size_t x) {
        detail::require<DomainError>(x < h_.size(), "query out of range");
        ++queries_;
        return h_[x];
    }

    [[nodiscard]] std::size_t queries() const noexcept { return queries_; }

  private:
    const SignVector &h_;
    std::size_t queries_ = 0;
};

template <class Output> struct QueryCommRun {
    Output output;
    std::size_t queries;
    ProtocolRun run;
};

/**
 * @brief Runs a query algorithm over fg as a two-party protocol.
 *
 * `alg(oracle, rng)` must only touch its input through `oracle(x)` (which
 * returns +-1) and draw randomness only from `rng`. Total bits are
 * 2 * queries.
 */
template <class Algorithm, class Engine>
auto query_to_comm(Algorithm &&alg, const SignVector &f, const SignVector &g,
                   Engine &rng) {
    using Output = decltype(alg(std::declval<TwoPartyOracle &>(), rng));
    ProtocolRun run;
    TwoPartyOracle oracle(f, g, run);
    Output out = alg(oracle, rng);
    const std::size_t q = oracle.queries();
    return QueryCommRun<Output>{std::move(out), q, std::move(run)};
}

/// Output of `alg` run directly on the table h, with its query count.
template <class Algorithm, class Engine>
auto run_direct(Algorithm &&alg, const SignVector &h, Engine &rng) {
    DirectOracle oracle(h);
    auto out = alg(oracle, rng);
    return std::pair{std::move(out), oracle.queries()};
}

} // namespace qcomm
