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


#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "qcomm/core/distribution.hpp"
#include "qcomm/core/haar.hpp"
#include "qcomm/core/measurement.hpp"
#include "qcomm/core/special.hpp"
#include "qcomm/core/walsh_hadamard.hpp"
#include "support/oracles.hpp"

using namespace qcomm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("walsh_hadamard small tables", "[core]") {
    const auto c = walsh_hadamard(SignVector({1, 1, 1, 1}));
    CHECK(c == std::vector<double>{1.0, 0.0, 0.0, 0.0});
    const auto p = walsh_hadamard(SignVector({1, -1}));
    CHECK(p == std::vector<double>{0.0, 1.0});
}

TEST_CASE("walsh_hadamard rejects non power of two", "[core]") {
    CHECK_THROWS_AS(walsh_hadamard(SignVector({1, 1, 1})), DimensionError);
}

TEST_CASE("walsh_hadamard matches the double-sum oracle at n=3", "[core]") {
    Rng rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        const auto h = random_sign_vector(8, rng);
        const auto fast = walsh_hadamard(h);
        // the oracle squares the coefficient; compare with g = 1
        const auto sq = oracle::fourier_sampling_pmf(
            h.to_ints(), std::vector<int>(8, 1));
        for (std::size_t s = 0; s < 8; ++s) {
            double direct = 0.0;
            for (std::size_t x = 0; x < 8; ++x) {
                direct += (oracle::parity_of_and(s, x, 3) ? -1 : 1) * h[x];
            }
            CHECK_THAT(fast[s], WithinAbs(direct / 8.0, 1e-12));
            CHECK_THAT(fast[s] * fast[s], WithinAbs(sq[s], 1e-12));
        }
    }
}

TEST_CASE("Parseval for every table up to length 1024", "[core][property]") {
    Rng rng(12);
    for (std::size_t n = 1; n <= 1024; n *= 2) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto c = walsh_hadamard(random_sign_vector(n, rng));
            double total = 0.0;
            for (double v : c) {
                total += v * v;
            }
            CHECK_THAT(total, WithinAbs(1.0, 1e-10));
        }
    }
}

TEST_CASE("unnormalized transform applied twice scales by 2^n",
          "[core][property]") {
    Rng rng(13);
    for (std::size_t n = 2; n <= 256; n *= 2) {
        const auto h = random_sign_vector(n, rng);
        std::vector<long> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = h[i];
        }
        fwht_inplace(std::span<long>(w));
        fwht_inplace(std::span<long>(w));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(w[i] == static_cast<long>(n) * h[i]);
        }
    }
}

TEST_CASE("sign vector packing round trip", "[core]") {
    Rng rng(14);
    for (int rep = 0; rep < 100; ++rep) {
        const auto v = random_sign_vector(1 + rep % 64, rng);
        CHECK(SignVector::from_packed(v.packed(), v.size()) == v);
    }
    CHECK_THROWS_AS(SignVector({1, 0}), ValidationError);
    CHECK(inner_product(SignVector({1, -1, 1}), SignVector({1, 1, -1})) == -1);
    CHECK(concat(SignVector({1}), SignVector({-1})) == SignVector({1, -1}));
}

TEST_CASE("l1_distance examples", "[core]") {
    const auto a = OutcomeDistribution(std::vector<double>{0.5, 0.5});
    const auto b = OutcomeDistribution(std::vector<double>{0.75, 0.25});
    CHECK(l1_distance(a, a) == 0.0);
    CHECK(l1_distance(OutcomeDistribution::point_mass(0, 2),
                      OutcomeDistribution::point_mass(1, 2)) == 2.0);
    CHECK_THAT(l1_distance(a, b), WithinAbs(0.5, 1e-15));
    // indices past the end read as zero
    CHECK(l1_distance(OutcomeDistribution::point_mass(0, 1),
                      OutcomeDistribution::point_mass(0, 4)) == 0.0);
}

TEST_CASE("l1_distance is a metric", "[core][property]") {
    Rng rng(15);
    auto draw = [&]() {
        std::vector<double> p(6);
        double t = 0.0;
        for (auto &v : p) {
            v = uniform01(rng);
            t += v;
        }
        for (auto &v : p) {
            v /= t;
        }
        return OutcomeDistribution(p);
    };
    for (int rep = 0; rep < 500; ++rep) {
        const auto a = draw();
        const auto b = draw();
        const auto c = draw();
        CHECK(l1_distance(a, b) == l1_distance(b, a));
        CHECK(l1_distance(a, c) <= l1_distance(a, b) + l1_distance(b, c) + 1e-15);
        CHECK(l1_distance(a, b) <= 2.0);
    }
}

TEST_CASE("distribution validation and clamping", "[core]") {
    CHECK_THROWS_AS(OutcomeDistribution(std::vector<double>{0.5, 0.4}),
                    ValidationError);
    CHECK_THROWS_AS(OutcomeDistribution(std::vector<double>{1.1, -0.1}),
                    ValidationError);
    const OutcomeDistribution d(std::vector<double>{1.0 + 5e-13, -5e-13});
    CHECK(d[1] == 0.0);
}

TEST_CASE("haar_random_state", "[core]") {
    Rng rng(16);
    CHECK_THROWS_AS(haar_random_state(0, rng), DimensionError);
    const auto one = haar_random_state(1, rng);
    CHECK_THAT(std::abs(one[0]), WithinAbs(1.0, 1e-12));
    const std::size_t samples = 100000;
    double mean = 0.0;
    double sq = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double v = std::norm(haar_random_state(4, rng)[0]);
        mean += v;
        sq += v * v;
    }
    mean /= samples;
    const double var = sq / samples - mean * mean;
    CHECK(std::abs(mean - 0.25) <= 3.0 * std::sqrt(var / samples));
}

TEST_CASE("Haar overlap survival matches (1-x)^(N-1)", "[core][property]") {
    Rng rng(17);
    const std::size_t samples = 100000;
    for (std::size_t n : {2, 4, 8, 16}) {
        const PureState fixed = PureState::basis(n, 0);
        std::vector<double> ov(samples);
        for (auto &v : ov) {
            v = fidelity(fixed, haar_random_state(n, rng));
        }
        for (int i = 1; i <= 9; ++i) {
            const double x = i / 10.0;
            const double expect = std::pow(1.0 - x, static_cast<double>(n - 1));
            double hits = 0.0;
            for (double v : ov) {
                hits += v >= x ? 1.0 : 0.0;
            }
            const double sigma = std::sqrt(expect * (1 - expect) / samples);
            CHECK(std::abs(hits / samples - expect) <= 3.0 * sigma + 1e-12);
        }
    }
}

TEST_CASE("haar_unitary is unitary", "[core]") {
    Rng rng(18);
    const CMatrix u = haar_unitary(6, rng);
    CHECK((u.adjoint() * u - CMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("pure state canonicalization and distances", "[core]") {
    CVector v(2);
    v << Complex(0.0, 0.6), Complex(0.8, 0.0);
    const PureState s(v);
    const PureState c = s.canonicalized();
    CHECK(c.is_canonical());
    CHECK_THAT(fidelity(s, c), WithinAbs(1.0, 1e-15));
    CHECK_THAT(trace_norm_distance(PureState::basis(2, 0), PureState::basis(2, 1)),
               WithinAbs(2.0, 1e-15));
    CHECK_THROWS_AS(PureState(CVector::Ones(2)), ValidationError);
}

TEST_CASE("measurement validation", "[core]") {
    CMatrix half = CMatrix::Identity(2, 2) * 0.5;
    CHECK_THROWS_AS(Measurement::projective(half), ValidationError);
    CHECK_THROWS_AS(Measurement::povm({half}), ValidationError);
    Rng rng(19);
    const auto m = random_povm(4, 3, rng);
    CHECK(m.outcomes() == 3);
}

TEST_CASE("binary entropy", "[core]") {
    CHECK_THAT(binary_entropy(0.5), WithinAbs(std::numbers::ln2, 1e-15));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    const double direct = -0.25 * std::log(0.25) - 0.75 * std::log(0.75);
    CHECK_THAT(binary_entropy(0.25), WithinAbs(direct, 1e-14));
    CHECK_THROWS_AS(binary_entropy(1.5), DomainError);
}

TEST_CASE("binomial bounds", "[core]") {
    const auto c = check_binomial_bounds(10, 5);
    CHECK(c.holds);
    CHECK_THAT(c.exact, WithinRel(252.0, 1e-12));
    CHECK_THAT(c.lower, WithinAbs(228.97, 0.01));
    CHECK_THAT(c.upper, WithinAbs(258.37, 0.01));
    const auto two = check_binomial_bounds(2, 1);
    CHECK(two.holds);
    CHECK_THAT(two.lower, WithinRel(2.0, 1e-12));
    CHECK_THROWS_AS(check_binomial_bounds(5, 0), DomainError);
    CHECK_THROWS_AS(check_binomial_bounds(5, 5), DomainError);
}

TEST_CASE("binomial bounds hold for all N <= 200", "[core][property]") {
    for (std::int64_t n = 2; n <= 200; ++n) {
        for (std::int64_t k = 1; k < n; ++k) {
            REQUIRE(check_binomial_bounds(n, k).holds);
        }
    }
}

TEST_CASE("derived seeds are order independent", "[core]") {
    CHECK(derive_seed(1, 2) == derive_seed(1, 2));
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
    CHECK(derive_seed(1, 2) != derive_seed(2, 2));
    Rng a = make_rng(5, 9);
    Rng b = make_rng(5, 9);
    CHECK(a() == b());
}
