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

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "qcomm/lab/calculus.hpp"
#include "qcomm/lab/gaussian.hpp"
#include "qcomm/lab/haar_laws.hpp"
#include "qcomm/lab/skew.hpp"
#include "qcomm/lab/verdict.hpp"
#include "qcomm/lab/xi.hpp"
#include "support/oracles.hpp"

using namespace qcomm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<double> p_grid() {
    std::vector<double> ps;
    for (int i = -9; i <= 9; ++i) {
        ps.push_back(i / 10.0);
    }
    return ps;
}

} // namespace

TEST_CASE("xi_sample extremes", "[lab]") {
    Rng rng(61);
    for (int t = 0; t < 100; ++t) {
        const auto [x, y] = xi_sample(XiParams(10, 1.0), rng);
        CHECK(x == y);
        const auto [u, v] = xi_sample(XiParams(10, -1.0), rng);
        CHECK(v == u.negated());
    }
    CHECK_THROWS_AS(XiParams(4, 1.5), DomainError);
}

TEST_CASE("xi_sample per-coordinate agreement", "[lab]") {
    Rng rng(62);
    const std::size_t samples = 1000000;
    std::vector<std::size_t> agree(6, 0);
    std::vector<std::size_t> plus(6, 0);
    for (std::size_t s = 0; s < samples; ++s) {
        const auto [x, y] = xi_sample(XiParams(6, 0.4), rng);
        for (std::size_t i = 0; i < 6; ++i) {
            agree[i] += x[i] == y[i] ? 1 : 0;
            plus[i] += x[i] > 0 ? 1 : 0;
        }
    }
    const double sigma = std::sqrt(0.7 * 0.3 / samples);
    const double half = std::sqrt(0.25 / samples);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(std::abs(static_cast<double>(agree[i]) / samples - 0.7) <=
              3.0 * sigma);
        CHECK(std::abs(static_cast<double>(plus[i]) / samples - 0.5) <=
              3.0 * half);
    }
}

TEST_CASE("xi overlap pmf examples", "[lab]") {
    CHECK_THAT(xi_overlap_pmf(2, 0.0, 0), WithinAbs(0.5, 1e-15));
    CHECK_THAT(xi_overlap_pmf(2, 1.0, 2), WithinAbs(1.0, 1e-15));
    CHECK_THAT(xi_overlap_pmf(4, 0.5, 2), WithinAbs(27.0 / 64.0, 1e-15));
    CHECK(xi_overlap_pmf(4, 0.5, 1) == 0.0);
    CHECK(xi_overlap_pmf(4, 0.5, 6) == 0.0);
}

TEST_CASE("xi overlap pmf matches flip enumeration", "[lab][property]") {
    for (std::size_t n = 1; n <= 10; ++n) {
        for (double p : {-0.7, 0.0, 0.25, 0.9}) {
            for (long d = -static_cast<long>(n); d <= static_cast<long>(n);
                 ++d) {
                CHECK_THAT(xi_overlap_pmf(n, p, d),
                           WithinAbs(oracle::overlap_pmf_by_flips(n, p, d),
                                     1e-13));
            }
        }
    }
}

TEST_CASE("xi overlap pmf normalization and expected squared overlap", "[lab][property]") {
    for (std::size_t n = 1; n <= 64; ++n) {
        for (double p : p_grid()) {
            double total = 0.0;
            for (double v : xi_overlap_law(n, p)) {
                total += v;
            }
            REQUIRE_THAT(total, WithinAbs(1.0, 1e-10));
            REQUIRE_THAT(expected_squared_overlap_by_pmf(n, p),
                         WithinAbs(expected_squared_overlap(n, p), 1e-12));
        }
    }
}

TEST_CASE("expected squared overlap examples", "[lab]") {
    CHECK_THAT(expected_squared_overlap(8, 0.0), WithinAbs(1.0 / 8.0, 1e-15));
    CHECK_THAT(expected_squared_overlap(8, 1.0), WithinAbs(1.0, 1e-15));
    CHECK_THAT(expected_squared_overlap(4, 0.5), WithinAbs(7.0 / 16.0, 1e-15));
    CHECK_THAT(expected_squared_overlap_by_pmf(4, 0.5),
               WithinAbs(7.0 / 16.0, 1e-15));
}

TEST_CASE("shift map", "[lab]") {
    Rng rng(63);
    for (int t = 0; t < 50; ++t) {
        const auto [x, y] = xi_sample(XiParams(8, -0.5), rng);
        const auto [xs, ys] = shift_pairs(x, y, 1.0, rng);
        CHECK(xs == ys);
    }
    CHECK_THAT(shifted_correlation(-1.0 / 3.0, 0.25), WithinAbs(0.0, 1e-16));
    CHECK_THROWS_AS(shift_pairs(SignVector::constant(1), SignVector::constant(1), 1.5, rng),
                    DomainError);

    const std::size_t samples = 200000;
    const double target = (1.0 + shifted_correlation(-0.2, 0.3)) / 2.0;
    std::vector<std::size_t> agree(8, 0);
    for (std::size_t s = 0; s < samples; ++s) {
        const auto [x, y] = xi_sample(XiParams(8, -0.2), rng);
        const auto [xs, ys] = shift_pairs(x, y, 0.3, rng);
        for (std::size_t i = 0; i < 8; ++i) {
            agree[i] += xs[i] == ys[i] ? 1 : 0;
        }
    }
    const double sigma = std::sqrt(target * (1 - target) / samples);
    for (auto a : agree) {
        CHECK(std::abs(static_cast<double>(a) / samples - target) <=
              3.0 * sigma);
    }
}

TEST_CASE("shift map semigroup", "[lab][property]") {
    for (double p : p_grid()) {
        for (double q1 : {0.0, 0.1, 0.5, 0.9, 1.0}) {
            for (double q2 : {0.0, 0.3, 0.7, 1.0}) {
                const double two = shifted_correlation(shifted_correlation(p, q1), q2);
                const double one =
                    shifted_correlation(p, q1 + q2 - q1 * q2);
                CHECK_THAT(two, WithinAbs(one, 1e-15));
                CHECK_THAT(shifted_agreement(shifted_correlation(p, q1), q2),
                           WithinAbs((1.0 + two) / 2.0, 1e-15));
            }
        }
    }
}

TEST_CASE("xi prime pad and sampler", "[lab]") {
    const auto [px, py] = xi_prime_pad(6);
    CHECK(inner_product(px, py) == 0);
    CHECK_THROWS_AS(xi_prime_pad(5), ValidationError);
    Rng rng(64);
    for (int t = 0; t < 20; ++t) {
        const auto [x, y] = xi_prime_sample(6, 1.0, rng);
        CHECK(x.size() == 12);
        CHECK(inner_product(x, y) == 6);
    }
    for (double p : {0.0, 0.5}) {
        const std::size_t samples = 200000;
        std::vector<double> counts(17, 0.0);
        for (std::size_t s = 0; s < samples; ++s) {
            const auto [x, y] = xi_prime_sample(4, p, rng);
            counts[static_cast<std::size_t>(inner_product(x, y) + 8)] += 1.0;
        }
        double l1 = 0.0;
        for (long d = -8; d <= 8; ++d) {
            l1 += std::abs(counts[static_cast<std::size_t>(d + 8)] / samples -
                           xi_overlap_pmf(4, p, d));
        }
        CHECK(l1 <= 0.01);
    }
}

TEST_CASE("xi prime overlap law equals xi overlap law", "[lab][property]") {
    for (std::size_t n : {2, 4, 10, 64, 100}) {
        for (double p : p_grid()) {
            for (long d = -2 * static_cast<long>(n); d <= 2 * static_cast<long>(n);
                 ++d) {
                REQUIRE(xi_prime_overlap_pmf(n, p, d) == xi_overlap_pmf(n, p, d));
            }
        }
    }
}

TEST_CASE("technical bound ratio", "[lab]") {
    CHECK_THAT(techbound_ratio(100, 0.0, 0),
               WithinRel(oracle::frozen::kTechboundN100, 1e-12));
    const long double by_binomials = 100.0L * std::log(2.0L) +
                                     log_binomial(100, 50) -
                                     log_binomial(200, 100);
    CHECK_THAT(techbound_ratio(100, 0.0, 0),
               WithinRel(static_cast<double>(std::exp(by_binomials)), 1e-12));
    CHECK_THROWS_AS(techbound_ratio(7, 0.0, 1), ValidationError);
    const auto sweep = techbound_sweep(100, techbound_p_grid());
    CHECK(std::isfinite(sweep.max_ratio));
    CHECK(sweep.in_hypothesis);
    CHECK_FALSE(techbound_sweep(100, {0.5}).in_hypothesis);
    CHECK(techbound_p_grid().size() == 21);
}

TEST_CASE("skew check on the full space", "[lab]") {
    Rng rng(65);
    for (double s : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
        SkewCheckConfig cfg;
        cfg.n = 8;
        cfg.b = 4.0;
        cfg.s = s;
        const auto r =
            skewed_anticoncentration_check(cfg, Rectangle::full_cube(8), rng);
        CHECK_THAT(r.lhs, WithinAbs(std::cosh(s), 1e-12));
        CHECK_THAT(r.rhs, WithinAbs(2.0 / 3.0, 1e-15));
        CHECK(r.holds);
        CHECK_FALSE(r.skipped);
    }
}

TEST_CASE("skew check agrees with pair enumeration", "[lab][property]") {
    Rng rng(66);
    SkewCheckConfig cfg;
    cfg.n = 6;
    cfg.b = 5.0;
    cfg.delta = 0.5;
    for (int rep = 0; rep < 30; ++rep) {
        cfg.s = -3.0 + rep % 7;
        const auto r = random_set_rectangle(6, 0.5, 0.3, rng);
        std::vector<std::uint8_t> a(r.alice().begin(), r.alice().end());
        std::vector<std::uint8_t> b(r.bob().begin(), r.bob().end());
        const double p = std::sqrt(5.0 / 6.0);
        const double lhs =
            0.5 * (std::exp(cfg.s) * oracle::rectangle_measure(6, a, b, -p) +
                   std::exp(-cfg.s) * oracle::rectangle_measure(6, a, b, p));
        const auto res = skewed_anticoncentration_check(cfg, r, rng);
        CHECK_THAT(res.lhs, WithinAbs(lhs, 1e-13));
        CHECK_THAT(res.rhs, WithinAbs(2.0 / 3.0 *
                                          oracle::rectangle_measure(6, a, b, 0.0),
                                      1e-13));
    }
}

TEST_CASE("skew check skips small rectangles and validates config", "[lab]") {
    Rng rng(67);
    SkewCheckConfig cfg;
    const auto tiny = hamming_ball_rectangle(12, 0, 0, 0, 0);
    const auto r = skewed_anticoncentration_check(cfg, tiny, rng);
    CHECK(r.skipped);
    CHECK(r.holds);
    cfg.b = 20.0;
    CHECK_THROWS_AS(skewed_anticoncentration_check(cfg, tiny, rng), DomainError);
    SkewCheckConfig small;
    CHECK_THROWS_AS(
        skewed_anticoncentration_check(small, Rectangle::full_cube(4), rng),
        DimensionError);
}

TEST_CASE("skew check Monte Carlo and predicate modes", "[lab]") {
    Rng rng(68);
    SkewCheckConfig cfg;
    cfg.n = 8;
    cfg.b = 6.0;
    cfg.s = 1.0;
    const auto r = hamming_ball_rectangle(8, 0, 4, 0, 5);
    const auto exact = skewed_anticoncentration_check(cfg, r, rng);
    cfg.mode = MeasureMode::MonteCarlo;
    cfg.samples = 100000;
    const auto mc = skewed_anticoncentration_check(cfg, r, rng);
    CHECK(mc.tolerance > 0.0);
    CHECK(std::abs(mc.lhs - exact.lhs) <= mc.tolerance);
    auto minus_count = [](const SignVector &v) {
        const auto e = v.to_ints();
        return std::count(e.begin(), e.end(), -1);
    };
    const PredicateRectangle pred{
        8, [&](const SignVector &x) { return minus_count(x) <= 4; },
        [&](const SignVector &y) { return minus_count(y) <= 5; }};
    const auto pm = skewed_anticoncentration_check(cfg, pred, rng);
    CHECK(std::abs(pm.lhs - exact.lhs) <= pm.tolerance);
}

TEST_CASE("rectangle generators", "[lab]") {
    const auto all = (std::uint64_t{1} << 6) - 1;
    const auto ball = hamming_ball_rectangle(6, 0, 1, all, 6);
    CHECK(ball.alice_count() == 7);
    CHECK(ball.bob_count() == 64);
    const auto maj = threshold_rectangle(6, std::vector<int>(6, 1), 6,
                                         std::vector<int>(6, 1), -6);
    CHECK(maj.alice_count() == 1);
    CHECK(maj.bob_count() == 64);
    Rng rng(69);
    const auto leaves = protocol_leaf_rectangles(6, 3, 0.9, rng);
    CHECK(leaves.size() == 8);
    std::size_t covered = 0;
    for (const auto &r : leaves) {
        covered += r.alice_count() * r.bob_count();
    }
    CHECK(covered == 64 * 64);
    CHECK_FALSE(adversarial_rectangles(6).empty());
}

TEST_CASE("sign map", "[lab]") {
    CHECK(sign_map_p(1.0) == 1.0);
    CHECK_THAT(sign_map_p(1.0 / std::numbers::sqrt2), WithinAbs(0.5, 1e-15));
    CHECK_THAT(sign_map_p(0.0), WithinAbs(0.0, 1e-15));
    CHECK_THROWS_AS(sign_map_p(1.5), DomainError);
    Rng rng(70);
    const auto c = sign_map_check(6, 0.3, 200000, rng);
    CHECK(c.holds);
    CHECK(std::abs(c.mean_product - 0.3) < 0.01);
}

TEST_CASE("gaussian pairs have the requested correlation", "[lab]") {
    Rng rng(71);
    const GaussianXiParams g(4, -0.6);
    double xx = 0.0;
    double xy = 0.0;
    const int samples = 100000;
    for (int s = 0; s < samples; ++s) {
        const auto [x, y] = gaussian_xi_sample(g, rng);
        xx += x[0] * x[0];
        xy += x[0] * y[0];
    }
    CHECK(std::abs(xx / samples - 1.0) < 0.02);
    CHECK(std::abs(xy / samples + 0.6) < 0.02);
}

TEST_CASE("half-space checks", "[lab]") {
    const Halfspace h{{1.0, 0.0}, 0.0};
    CHECK_THAT(h.gaussian_measure(), WithinAbs(0.5, 1e-15));
    CHECK(h.contains({0.5, -3.0}));
    Rng rng(72);
    const auto r = halfspace_check(h, h, 0.3, 0.0, 1.0 / 3.0, 50000, rng);
    CHECK(r.holds);
    CHECK_THAT(r.rhs, WithinAbs(2.0 / 3.0 * 0.25, 1e-15));
}

TEST_CASE("F function reference values", "[lab]") {
    const auto f0 = f_function_checks(0.0);
    CHECK(f0.f == 0.0);
    CHECK(f0.f_second == -2.0);
    CHECK(f0.boundary);
    CHECK(f0.bound_holds);
    const std::vector<std::array<long double, 3>> refs = {
        {0.1L, oracle::frozen::kF01, oracle::frozen::kF01Second},
        {0.3L, oracle::frozen::kF03, oracle::frozen::kF03Second},
        {0.45L, oracle::frozen::kF045, oracle::frozen::kF045Second},
        {0.499L, oracle::frozen::kF0499, oracle::frozen::kF0499Second}};
    for (const auto &[x, f, f2] : refs) {
        const double xd = static_cast<double>(x);
        CHECK_THAT(static_cast<double>(f_function(xd)),
                   WithinRel(static_cast<double>(f), 1e-13));
        CHECK_THAT(static_cast<double>(f_second_closed(xd)),
                   WithinRel(static_cast<double>(f2), 1e-13));
        const auto c = f_function_checks(xd);
        CHECK(c.bound_holds);
        CHECK(c.fd_error <= 1e-6);
    }
    CHECK(f_function_checks(0.3).f <= -0.09);
    CHECK_THROWS_AS(f_function_checks(0.5), DomainError);
}

TEST_CASE("F bounds and finite differences on the grid", "[lab][property]") {
    for (int i = 1; i <= 4990; ++i) {
        const auto c = f_function_checks(i * 1e-4);
        REQUIRE(c.bound_holds);
        REQUIRE(c.fd_error <= 1e-6);
    }
}

TEST_CASE("min absolute error of S_m^2", "[lab]") {
    CHECK(appendix_b_min_abs_error(1) == 0.0);
    CHECK(appendix_b_min_abs_error(2) == 2.0);
    for (std::size_t m = 1; m <= 12; ++m) {
        CHECK_THAT(appendix_b_min_abs_error(m),
                   WithinAbs(oracle::min_abs_error_by_enumeration(m), 1e-12));
    }
    CHECK_THAT(appendix_b_min_abs_error(8), WithinAbs(6.1875, 1e-12));
    double lo = INFINITY;
    double hi = 0.0;
    for (std::size_t m = 8; m <= 64; m *= 2) {
        const double r = appendix_b_min_abs_error(m) / static_cast<double>(m);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(hi / lo <= 2.0);
    CHECK_THROWS_AS(appendix_b_min_abs_error(65), DomainError);
}

TEST_CASE("random projector tail", "[lab]") {
    CHECK(randomproj_tail_bound(4, 0.0) == 1.0);
    CHECK_THAT(randomproj_tail_bound(4, 1.0),
               WithinRel(oracle::frozen::kTailN16R4D1, 1e-14));
    Rng rng(73);
    const auto full = randomproj_tail_check(8, 8, 0.5, 10000, rng);
    CHECK(full.empirical_tail == 0.0);
    const auto zero = randomproj_tail_check(8, 2, 0.0, 1000, rng);
    CHECK(zero.holds);
    const auto t = randomproj_tail_check(16, 4, 1.0, 100000, rng);
    CHECK(t.holds);
    CHECK(t.empirical_tail <= 0.26359713811572677 + 3.0 * t.std_error);
    CHECK_THROWS_AS(randomproj_tail_check(4, 5, 1.0, 10, rng), DomainError);
}

TEST_CASE("overlap law check", "[lab]") {
    Rng rng(74);
    const auto c = overlap_law_check(4, 100000, {0.1, 0.3, 0.5}, rng);
    CHECK(c.ks < 0.01);
    CHECK(c.max_point_dev <= 4.0);
    CHECK_THAT(overlap_survival(4, 0.5), WithinAbs(0.125, 1e-15));
}

TEST_CASE("verdict serialization", "[lab]") {
    Verdict v;
    v.check = "fact1";
    v.params = {{"N", 4}};
    v.lhs = 0.4375;
    v.rhs = 0.4375;
    v.holds = true;
    v.seed = 9;
    nlohmann::json j = v;
    const auto back = j.get<Verdict>();
    CHECK(back.check == "fact1");
    CHECK(back.seed == 9);
    std::ostringstream csv;
    write_verdicts_csv(csv, {v});
    CHECK(csv.str().rfind("check,params,lhs,rhs,margin,holds,samples,seed\n", 0) == 0);
    std::ostringstream jl;
    write_verdicts_jsonl(jl, {v, v});
    const std::string lines = jl.str();
    CHECK(std::count(lines.begin(), lines.end(), '\n') == 2);
}
