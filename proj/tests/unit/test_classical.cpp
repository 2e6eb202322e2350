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
#include <vector>

#include "qcomm/classical/ddfs_reduction.hpp"
#include "qcomm/classical/grid_net.hpp"
#include "qcomm/classical/promise.hpp"
#include "qcomm/classical/query_to_comm.hpp"
#include "qcomm/classical/raz.hpp"
#include "qcomm/classical/sqrt_sampler.hpp"
#include "qcomm/quantum/instance_io.hpp"
#include "support/oracles.hpp"

using namespace qcomm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("grid codec bit accounting", "[classical]") {
    for (std::size_t b = GridNetCodec::kMinBits; b <= 12; ++b) {
        const GridNetCodec c(1, 0.2, b);
        const double expect = std::ceil(std::log2(2.0 / c.quant_step()));
        CHECK(c.bits_per_amplitude() == static_cast<std::size_t>(expect));
        CHECK(c.total_bits() == 4 * c.bits_per_amplitude());
    }
    const auto cal = GridNetCodec::calibrated(1, 0.2);
    CHECK(cal.bits_per_amplitude() == 6);
    CHECK(cal.total_bits() == 24);
    CHECK_THROWS_AS(GridNetCodec(1, 0.0, 6), DomainError);
    CHECK_THROWS_AS(GridNetCodec(1, 0.2, 2), DomainError);
}

TEST_CASE("grid codec round trips lattice points exactly", "[classical]") {
    const GridNetCodec c(2, 0.2, 6);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto e = PureState::basis(4, i);
        const auto d = c.decode(c.encode(e));
        CHECK(trace_norm_distance(e, d) == 0.0);
    }
    CHECK_THROWS_AS(c.decode(std::vector<std::uint8_t>(3, 0)), EncodingError);
    CHECK_THROWS_AS(c.encode(PureState::basis(2, 0)), DimensionError);
}

TEST_CASE("calibrated grid codec covers Haar states", "[classical]") {
    const auto c = GridNetCodec::calibrated(1, 0.2);
    Rng rng(41);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const auto psi = haar_random_state(2, rng);
        worst = std::max(worst, trace_distance(psi, c.decode(c.encode(psi))));
    }
    CHECK(worst <= 0.2);
    CHECK(c.analytic_bound() <= 0.2);
}

TEST_CASE("hex transport of grid codes", "[classical]") {
    const GridNetCodec c(1, 0.3, 7);
    Rng rng(42);
    const auto bits = c.encode(haar_random_state(2, rng));
    CHECK(hex_to_bits(bits_to_hex(bits), bits.size()) == bits);
    CHECK_THROWS_AS(hex_to_bits("zz", 8), EncodingError);
}

TEST_CASE("eps-net protocol", "[classical]") {
    Rng rng(43);
    const auto codec = GridNetCodec::calibrated(1, 0.2);
    const DqsInstance zero(PureState::basis(2, 0),
                           Measurement::computational_basis(2));
    const auto r0 = dqs_epsnet_protocol(zero, codec, rng);
    CHECK(r0.realized_pmf[0] == 1.0);
    CHECK(r0.outcome == 0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const DqsInstance inst(haar_random_state(2, rng),
                               Measurement::from_basis(haar_unitary(2, rng)));
        const auto r = dqs_epsnet_protocol(inst, codec, rng);
        CHECK(r.run.bits_sent() == codec.total_bits());
        worst = std::max(worst,
                         l1_distance(r.realized_pmf, dqs_distribution(inst)));
    }
    CHECK(worst <= 0.2);
    const DqsInstance wrong(PureState::basis(4, 0),
                            Measurement::computational_basis(4));
    CHECK_THROWS_AS(dqs_epsnet_protocol(wrong, codec, rng), ValidationError);
}

TEST_CASE("promise instances", "[classical]") {
    Rng rng(44);
    for (auto label : {VisLabel::Inside, VisLabel::Outside}) {
        const auto b = make_promise_instance(8, 2, label,
                                             PromiseFamily::Boundary, rng);
        CHECK_THAT(projector_value(b.psi, b.m.projector()),
                   WithinAbs(label == VisLabel::Inside ? 2.0 / 3.0 : 1.0 / 3.0,
                             1e-12));
        const auto e = make_promise_instance(8, 2, label,
                                             PromiseFamily::Extreme, rng);
        CHECK_THAT(projector_value(e.psi, e.m.projector()),
                   WithinAbs(label == VisLabel::Inside ? 1.0 : 0.0, 1e-12));
        CHECK(e.rank() == 2);
    }
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 1.0;
    CHECK_THROWS_AS(VisInstance(PureState::basis(2, 1),
                                Measurement::projective(m), VisLabel::Inside),
                    ValidationError);
    CHECK(family_from_name("boundary") == PromiseFamily::Boundary);
    CHECK_THROWS_AS(family_from_name("other"), ValidationError);
}

TEST_CASE("rank padding", "[classical]") {
    Rng rng(45);
    const auto half = make_promise_instance(8, 4, VisLabel::Inside,
                                            PromiseFamily::Boundary, rng);
    CHECK(pad_to_half_rank(half).psi.dim() == 8);

    const auto one = make_promise_instance(4, 1, VisLabel::Outside,
                                           PromiseFamily::Boundary, rng);
    const auto padded = pad_to_half_rank(one);
    CHECK(padded.psi.dim() == 8);
    CHECK(padded.rank() == 4);
    const CMatrix &mp = padded.m.projector();
    CHECK((mp * mp - mp).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THAT(projector_value(padded.psi, mp),
               WithinAbs(projector_value(one.psi, one.m.projector()), 1e-14));

    const VisInstance full(haar_random_state(3, rng),
                           Measurement::projective(CMatrix::Identity(3, 3)),
                           VisLabel::Inside);
    const auto pf = pad_to_half_rank(full);
    CHECK(pf.psi.dim() == 6);
    CHECK(pf.rank() == 3);
    CHECK_THAT(projector_value(pf.psi, pf.m.projector()), WithinAbs(1.0, 1e-12));
}

TEST_CASE("Raz protocol with a perfect codeword", "[classical]") {
    Rng rng(46);
    for (auto label : {VisLabel::Inside, VisLabel::Outside}) {
        const auto inst = pad_to_half_rank(make_promise_instance(
            8, 2, label, PromiseFamily::Extreme, rng));
        const RazCodebook cb(99, 64, inst.psi.dim(), {inst.psi});
        const auto r = raz_protocol(inst, cb);
        CHECK(r.index == 0);
        CHECK(r.bit == (label == VisLabel::Inside));
        CHECK(r.run.bits_sent() == 6);
        CHECK_THAT(r.overlap, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("Raz argmax ties go to the smallest index", "[classical]") {
    Rng rng(47);
    const auto inst = pad_to_half_rank(make_promise_instance(
        8, 2, VisLabel::Inside, PromiseFamily::Boundary, rng));
    const RazCodebook cb(5, 3, inst.psi.dim(), {inst.psi, inst.psi});
    CHECK(raz_protocol(inst, cb).index == 0);
    CHECK_THROWS_AS(RazCodebook(5, 0, 4), ValidationError);
    const RazCodebook single(5, 1, inst.psi.dim());
    CHECK(raz_protocol(inst, single).run.bits_sent() == 0);
}

TEST_CASE("Raz codebooks are seeded and nested", "[classical]") {
    const RazCodebook small(77, 8, 16);
    const RazCodebook large(77, 64, 16);
    for (std::uint64_t i = 0; i < 8; ++i) {
        CHECK(small.state(i).amplitudes() == large.state(i).amplitudes());
        CHECK_THAT(small.state(i).amplitudes().norm(), WithinAbs(1.0, 1e-12));
    }
    Rng rng(48);
    const auto psi = haar_random_state(16, rng);
    RazSearch inc;
    for (std::uint64_t k = 1; k <= 64; k *= 2) {
        raz_extend_search(psi, large, k, inc);
    }
    std::uint64_t best = 0;
    double best_ov = -1.0;
    for (std::uint64_t i = 0; i < 64; ++i) {
        const double ov = std::abs(overlap(large.state(i), psi));
        if (ov > best_ov) {
            best_ov = ov;
            best = i;
        }
    }
    CHECK(inc.best == best);
    CHECK(inc.scanned == 64);
}

TEST_CASE("Raz calibration with planted solutions finds K = 1",
          "[classical]") {
    RazExperiment ex;
    ex.trials_per_label = 20;
    ex.plant_solution = true;
    ex.seed = 3;
    const auto rows = calibrate_raz({8, 16}, ex);
    for (const auto &r : rows) {
        REQUIRE(r.min_k.has_value());
        CHECK(*r.min_k == 1);
        CHECK(r.at_min_k.success_rate() == 1.0);
    }
    CHECK_THROWS_AS(calibrate_raz({6}, ex), DomainError);
}

TEST_CASE("Raz calibration is monotone over small N", "[classical]") {
    RazExperiment ex;
    ex.trials_per_label = 500;
    ex.seed = 7;
    const auto rows = calibrate_raz({8, 16}, ex);
    REQUIRE(rows[0].min_k.has_value());
    REQUIRE(rows[1].min_k.has_value());
    CHECK(*rows[0].min_k <= *rows[1].min_k);
    CHECK(rows[1].padded_dim == 32);
    // a cap below the minimum leaves the row unresolved
    const auto capped = calibrate_raz({16}, ex, 2.0 / 3.0, 1);
    CHECK_FALSE(capped.front().min_k.has_value());
}

TEST_CASE("Wilson lower bound", "[classical]") {
    CHECK_THAT(wilson_lower_bound(700, 1000),
               WithinAbs(oracle::frozen::kWilson700of1000Lower, 1e-12));
    CHECK_THAT(wilson_lower_bound(340, 500),
               WithinAbs(oracle::frozen::kWilson340of500Lower, 1e-12));
    CHECK(wilson_lower_bound(0, 0) == 0.0);
}

TEST_CASE("fitted slope of a line", "[classical]") {
    CHECK_THAT(fitted_slope({1, 2, 3, 4}, {3, 5, 7, 9}), WithinAbs(2.0, 1e-12));
    CHECK_THROWS_AS(fitted_slope({1}, {1}), ValidationError);
}

namespace {

struct NoQueries {
    template <class Oracle, class Engine> int operator()(Oracle &, Engine &) const {
        return 0;
    }
};

// Reads three random positions and returns them with their answers.
struct ThreeQueryToy {
    template <class Oracle, class Engine>
    std::vector<int> operator()(Oracle &oracle, Engine &rng) const {
        std::uniform_int_distribution<std::size_t> pick(0, oracle.size() - 1);
        std::vector<int> out;
        for (int q = 0; q < 3; ++q) {
            const std::size_t x = pick(rng);
            out.push_back(static_cast<int>(x));
            out.push_back(oracle(x));
        }
        return out;
    }
};

} // namespace

TEST_CASE("query to communication accounting", "[classical]") {
    Rng rng(49);
    const auto f = random_sign_vector(4, rng);
    const auto g = random_sign_vector(4, rng);
    const auto none = query_to_comm(NoQueries{}, f, g, rng);
    CHECK(none.queries == 0);
    CHECK(none.run.bits_sent() == 0);
    for (std::size_t k = 1; k <= 9; ++k) {
        CHECK(sqrt_sampler(f, g, k, rng).run.bits_sent() == 2 * k);
    }
}

TEST_CASE("three-query toy sampler replays exactly", "[classical]") {
    Rng seeds(50);
    for (int rep = 0; rep < 100; ++rep) {
        const auto f = random_sign_vector(4, seeds);
        const auto g = random_sign_vector(4, seeds);
        const auto h = pointwise(f, g);
        const std::uint64_t s = seeds();
        Rng r1(s);
        Rng r2(s);
        const auto wrapped = query_to_comm(ThreeQueryToy{}, f, g, r1);
        const auto [direct, q] = run_direct(ThreeQueryToy{}, h, r2);
        CHECK(wrapped.output == direct);
        CHECK(wrapped.queries == q);
        CHECK(wrapped.run.bits_sent() == 6);
        // each query's two transcript bits are f(x) and g(x)
        const auto &bits = wrapped.run.transcript();
        for (int i = 0; i < 3; ++i) {
            const auto x = static_cast<std::size_t>(direct[2 * i]);
            CHECK((bits[2 * i] != 0) == (f[x] < 0));
            CHECK((bits[2 * i + 1] != 0) == (g[x] < 0));
            CHECK(wrapped.run.messages()[2 * i].sender == Party::Alice);
            CHECK(wrapped.run.messages()[2 * i + 1].sender == Party::Bob);
        }
    }
}

TEST_CASE("sqrt sampler examples", "[classical]") {
    Rng rng(51);
    const auto x = random_sign_vector(16, rng);
    for (std::size_t k : {1, 3, 4}) {
        for (int t = 0; t < 50; ++t) {
            CHECK(sqrt_sampler(x, x, k, rng).accept);
            CHECK(sqrt_sampler(x, x.negated(), k, rng).accept);
        }
    }
    CHECK_THAT(sqrt_sampler_exact_prob(0.5, 2), WithinAbs(0.5, 1e-15));
    CHECK_THAT(sqrt_sampler_cosh_approx(4, 0.0), WithinAbs(0.5, 1e-15));
    const SignVector a({1, 1, 1, 1});
    const SignVector b({1, 1, -1, -1});
    std::size_t acc = 0;
    const std::size_t trials = 100000;
    for (std::size_t t = 0; t < trials; ++t) {
        acc += sqrt_sampler(a, b, 2, rng).accept ? 1 : 0;
    }
    const double sigma = std::sqrt(0.25 / trials);
    CHECK(std::abs(static_cast<double>(acc) / trials - 0.5) <= 3.0 * sigma);
    CHECK_THROWS_AS(sqrt_sampler(a, SignVector({1, 1}), 2, rng),
                    ValidationError);
}

TEST_CASE("sampler acceptance equals sequence enumeration",
          "[classical][property]") {
    Rng rng(52);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 4 + rep % 4;
        const std::size_t k = 1 + rep % 4;
        const auto x = random_sign_vector(n, rng);
        const auto y = random_sign_vector(n, rng);
        CHECK_THAT(sqrt_sampler_exact_prob(agree_fraction(x, y), k),
                   WithinAbs(oracle::sampler_acceptance(x.to_ints(),
                                                        y.to_ints(), k),
                             1e-12));
    }
}

TEST_CASE("sampler reference values at N = 64", "[classical]") {
    CHECK_THAT(sqrt_sampler_prob_at_delta(64, 0.0), WithinAbs(0.0078125, 1e-15));
    CHECK_THAT(sqrt_sampler_cosh_approx(64, 0.0), WithinAbs(0.0078125, 1e-15));
    CHECK_THAT(sqrt_sampler_prob_at_delta(64, 1.0),
               WithinRel(oracle::frozen::kSamplerExactDelta1, 1e-12));
    CHECK_THAT(sqrt_sampler_cosh_approx(64, 1.0),
               WithinRel(oracle::frozen::kSamplerApproxDelta1, 1e-12));
    CHECK_THAT(sqrt_sampler_prob_at_delta(64, 2.0),
               WithinRel(oracle::frozen::kSamplerExactDelta2, 1e-12));
    CHECK_THAT(sqrt_sampler_cosh_approx(64, 2.0),
               WithinRel(oracle::frozen::kSamplerApproxDelta2, 1e-12));
    CHECK_THROWS_AS(sqrt_sampler_prob_at_delta(60, 0.0), DomainError);
    Rng rng(53);
    const auto [x, y] = pair_with_inner_product(64, -16, rng);
    CHECK(inner_product(x, y) == -16);
    CHECK_THROWS_AS(pair_with_inner_product(64, 3, rng), DomainError);
}

TEST_CASE("DDFS to DFS reduction", "[classical]") {
    ProtocolRun run;
    CHECK(ddfs_to_dfs({0, 0}, 2, run) == 0);
    CHECK(run.bits_sent() == 2);
    CHECK(ddfs_to_dfs({2, 3}, 2, run) == 1);
    CHECK(run.bits_sent() == 4);
    CHECK_THROWS_AS(ddfs_to_dfs({4, 0}, 2, run), DomainError);

    Rng rng(54);
    const auto inst = random_dfs_instance(2, rng);
    const auto joint = ddfs_joint_pmf(inst);
    CHECK(l1_distance(ddfs_to_dfs_law(joint, 2), dfs_distribution(inst)) <=
          1e-12);
    // an eps = 0.1 perturbation of the joint law stays within 0.1
    std::vector<double> noise(16);
    double total = 0.0;
    for (auto &v : noise) {
        v = uniform01(rng);
        total += v;
    }
    std::vector<double> perturbed(16);
    for (std::size_t i = 0; i < 16; ++i) {
        perturbed[i] = 0.95 * joint[i] + 0.05 * noise[i] / total;
    }
    const OutcomeDistribution approx(perturbed);
    const double source_err = l1_distance(approx, joint);
    CHECK(source_err <= 0.1);
    const double reduced_err =
        l1_distance(ddfs_to_dfs_law(approx, 2), dfs_distribution(inst));
    CHECK(reduced_err <= source_err + 1e-15);
}
