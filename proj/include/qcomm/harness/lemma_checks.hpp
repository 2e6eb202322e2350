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
#include <cstdint>
#include <functional>
#include <map>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "qcomm/core/rng.hpp"
#include "qcomm/core/special.hpp"
#include "qcomm/harness/params.hpp"
#include "qcomm/lab/calculus.hpp"
#include "qcomm/lab/gaussian.hpp"
#include "qcomm/lab/haar_laws.hpp"
#include "qcomm/lab/skew.hpp"
#include "qcomm/lab/verdict.hpp"
#include "qcomm/lab/xi.hpp"

namespace qcomm {

namespace detail {
/// Verdict for an identity expected to hold to `tol`.
inline Verdict equality_verdict(std::string check, nlohmann::json params,
                                double lhs, double rhs, double tol,
                                std::uint64_t seed = 0) {
    Verdict v;
    v.check = std::move(check);
    v.params = std::move(params);
    v.lhs = lhs;
    v.rhs = rhs;
    v.margin = tol - std::abs(lhs - rhs);
    v.holds = v.margin >= 0.0;
    v.seed = seed;
    return v;
}

/// Verdict for lhs <= rhs.
inline Verdict upper_verdict(std::string check, nlohmann::json params,
                             double lhs, double rhs, std::uint64_t samples,
                             std::uint64_t seed) {
    Verdict v;
    v.check = std::move(check);
    v.params = std::move(params);
    v.lhs = lhs;
    v.rhs = rhs;
    v.margin = rhs - lhs;
    v.holds = v.margin >= 0.0;
    v.samples = samples;
    v.seed = seed;
    return v;
}
} // namespace detail

/// Closed-form second moment of the overlap against the exact pmf sum.
inline std::vector<Verdict> check_fact1(ParamReader &pr, std::uint64_t) {
    const auto ns = pr.integers("N", {4});
    const auto ps = pr.reals("p", {0.5});
    std::vector<Verdict> out;
    for (auto n : ns) {
        for (double p : ps) {
            const auto nn = static_cast<std::size_t>(n);
            out.push_back(detail::equality_verdict(
                "fact1", {{"N", n}, {"p", p}},
                expected_squared_overlap_by_pmf(nn, p),
                expected_squared_overlap(nn, p), 1e-12));
        }
    }
    return out;
}

/// Pad-law identity and the max-ratio sweep across N.
inline std::vector<Verdict> check_fact2(ParamReader &pr, std::uint64_t) {
    const auto ns = pr.integers("Ns", {100, 400, 1600});
    const double band = pr.real("band", 0.2);
    std::vector<Verdict> out;
    std::vector<double> maxima;
    for (auto n : ns) {
        const auto nn = static_cast<std::size_t>(n);
        double worst = 0.0;
        for (double p : techbound_p_grid()) {
            const auto law = xi_prime_overlap_law(nn, p);
            for (long d = -2 * n; d <= 2 * n; ++d) {
                const double direct = xi_overlap_pmf(nn, p, d);
                worst = std::max(
                    worst, std::abs(law[static_cast<std::size_t>(d + 2 * n)] -
                                    direct));
            }
        }
        out.push_back(detail::equality_verdict("fact2-pad-law", {{"N", n}},
                                               worst, 0.0, 0.0));
        const TechboundSweep s = techbound_sweep(nn, techbound_p_grid());
        maxima.push_back(s.max_ratio);
        Verdict v;
        v.check = "fact2-max-ratio";
        v.params = {{"N", n}, {"arg_p", s.arg_p}, {"arg_delta", s.arg_delta}};
        v.lhs = s.max_ratio;
        out.push_back(v);
    }
    const double mean =
        std::accumulate(maxima.begin(), maxima.end(), 0.0) /
        static_cast<double>(maxima.size());
    for (std::size_t i = 0; i < maxima.size(); ++i) {
        auto &v = out[2 * i + 1];
        v.rhs = mean;
        v.margin = band - std::abs(maxima[i] / mean - 1.0);
        v.holds = v.margin >= 0.0;
    }
    return out;
}

/// Shift map: exact semigroup identity and per-coordinate agreement.
inline std::vector<Verdict> check_shift(ParamReader &pr, std::uint64_t seed) {
    const auto n = pr.count("N", 8, 1);
    const double p = pr.real("p", -0.2);
    const double q = pr.real("q", 0.3);
    const double q2 = pr.real("q2", 0.25);
    const auto samples = pr.count("samples", 1000000, 1);
    std::vector<Verdict> out;
    out.push_back(detail::equality_verdict(
        "shift-semigroup", {{"p", p}, {"q1", q}, {"q2", q2}},
        shifted_agreement(shifted_correlation(p, q), q2),
        shifted_agreement(p, shifted_correlation(q, q2)), 1e-15));
    Rng rng = make_rng(seed, 0);
    std::vector<std::uint64_t> agree(n, 0);
    const XiParams xp(n, p);
    for (std::size_t s = 0; s < samples; ++s) {
        const auto [x, y] = xi_sample(xp, rng);
        const auto [xs, ys] = shift_pairs(x, y, q, rng);
        for (std::size_t i = 0; i < n; ++i) {
            agree[i] += xs[i] == ys[i] ? 1 : 0;
        }
    }
    const double target = (1.0 + shifted_correlation(p, q)) / 2.0;
    const double sigma =
        std::sqrt(target * (1.0 - target) / static_cast<double>(samples));
    for (std::size_t i = 0; i < n; ++i) {
        const double f =
            static_cast<double>(agree[i]) / static_cast<double>(samples);
        Verdict v = detail::upper_verdict(
            "shift-agreement", {{"N", n}, {"p", p}, {"q", q}, {"coord", i}},
            std::abs(f - target) / sigma, 3.0, samples, seed);
        out.push_back(v);
    }
    return out;
}

/// Monte Carlo overlap law of xi'_p against the exact law.
inline std::vector<Verdict> check_xi_prime(ParamReader &pr,
                                           std::uint64_t seed) {
    const auto n = pr.count("N", 4, 2);
    const auto ps = pr.reals("p", {0.0, 0.5});
    const auto samples = pr.count("samples", 1000000, 1);
    std::vector<Verdict> out;
    for (std::size_t k = 0; k < ps.size(); ++k) {
        Rng rng = make_rng(seed, k);
        const auto law = xi_prime_overlap_law(n, ps[k]);
        std::vector<double> counts(law.size(), 0.0);
        for (std::size_t s = 0; s < samples; ++s) {
            const auto [x, y] = xi_prime_sample(n, ps[k], rng);
            counts[static_cast<std::size_t>(inner_product(x, y) +
                                            2 * static_cast<long>(n))] += 1.0;
        }
        double l1 = 0.0;
        for (std::size_t i = 0; i < law.size(); ++i) {
            l1 += std::abs(counts[i] / static_cast<double>(samples) - law[i]);
        }
        out.push_back(detail::upper_verdict(
            "xi-prime-law", {{"N", n}, {"p", ps[k]}}, l1, 0.01, samples, seed));
    }
    return out;
}

struct SkewCounts {
    std::uint64_t random = 0;
    std::uint64_t structured = 0;
    std::uint64_t protocol = 0;
};

/// Skewed inequality over random, structured and protocol-leaf rectangles;
/// one verdict per s with the worst margin among large rectangles.
inline std::vector<Verdict> check_skew(ParamReader &pr, std::uint64_t seed) {
    SkewCheckConfig base;
    base.n = pr.count("N", 12, 1);
    base.b = pr.real("b", 10.0);
    base.delta = pr.real("delta", 0.1);
    const auto ss = pr.reals("s", {-3.0, -1.0, 0.0, 1.0, 3.0});
    const auto random = pr.count("random", 1000);
    const auto protocols = pr.count("protocols", 30);
    const std::string mode = pr.text("mode", "exact");
    base.mode =
        mode == "mc" ? MeasureMode::MonteCarlo : MeasureMode::Exact;
    detail::require<ValidationError>(mode == "mc" || mode == "exact",
                                     "mode must be exact or mc");
    base.samples = pr.count("samples", 200000, 1);
    base.seed = seed;
    base.validate();

    Rng gen = make_rng(seed, 0);
    std::vector<std::pair<std::string, Rectangle>> rects;
    // densities chosen so that xi_0 = da * db clears the largeness
    // threshold: da, db >= sqrt(threshold)
    const double floor = std::sqrt(base.largeness_threshold());
    for (std::size_t i = 0; i < random; ++i) {
        const double da = floor + (1.0 - floor) * uniform01(gen);
        const double db = floor + (1.0 - floor) * uniform01(gen);
        rects.emplace_back("random", random_set_rectangle(base.n, da, db, gen));
    }
    for (auto &r : adversarial_rectangles(base.n)) {
        rects.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < protocols; ++i) {
        for (auto &r : protocol_leaf_rectangles(base.n, 3, 0.9, gen)) {
            rects.emplace_back("protocol-leaf", std::move(r));
        }
    }
    std::vector<Verdict> out;
    for (std::size_t k = 0; k < ss.size(); ++k) {
        SkewCheckConfig cfg = base;
        cfg.s = ss[k];
        Rng rng = make_rng(seed, 1 + k);
        SkewSweep sweep;
        std::map<std::string, std::uint64_t> violations;
        for (const auto &[family, r] : rects) {
            const SkewResult res = skewed_anticoncentration_check(cfg, r, rng);
            accumulate(sweep, res);
            if (!res.holds) {
                ++violations[family];
            }
        }
        Verdict v;
        v.check = "skew";
        v.params = {{"N", cfg.n},          {"b", cfg.b},
                    {"delta", cfg.delta},  {"s", cfg.s},
                    {"mode", mode},        {"checked", sweep.checked},
                    {"skipped", sweep.skipped},
                    {"violations", sweep.violations},
                    {"min_relative_margin", sweep.min_relative_margin}};
        v.lhs = sweep.min_margin;
        v.rhs = 0.0;
        v.margin = sweep.min_margin;
        v.holds = sweep.violations == 0 && sweep.checked > 0;
        v.samples = sweep.checked;
        v.seed = seed;
        out.push_back(v);
    }
    return out;
}

/// Exact sign-map values and a Monte Carlo agreement check.
inline std::vector<Verdict> check_sign_map(ParamReader &pr,
                                           std::uint64_t seed) {
    const auto n = pr.count("N", 6, 1);
    const double eta = pr.real("eta", 0.3);
    const auto samples = pr.count("samples", 1000000, 1);
    std::vector<Verdict> out;
    const double r2 = 1.0 / std::numbers::sqrt2;
    const std::vector<std::pair<double, double>> exact = {
        {0.0, 0.0},        {0.5, 1.0 / 3.0}, {-0.5, -1.0 / 3.0},
        {r2, 0.5},         {-r2, -0.5},      {1.0, 1.0},
        {-1.0, -1.0}};
    for (const auto &[e, p] : exact) {
        out.push_back(detail::equality_verdict("sign-map-exact", {{"eta", e}},
                                               sign_map_p(e), p, 1e-15));
    }
    Rng rng = make_rng(seed, 0);
    const SignMapCheck c = sign_map_check(n, eta, samples, rng);
    out.push_back(detail::upper_verdict(
        "sign-map-mc",
        {{"N", n}, {"eta", eta}, {"p", c.p}, {"agreement", c.agreement},
         {"expected", c.expected_agreement}},
        std::abs(c.agreement - c.expected_agreement) / c.std_error, 3.0,
        samples, seed));
    return out;
}

/// Half-space spot checks of the skewed Gaussian inequality.
inline std::vector<Verdict> check_halfspace(ParamReader &pr,
                                            std::uint64_t seed) {
    const auto n = pr.count("N", 16, 1);
    const double c = pr.real("c", 1.0);
    const double eps = pr.real("eps", 1.0 / 3.0);
    const auto ss = pr.reals("s", {-1.0, 0.0, 1.0});
    const auto offsets = pr.reals("offsets", {0.0, -0.5});
    const auto samples = pr.count("samples", 200000, 1);
    const double eta = c / std::sqrt(static_cast<double>(n));
    Rng gen = make_rng(seed, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    RealVector wa(n);
    RealVector wb(n);
    for (std::size_t i = 0; i < n; ++i) {
        wa[i] = normal(gen);
        wb[i] = normal(gen);
    }
    std::vector<Verdict> out;
    std::uint64_t stream = 1;
    for (double t : offsets) {
        for (bool opposed : {false, true}) {
            RealVector nb = opposed ? wa : wb;
            if (opposed) {
                for (auto &v : nb) {
                    v = -v;
                }
            }
            const Halfspace a{wa, t};
            const Halfspace b{nb, t};
            for (double s : ss) {
                Rng rng = make_rng(seed, stream++);
                const HalfspaceCheck h =
                    halfspace_check(a, b, eta, s, eps, samples, rng);
                Verdict v;
                v.check = "halfspace";
                v.params = {{"N", n},     {"eta", eta}, {"s", s},
                            {"eps", eps}, {"offset", t},
                            {"opposed", opposed}};
                v.lhs = h.lhs;
                v.rhs = h.rhs;
                v.margin = h.lhs - h.rhs + 4.0 * h.std_error;
                v.holds = h.holds;
                v.samples = samples;
                v.seed = seed;
                out.push_back(v);
            }
        }
    }
    return out;
}

/// F <= -x^2, F'' < -2 and closed form vs finite differences on a grid.
inline std::vector<Verdict> check_fcalc(ParamReader &pr, std::uint64_t) {
    const double step = pr.real("step", 1e-4);
    const double xmax = pr.real("xmax", 0.499);
    const double tol = pr.real("tol", 1e-6);
    detail::require<DomainError>(step > 0.0 && xmax < 0.5,
                                 "need step > 0 and xmax < 1/2");
    double worst_fd = 0.0;
    double worst_x = 0.0;
    double worst_f_margin = std::numeric_limits<double>::infinity();
    std::uint64_t points = 0;
    std::uint64_t bound_failures = 0;
    const auto count = static_cast<std::int64_t>(std::floor(xmax / step + 1e-9));
    for (std::int64_t i = 0; i <= count; ++i) {
        const double x = static_cast<double>(i) * step;
        const FCheck c = f_function_checks(x);
        ++points;
        bound_failures += c.bound_holds ? 0 : 1;
        if (c.fd_error > worst_fd) {
            worst_fd = c.fd_error;
            worst_x = x;
        }
        if (x > 0.0) {
            worst_f_margin = std::min(worst_f_margin, -x * x - c.f);
        }
    }
    std::vector<Verdict> out;
    Verdict b;
    b.check = "fcalc-bounds";
    b.params = {{"step", step}, {"xmax", xmax}, {"points", points},
                {"failures", bound_failures}};
    b.lhs = static_cast<double>(bound_failures);
    b.rhs = 0.0;
    b.margin = worst_f_margin;
    b.holds = bound_failures == 0;
    b.samples = points;
    out.push_back(b);
    Verdict fd = detail::upper_verdict(
        "fcalc-fd", {{"step", step}, {"xmax", xmax}, {"worst_x", worst_x}},
        worst_fd, tol, points, 0);
    out.push_back(fd);
    return out;
}

/// Entropy bounds on binomial coefficients for all 2 <= N <= maxN.
inline std::vector<Verdict> check_binomial(ParamReader &pr, std::uint64_t) {
    const auto max_n = pr.count("maxN", 200, 2);
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    double worst_lower = std::numeric_limits<double>::infinity();
    double worst_upper = std::numeric_limits<double>::infinity();
    for (std::size_t n = 2; n <= max_n; ++n) {
        for (std::size_t k = 1; k < n; ++k) {
            const auto c = check_binomial_bounds(static_cast<std::int64_t>(n),
                                                 static_cast<std::int64_t>(k));
            ++cases;
            failures += c.holds ? 0 : 1;
            worst_lower = std::min(worst_lower, std::log(c.exact / c.lower));
            worst_upper = std::min(worst_upper, std::log(c.upper / c.exact));
        }
    }
    Verdict v;
    v.check = "binomial-bounds";
    v.params = {{"maxN", max_n},
                {"min_log_gap_lower", worst_lower},
                {"min_log_gap_upper", worst_upper}};
    v.lhs = static_cast<double>(failures);
    v.rhs = 0.0;
    v.margin = std::min(worst_lower, worst_upper);
    v.holds = failures == 0;
    v.samples = cases;
    return {v};
}

/// Exact min_q E|q - S_m^2|: small-m values and the band of value/m.
inline std::vector<Verdict> check_appendix_b(ParamReader &pr, std::uint64_t) {
    const auto ms = pr.integers("m", {1, 2, 4, 8, 16, 32, 64});
    const auto band_from = pr.integer("band_from", 8);
    std::vector<Verdict> out;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (auto m : ms) {
        const double v = appendix_b_min_abs_error(static_cast<std::size_t>(m));
        Verdict r;
        r.check = "appendix-b";
        r.params = {{"m", m}, {"value_over_m", v / static_cast<double>(m)}};
        r.lhs = v;
        if (m == 1 || m == 2) {
            r = detail::equality_verdict("appendix-b", r.params, v,
                                         m == 1 ? 0.0 : 2.0, 0.0);
        } else {
            r.rhs = v;
            r.holds = true;
        }
        out.push_back(r);
        if (m >= band_from) {
            lo = std::min(lo, v / static_cast<double>(m));
            hi = std::max(hi, v / static_cast<double>(m));
        }
    }
    if (hi > 0.0) {
        out.push_back(detail::upper_verdict(
            "appendix-b-band",
            {{"band_from", band_from}, {"min", lo}, {"max", hi}}, hi / lo, 2.0,
            0, 0));
    }
    return out;
}

/// Tail bound for Haar states against a fixed projector over a grid.
inline std::vector<Verdict> check_randomproj(ParamReader &pr,
                                             std::uint64_t seed) {
    const auto ns = pr.integers("N", {8, 16, 32});
    const auto deltas = pr.reals("delta", {0.25, 0.5, 1.0, 2.0});
    const auto trials = pr.count("trials", 100000, 1);
    std::vector<Verdict> out;
    std::uint64_t stream = 0;
    for (auto n : ns) {
        const auto nn = static_cast<std::size_t>(n);
        std::vector<std::size_t> ranks{1, std::max<std::size_t>(1, nn / 4),
                                       nn / 2};
        ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
        for (std::size_t r : ranks) {
            for (double d : deltas) {
                Rng rng = make_rng(seed, stream++);
                const TailCheck t =
                    randomproj_tail_check(nn, r, d, trials, rng);
                Verdict v = detail::upper_verdict(
                    "randomproj-tail", {{"N", n}, {"r", r}, {"delta", d},
                                        {"bound", t.bound}},
                    t.empirical_tail, t.bound + 3.0 * t.std_error, trials,
                    seed);
                out.push_back(v);
            }
        }
    }
    return out;
}

/// Overlap of independent Haar states against 1 - (1 - x)^{N-1}.
inline std::vector<Verdict> check_overlap_law(ParamReader &pr,
                                              std::uint64_t seed) {
    const auto ns = pr.integers("N", {4, 16, 64});
    const auto samples = pr.count("samples", 100000, 1);
    std::vector<Verdict> out;
    for (std::size_t k = 0; k < ns.size(); ++k) {
        const auto n = static_cast<std::size_t>(ns[k]);
        Rng rng = make_rng(seed, k);
        std::vector<double> probes;
        for (int i = 1; i <= 9; ++i) {
            // quantiles of the exact law
            probes.push_back(1.0 - std::pow(1.0 - i / 10.0,
                                            1.0 / static_cast<double>(n - 1)));
        }
        const OverlapLawCheck c = overlap_law_check(n, samples, probes, rng);
        out.push_back(detail::upper_verdict("overlap-law-ks", {{"N", n}},
                                            c.ks, 0.01, samples, seed));
        out.push_back(detail::upper_verdict("overlap-law-points", {{"N", n}},
                                            c.max_point_dev, 3.0, samples,
                                            seed));
    }
    return out;
}

using LemmaCheckFn = std::vector<Verdict> (*)(ParamReader &, std::uint64_t);

inline const std::map<std::string, LemmaCheckFn> &lemma_checks() {
    static const std::map<std::string, LemmaCheckFn> table = {
        {"fact1", &check_fact1},
        {"fact2", &check_fact2},
        {"shift", &check_shift},
        {"xi-prime", &check_xi_prime},
        {"skew", &check_skew},
        {"sign-map", &check_sign_map},
        {"halfspace", &check_halfspace},
        {"fcalc", &check_fcalc},
        {"binomial", &check_binomial},
        {"appendix-b", &check_appendix_b},
        {"randomproj", &check_randomproj},
        {"overlap-law", &check_overlap_law},
    };
    return table;
}

} // namespace qcomm
