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
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qcomm/core/errors.hpp"
#include "qcomm/core/rng.hpp"
#include "qcomm/protocol/accounting.hpp"
#include "qcomm/protocol/rectangle.hpp"
#include "qcomm/protocol/tree.hpp"

namespace qcomm {

/**
 * @brief Parameters of the skewed inequality
 *   (e^s xi_{-p}(R) + e^{-s} xi_{p}(R)) / 2 >= (2/3) xi_0(R),  p = sqrt(b/N),
 * checked on rectangles with xi_0(R) >= 2^{-delta N}.
 */
struct SkewCheckConfig {
    std::size_t n = 12;
    double b = 10.0;
    double s = 0.0;
    double delta = 0.1;
    MeasureMode mode = MeasureMode::Exact;
    std::uint64_t samples = 200000; ///< per measure, Monte Carlo mode only
    std::uint64_t seed = 1;

    void validate() const {
        detail::require<DomainError>(b > 0.0, "shift parameter b must be > 0");
        detail::require<DomainError>(delta > 0.0, "delta must be > 0");
        detail::require<DomainError>(n >= 1 && b <= static_cast<double>(n),
                                     "need b <= N so that p <= 1");
    }
    [[nodiscard]] double p() const {
        return std::sqrt(b / static_cast<double>(n));
    }
    [[nodiscard]] double largeness_threshold() const {
        return std::exp2(-delta * static_cast<double>(n));
    }
};

struct SkewResult {
    double xi0 = 0.0;
    double xi_minus = 0.0;
    double xi_plus = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double tolerance = 0.0; ///< 4 standard errors in MC mode, 0 when exact
    bool skipped = false;   ///< rectangle below the largeness threshold
    bool holds = true;
};

namespace detail {
inline SkewResult skew_finish(const SkewCheckConfig &cfg, Measure m0,
                              Measure mm, Measure mp) {
    SkewResult out;
    out.xi0 = m0.value;
    out.xi_minus = mm.value;
    out.xi_plus = mp.value;
    out.lhs = 0.5 * (std::exp(cfg.s) * mm.value + std::exp(-cfg.s) * mp.value);
    out.rhs = 2.0 / 3.0 * m0.value;
    out.margin = out.lhs - out.rhs;
    const double se_l = 0.5 * std::hypot(std::exp(cfg.s) * mm.std_error,
                                         std::exp(-cfg.s) * mp.std_error);
    const double se = std::hypot(se_l, 2.0 / 3.0 * m0.std_error);
    out.tolerance = cfg.mode == MeasureMode::Exact ? 0.0 : 4.0 * se;
    out.skipped = m0.value < cfg.largeness_threshold();
    out.holds = out.skipped || out.margin >= -out.tolerance;
    return out;
}

inline Measure measure_from_histogram(const std::vector<double> &hist,
                                      std::size_t n, double p) {
    double acc = 0.0;
    for (std::size_t d = 0; d <= n; ++d) {
        if (hist[d] != 0.0) {
            acc += hist[d] * xi_pair_probability(n, p, d);
        }
    }
    return {acc, 0.0};
}
} // namespace detail

/// Evaluates the skewed inequality on one rectangle. Exact mode shares one
/// distance histogram between the three measures.
template <class Engine>
SkewResult skewed_anticoncentration_check(const SkewCheckConfig &cfg,
                                          const Rectangle &r, Engine &rng) {
    cfg.validate();
    detail::require<DimensionError>(r.cube_dim() == cfg.n,
                                    "rectangle does not live on {+-1}^N");
    const double p = cfg.p();
    if (cfg.mode == MeasureMode::Exact) {
        detail::require<CapacityError>(
            static_cast<std::uint64_t>(r.alice_count()) * r.bob_count() <=
                kMaxEnumerablePairs,
            "rectangle too large for exact measure");
        const auto hist = distance_histogram(r);
        return detail::skew_finish(
            cfg, detail::measure_from_histogram(hist, cfg.n, 0.0),
            detail::measure_from_histogram(hist, cfg.n, -p),
            detail::measure_from_histogram(hist, cfg.n, p));
    }
    const Measure m0 = rect_measure_mc(r, 0.0, cfg.samples, rng);
    const Measure mm = rect_measure_mc(r, -p, cfg.samples, rng);
    const Measure mp = rect_measure_mc(r, p, cfg.samples, rng);
    return detail::skew_finish(cfg, m0, mm, mp);
}

/// Monte Carlo version for predicate rectangles at any N.
template <class Engine>
SkewResult skewed_anticoncentration_check(const SkewCheckConfig &cfg,
                                          const PredicateRectangle &r,
                                          Engine &rng) {
    cfg.validate();
    detail::require<DimensionError>(r.n == cfg.n,
                                    "rectangle does not live on {+-1}^N");
    SkewCheckConfig mc = cfg;
    mc.mode = MeasureMode::MonteCarlo;
    const double p = cfg.p();
    const Measure m0 = rect_measure_mc(r, 0.0, cfg.samples, rng);
    const Measure mm = rect_measure_mc(r, -p, cfg.samples, rng);
    const Measure mp = rect_measure_mc(r, p, cfg.samples, rng);
    return detail::skew_finish(mc, m0, mm, mp);
}

// ---- rectangle generators on {+-1}^N, inputs packed as in SignVector ----

/// Independent random subsets with the given inclusion probabilities.
template <class Engine>
Rectangle random_set_rectangle(std::size_t n, double density_a,
                               double density_b, Engine &rng) {
    const std::size_t m = std::size_t{1} << n;
    std::vector<std::uint8_t> a(m);
    std::vector<std::uint8_t> b(m);
    for (auto &v : a) {
        v = bernoulli(rng, density_a) ? 1 : 0;
    }
    for (auto &v : b) {
        v = bernoulli(rng, density_b) ? 1 : 0;
    }
    return {std::move(a), std::move(b), n};
}

/// Hamming balls: A = {x : d(x, ca) <= ra}, B = {y : d(y, cb) <= rb}.
inline Rectangle hamming_ball_rectangle(std::size_t n, std::uint64_t ca,
                                        std::size_t ra, std::uint64_t cb,
                                        std::size_t rb) {
    const std::size_t m = std::size_t{1} << n;
    std::vector<std::uint8_t> a(m);
    std::vector<std::uint8_t> b(m);
    for (std::size_t x = 0; x < m; ++x) {
        a[x] = static_cast<std::size_t>(std::popcount(x ^ ca)) <= ra ? 1 : 0;
        b[x] = static_cast<std::size_t>(std::popcount(x ^ cb)) <= rb ? 1 : 0;
    }
    return {std::move(a), std::move(b), n};
}

/// Threshold sets: A = {x : sum_i wa_i x_i >= ta}, likewise B. Unit weights
/// on all coordinates with threshold 0 give majority.
inline Rectangle threshold_rectangle(std::size_t n, const std::vector<int> &wa,
                                     long ta, const std::vector<int> &wb,
                                     long tb) {
    detail::require<DimensionError>(wa.size() == n && wb.size() == n,
                                    "weight vectors must have length N");
    const std::size_t m = std::size_t{1} << n;
    std::vector<std::uint8_t> a(m);
    std::vector<std::uint8_t> b(m);
    for (std::size_t x = 0; x < m; ++x) {
        long sa = 0;
        long sb = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const int xi = ((x >> i) & 1U) != 0U ? -1 : 1;
            sa += wa[i] * xi;
            sb += wb[i] * xi;
        }
        a[x] = sa >= ta ? 1 : 0;
        b[x] = sb >= tb ? 1 : 0;
    }
    return {std::move(a), std::move(b), n};
}

/// Leaf rectangles of a random deterministic protocol whose message tables
/// send 0 with probability `bias`, so some leaves stay large.
template <class Engine>
std::vector<Rectangle> protocol_leaf_rectangles(std::size_t n,
                                                std::size_t depth, double bias,
                                                Engine &rng) {
    const std::size_t m = std::size_t{1} << n;
    ProtocolTree t(m, m, depth);
    auto grow = [&](auto &self, std::size_t left) -> std::size_t {
        if (left == 0) {
            return t.add_leaf((rng() & 1U) != 0U);
        }
        const Party who = (rng() & 1U) != 0U ? Party::Bob : Party::Alice;
        std::vector<std::uint8_t> table(m);
        for (auto &v : table) {
            v = bernoulli(rng, bias) ? 0 : 1;
        }
        const std::size_t id = t.add_internal(who, std::move(table));
        const std::size_t zero = self(self, left - 1);
        const std::size_t one = self(self, left - 1);
        t.set_children(id, zero, one);
        return id;
    };
    grow(grow, depth);
    std::vector<Rectangle> out;
    for (auto &leaf : decompose_to_rectangles(t, n)) {
        out.push_back(std::move(leaf.rect));
    }
    return out;
}

/**
 * @brief Structured families aimed at the inequality: balls and threshold
 * sets with aligned and opposed centres/orientations, so that xi_p and
 * xi_{-p} differ as much as possible. Small members are kept; the check
 * reports them as skipped.
 */
inline std::vector<std::pair<std::string, Rectangle>>
adversarial_rectangles(std::size_t n) {
    std::vector<std::pair<std::string, Rectangle>> out;
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    for (std::size_t ra = n / 2; ra <= n; ++ra) {
        for (std::size_t rb = n / 2; rb <= n; ++rb) {
            out.emplace_back("ball-aligned",
                             hamming_ball_rectangle(n, 0, ra, 0, rb));
            out.emplace_back("ball-opposed",
                             hamming_ball_rectangle(n, 0, ra, all, rb));
        }
    }
    const std::vector<int> ones(n, 1);
    std::vector<int> neg(n, -1);
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<int> wk(n, 0);
        std::vector<int> wk_neg(n, 0);
        for (std::size_t i = 0; i < k; ++i) {
            wk[i] = 1;
            wk_neg[i] = -1;
        }
        const long kk = static_cast<long>(k);
        for (long t = -kk; t <= kk; t += 2) {
            out.emplace_back("threshold-aligned",
                             threshold_rectangle(n, wk, t, wk, t));
            out.emplace_back("threshold-opposed",
                             threshold_rectangle(n, wk, t, wk_neg, t));
        }
    }
    const long nn = static_cast<long>(n);
    for (long t = -nn; t <= nn; t += 2) {
        out.emplace_back("majority-aligned",
                         threshold_rectangle(n, ones, t, ones, t));
        out.emplace_back("majority-opposed",
                         threshold_rectangle(n, ones, t, neg, t));
    }
    return out;
}

struct SkewSweep {
    std::uint64_t checked = 0;
    std::uint64_t skipped = 0;
    std::uint64_t violations = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    double min_relative_margin = std::numeric_limits<double>::infinity();
};

inline void accumulate(SkewSweep &sweep, const SkewResult &r) {
    if (r.skipped) {
        ++sweep.skipped;
        return;
    }
    ++sweep.checked;
    sweep.violations += r.holds ? 0 : 1;
    sweep.min_margin = std::min(sweep.min_margin, r.margin);
    if (r.rhs > 0.0) {
        sweep.min_relative_margin =
            std::min(sweep.min_relative_margin, r.margin / r.rhs);
    }
}

} // namespace qcomm
