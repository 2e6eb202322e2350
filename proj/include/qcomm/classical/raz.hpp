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
#include <optional>
#include <vector>

#include "qcomm/classical/promise.hpp"
#include "qcomm/core/haar.hpp"
#include "qcomm/core/rng.hpp"
#include "qcomm/protocol/run.hpp"

namespace qcomm {

/**
 * @brief Shared-randomness codebook of K Haar-random states in C^dim.
 *
 * State i is regenerated on demand from derive_seed(seed, i), so both parties
 * hold the same codebook without storing it, and a codebook of size K is a
 * prefix of the one of size 2K with the same seed. `planted` states, if any,
 * occupy the first indices (test hook).
 */
class RazCodebook {
  public:
    RazCodebook(std::uint64_t seed, std::uint64_t size, std::size_t dim,
                std::vector<PureState> planted = {})
        : seed_(seed), size_(size), dim_(dim), planted_(std::move(planted)) {
        detail::require<ValidationError>(size_ >= 1, "codebook size K must be "
                                                     ">= 1");
        detail::require<DimensionError>(dim_ >= 1, "codebook dimension >= 1");
        for (const auto &p : planted_) {
            detail::require<DimensionError>(p.dim() == dim_,
                                            "planted state has wrong dimension");
        }
    }

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t size() const noexcept { return size_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

    /// Writes codeword i into `out` (resized to dim).
    void state_into(std::uint64_t i, CVector &out) const {
        detail::require<DomainError>(i < size_, "codeword index out of range");
        if (i < planted_.size()) {
            out = planted_[i].amplitudes();
            return;
        }
        SplitMixEngine rng(derive_seed(seed_, i));
        out = complex_gaussian(dim_, rng);
        out /= out.norm();
    }

    [[nodiscard]] PureState state(std::uint64_t i) const {
        CVector v;
        state_into(i, v);
        return PureState(std::move(v));
    }

  private:
    std::uint64_t seed_;
    std::uint64_t size_;
    std::size_t dim_;
    std::vector<PureState> planted_;
};

struct RazRun {
    bool bit;            ///< Bob's answer: 1 means "inside"
    std::uint64_t index; ///< codeword Alice named
    double overlap;      ///< |<phi_i|psi>|
    double bob_value;    ///< <phi_i|M|phi_i>
    ProtocolRun run;
};

/// Alice's running argmax over a codebook prefix.
struct RazSearch {
    std::uint64_t scanned = 0;
    std::uint64_t best = 0;
    double best_overlap = -1.0;
};

/// Extends `search` to cover codewords [scanned, limit). Ties keep the
/// smaller index because only a strictly larger overlap replaces the best.
inline void raz_extend_search(const PureState &psi, const RazCodebook &cb,
                              std::uint64_t limit, RazSearch &search) {
    detail::require<DomainError>(limit <= cb.size(),
                                 "search limit exceeds codebook size");
    CVector phi;
    for (std::uint64_t i = search.scanned; i < limit; ++i) {
        cb.state_into(i, phi);
        const double ov = std::abs(phi.dot(psi.amplitudes()));
        if (ov > search.best_overlap) {
            search.best_overlap = ov;
            search.best = i;
        }
    }
    search.scanned = std::max(search.scanned, limit);
}

namespace detail {
/// Bob's side: reads the index off the transcript and evaluates
/// <phi_i|M|phi_i> through `value_of`.
template <class BobValue>
RazRun raz_finish(const RazCodebook &cb, std::uint64_t k,
                  const RazSearch &search, BobValue &&value_of) {
    RazRun out{false, search.best, search.best_overlap, 0.0, {}};
    out.run.send_word(Party::Alice, search.best, index_bits(k));
    CVector phi;
    cb.state_into(out.run.word_at(0, index_bits(k)), phi);
    out.bob_value = value_of(phi);
    out.bit = out.bob_value > 0.5;
    return out;
}

inline void raz_check(const VisInstance &inst, const RazCodebook &cb) {
    detail::require<DimensionError>(inst.psi.dim() == cb.dim(),
                                    "codebook dimension does not match");
    detail::require<ValidationError>(2 * inst.rank() == inst.psi.dim(),
                                     "instance is not padded to half rank");
}
} // namespace detail

/**
 * @brief One-way protocol for vector-in-subspace.
 *
 * Alice names the codeword maximizing |<phi_i|psi>| (ties to the smallest
 * index) with index_bits(K) bits; Bob outputs [<phi_i|M|phi_i> > 1/2].
 * The instance must already have tr M = dim/2 (see pad_to_half_rank).
 * Bob reads the index back from the transcript, not from Alice's state.
 */
inline RazRun raz_protocol(const VisInstance &inst, const RazCodebook &cb) {
    detail::raz_check(inst, cb);
    RazSearch search;
    raz_extend_search(inst.psi, cb, cb.size(), search);
    const CMatrix &m = inst.m.projector();
    return detail::raz_finish(cb, cb.size(), search, [&](const CVector &phi) {
        return phi.dot(m * phi).real();
    });
}

/// Wilson score interval lower bound for a binomial proportion.
inline double wilson_lower_bound(std::uint64_t successes, std::uint64_t trials,
                                 double z = 1.959963984540054) {
    if (trials == 0) {
        return 0.0;
    }
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double centre = ph + z2 / (2.0 * n);
    const double half = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n));
    return (centre - half) / (1.0 + z2 / n);
}

struct RazExperiment {
    std::size_t dim = 16;           ///< N before padding
    std::size_t rank = 4;           ///< rank of M before padding
    PromiseFamily family = PromiseFamily::Mixed;
    std::size_t trials_per_label = 500;
    std::uint64_t seed = 1;
    bool plant_solution = false;    ///< put psi itself at codeword 0
};

struct RazOutcome {
    std::uint64_t k = 0;
    std::size_t padded_dim = 0;
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    std::size_t bits_per_run = 0;
    double mean_best_overlap_sq = 0.0;

    [[nodiscard]] double success_rate() const {
        return trials == 0 ? 0.0
                           : static_cast<double>(successes) /
                                 static_cast<double>(trials);
    }
    [[nodiscard]] double wilson_lower() const {
        return wilson_lower_bound(successes, trials);
    }
};

namespace detail {
/// Trial t uses instance stream 2t and codebook stream 2t+1 of the master
/// seed, so every K sees the same instances and nested codebooks.
inline VisInstance raz_trial_instance(const RazExperiment &ex, std::size_t t) {
    Rng rng = make_rng(ex.seed, 2 * t);
    const VisLabel label =
        t % 2 == 0 ? VisLabel::Inside : VisLabel::Outside;
    return pad_to_half_rank(make_promise_instance(ex.dim, ex.rank, label,
                                                  ex.family, t / 2, rng));
}

inline RazCodebook raz_trial_codebook(const RazExperiment &ex, std::size_t t,
                                      const VisInstance &inst,
                                      std::uint64_t k) {
    std::vector<PureState> planted;
    if (ex.plant_solution) {
        planted.push_back(inst.psi);
    }
    return {derive_seed(ex.seed, 2 * t + 1), k, inst.psi.dim(),
            std::move(planted)};
}

/// Compact trial: padded psi plus an orthonormal basis of range(M), so
/// <phi|M|phi> = |B^* phi|^2 without keeping the full measurement.
struct RazTrial {
    PureState psi;
    CMatrix range;
    bool expected;
};

inline RazTrial make_raz_trial(const RazExperiment &ex, std::size_t t) {
    const VisInstance inst = raz_trial_instance(ex, t);
    const RazCodebook probe = raz_trial_codebook(ex, t, inst, 1);
    raz_check(inst, probe);
    const Eigen::SelfAdjointEigenSolver<CMatrix> es(inst.m.projector());
    const auto r = static_cast<Eigen::Index>(inst.rank());
    // eigenvalues ascend, so the eigenvalue-1 block is on the right
    return {inst.psi, es.eigenvectors().rightCols(r), inst.expected_bit()};
}

/// Grows every trial's search to K and tallies the outcome at K.
inline RazOutcome raz_round(const RazExperiment &ex, std::uint64_t k,
                            const std::vector<RazTrial> &trials,
                            std::vector<RazSearch> &searches) {
    RazOutcome out;
    out.k = k;
    out.bits_per_run = index_bits(k);
    for (std::size_t t = 0; t < trials.size(); ++t) {
        const RazTrial &tr = trials[t];
        std::vector<PureState> planted;
        if (ex.plant_solution) {
            planted.push_back(tr.psi);
        }
        const RazCodebook cb(derive_seed(ex.seed, 2 * t + 1), k, tr.psi.dim(),
                             std::move(planted));
        raz_extend_search(tr.psi, cb, k, searches[t]);
        const RazRun r =
            raz_finish(cb, k, searches[t], [&](const CVector &phi) {
                return (tr.range.adjoint() * phi).squaredNorm();
            });
        require<ValidationError>(r.run.bits_sent() == out.bits_per_run,
                                 "Raz transcript length mismatch");
        out.padded_dim = tr.psi.dim();
        out.successes += r.bit == tr.expected ? 1 : 0;
        out.mean_best_overlap_sq += r.overlap * r.overlap;
        ++out.trials;
    }
    out.mean_best_overlap_sq /= static_cast<double>(out.trials);
    return out;
}

inline std::vector<RazTrial> make_raz_trials(const RazExperiment &ex) {
    std::vector<RazTrial> trials;
    trials.reserve(2 * ex.trials_per_label);
    for (std::size_t t = 0; t < 2 * ex.trials_per_label; ++t) {
        trials.push_back(make_raz_trial(ex, t));
    }
    return trials;
}
} // namespace detail

/// Success statistics of raz_protocol with codebook size K over
/// 2 * trials_per_label seeded promise instances (labels alternate).
inline RazOutcome evaluate_raz(const RazExperiment &ex, std::uint64_t k) {
    detail::require<ValidationError>(ex.trials_per_label >= 1,
                                     "need at least one trial per label");
    const auto trials = detail::make_raz_trials(ex);
    std::vector<RazSearch> searches(trials.size());
    return detail::raz_round(ex, k, trials, searches);
}

struct RazCalibrationRow {
    std::size_t dim = 0;
    std::size_t padded_dim = 0;
    std::optional<std::uint64_t> min_k; ///< empty: cap reached (unresolved)
    RazOutcome at_min_k;
    std::vector<RazOutcome> search;     ///< every K tried, in order
    [[nodiscard]] double log2_k() const {
        return min_k ? std::log2(static_cast<double>(*min_k)) : NAN;
    }
};

/**
 * @brief Doubling search for the smallest power-of-two K whose success rate
 * reaches `target`, for each N in `dims`.
 *
 * `base` supplies the family, trials and seed; the rank of M is N/4 so
 * every instance is padded to 2N. Codebooks are nested prefixes, so each
 * doubling only scans the new codewords. Reaching `k_cap` without success
 * is reported as unresolved.
 */
inline std::vector<RazCalibrationRow>
calibrate_raz(const std::vector<std::size_t> &dims, RazExperiment base,
              double target = 2.0 / 3.0,
              std::uint64_t k_cap = std::uint64_t{1} << 20) {
    detail::require<ValidationError>(base.trials_per_label >= 1,
                                     "need at least one trial per label");
    std::vector<RazCalibrationRow> rows;
    for (std::size_t n : dims) {
        detail::require<DomainError>(n >= 4 && n % 4 == 0,
                                     "calibration needs N >= 4, N % 4 == 0");
        RazExperiment ex = base;
        ex.dim = n;
        ex.rank = n / 4;
        RazCalibrationRow row;
        row.dim = n;
        const auto trials = detail::make_raz_trials(ex);
        std::vector<RazSearch> searches(trials.size());
        for (std::uint64_t k = 1; k <= k_cap; k *= 2) {
            RazOutcome o = detail::raz_round(ex, k, trials, searches);
            row.padded_dim = o.padded_dim;
            row.search.push_back(o);
            if (o.success_rate() >= target) {
                row.min_k = k;
                row.at_min_k = o;
                break;
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Least-squares slope of y against x.
inline double fitted_slope(const std::vector<double> &x,
                           const std::vector<double> &y) {
    detail::require<ValidationError>(x.size() == y.size() && x.size() >= 2,
                                     "slope fit needs >= 2 paired points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace qcomm
