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

#include <cmath>
#include <cstddef>
#include <string>

#include "qcomm/core/measurement.hpp"

namespace qcomm {

/// Ground truth of a vector-in-subspace instance.
enum class VisLabel { Inside, Outside };

/// How far from the promise boundary generated instances sit.
enum class PromiseFamily {
    Extreme,  ///< psi inside range(M) or inside its complement
    Boundary, ///< <psi|M|psi> exactly 2/3 (inside) or 1/3 (outside)
    Mixed     ///< alternate Extreme and Boundary by instance index
};

inline const char *family_name(PromiseFamily f) {
    switch (f) {
    case PromiseFamily::Extreme:
        return "extreme";
    case PromiseFamily::Boundary:
        return "boundary";
    case PromiseFamily::Mixed:
        return "mixed";
    }
    return "?";
}

inline PromiseFamily family_from_name(const std::string &s) {
    if (s == "extreme") {
        return PromiseFamily::Extreme;
    }
    if (s == "boundary") {
        return PromiseFamily::Boundary;
    }
    detail::require<ValidationError>(s == "mixed",
                                     "unknown promise family '" + s + "'");
    return PromiseFamily::Mixed;
}

inline double projector_value(const PureState &psi, const CMatrix &m) {
    return psi.amplitudes().dot(m * psi.amplitudes()).real();
}

/**
 * @brief Vector-in-subspace instance: psi, a two-outcome projective
 * measurement {M, I - M}, and the promised side.
 *
 * Promise: <psi|M|psi> >= 2/3 when Inside, <= 1/3 when Outside
 * (1e-12 slack for rounding on boundary instances).
 */
struct VisInstance {
    PureState psi;
    Measurement m;
    VisLabel label;

    VisInstance(PureState state, Measurement measurement, VisLabel side)
        : psi(std::move(state)), m(std::move(measurement)), label(side) {
        detail::require<ValidationError>(
            m.kind() == MeasurementKind::ProjectiveTwoOutcome,
            "vector-in-subspace needs a projective two-outcome measurement");
        detail::require<DimensionError>(psi.dim() == m.dim(),
                                        "state and measurement dimensions "
                                        "differ");
        const double v = projector_value(psi, m.projector());
        detail::require<ValidationError>(
            label == VisLabel::Inside ? v >= 2.0 / 3.0 - 1e-12
                                      : v <= 1.0 / 3.0 + 1e-12,
            "instance violates the promise (<psi|M|psi> = " +
                std::to_string(v) + ")");
    }

    [[nodiscard]] std::size_t rank() const {
        return static_cast<std::size_t>(
            std::llround(m.projector().trace().real()));
    }
    [[nodiscard]] bool expected_bit() const {
        return label == VisLabel::Inside;
    }
};

/**
 * @brief Random promise instance in dimension `dim` with a Haar-random
 * rank-`rank` projector.
 *
 * Extreme: psi is Haar inside range(M) (Inside) or its complement (Outside).
 * Boundary: psi = sqrt(w) u + sqrt(1-w) v with u, v Haar in range and
 * complement and w = 2/3 (Inside) or 1/3 (Outside).
 */
template <class Engine>
VisInstance make_promise_instance(std::size_t dim, std::size_t rank,
                                  VisLabel label, PromiseFamily family,
                                  Engine &rng) {
    detail::require<DomainError>(rank >= 1 && rank < dim,
                                 "promise instances need 1 <= rank < dim");
    const CMatrix u = haar_unitary(dim, rng);
    const auto r = static_cast<Eigen::Index>(rank);
    const auto rest = static_cast<Eigen::Index>(dim - rank);
    const CMatrix m = span_projector(u, rank);
    const CVector in =
        u.leftCols(r) * complex_gaussian(rank, rng).normalized();
    const CVector out =
        u.rightCols(rest) * complex_gaussian(dim - rank, rng).normalized();
    double w = label == VisLabel::Inside ? 1.0 : 0.0;
    if (family == PromiseFamily::Boundary) {
        w = label == VisLabel::Inside ? 2.0 / 3.0 : 1.0 / 3.0;
    }
    const CVector psi = std::sqrt(w) * in + std::sqrt(1.0 - w) * out;
    return {PureState::normalized(psi), Measurement::projective(m), label};
}

/// Instance `index` of a generated batch; Mixed alternates the families.
template <class Engine>
VisInstance make_promise_instance(std::size_t dim, std::size_t rank,
                                  VisLabel label, PromiseFamily family,
                                  std::size_t index, Engine &rng) {
    if (family == PromiseFamily::Mixed) {
        family = index % 2 == 0 ? PromiseFamily::Extreme
                                : PromiseFamily::Boundary;
    }
    return make_promise_instance(dim, rank, label, family, rng);
}

/**
 * @brief Embeds an instance so that tr M' = N'/2.
 *
 * Rank N/2 is returned unchanged. Otherwise N' = 2N: psi is padded with zero
 * amplitudes and M gains N - r basis projectors on the padding block, which
 * leaves <psi'|M'|psi'> = <psi|M|psi> and keeps N' a power of two when N is.
 */
inline VisInstance pad_to_half_rank(const VisInstance &inst) {
    const std::size_t n = inst.psi.dim();
    const std::size_t r = inst.rank();
    detail::require<DomainError>(r <= n, "projector rank exceeds dimension");
    if (2 * r == n) {
        return inst;
    }
    const auto nn = static_cast<Eigen::Index>(n);
    CVector psi = CVector::Zero(2 * nn);
    psi.head(nn) = inst.psi.amplitudes();
    CMatrix m = CMatrix::Zero(2 * nn, 2 * nn);
    m.topLeftCorner(nn, nn) = inst.m.projector();
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n - r); ++i) {
        m(nn + i, nn + i) = 1.0;
    }
    return {PureState(std::move(psi)), Measurement::projective(m),
            inst.label};
}

} // namespace qcomm
