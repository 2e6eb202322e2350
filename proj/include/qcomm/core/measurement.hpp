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
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qcomm/core/haar.hpp"

namespace qcomm {

enum class MeasurementKind { ProjectiveTwoOutcome, GeneralPovm };

/**
 * @brief A POVM {E_j}: Hermitian PSD operators summing to the identity.
 *
 * Two-outcome projective measurements store {M, I - M} with M^2 = M. All
 * checks use the tolerance kTol.
 */
class Measurement {
  public:
    static constexpr double kTol = 1e-9;

    Measurement(MeasurementKind kind, std::vector<CMatrix> operators)
        : kind_(kind), ops_(std::move(operators)) {
        validate();
    }

    /// {M, I - M} for an orthogonal projector M.
    static Measurement projective(const CMatrix &projector) {
        const auto n = projector.rows();
        CMatrix id = CMatrix::Identity(n, n);
        return Measurement(MeasurementKind::ProjectiveTwoOutcome,
                           {projector, id - projector});
    }

    static Measurement povm(std::vector<CMatrix> operators) {
        return Measurement(MeasurementKind::GeneralPovm, std::move(operators));
    }

    static Measurement computational_basis(std::size_t dim) {
        std::vector<CMatrix> ops;
        const auto n = static_cast<Eigen::Index>(dim);
        for (Eigen::Index i = 0; i < n; ++i) {
            CMatrix e = CMatrix::Zero(n, n);
            e(i, i) = 1.0;
            ops.push_back(std::move(e));
        }
        return povm(std::move(ops));
    }

    /// Rank-one projectors onto the columns of a unitary.
    static Measurement from_basis(const CMatrix &unitary) {
        std::vector<CMatrix> ops;
        for (Eigen::Index c = 0; c < unitary.cols(); ++c) {
            ops.push_back(unitary.col(c) * unitary.col(c).adjoint());
        }
        return povm(std::move(ops));
    }

    [[nodiscard]] MeasurementKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(ops_.front().rows());
    }
    [[nodiscard]] std::size_t outcomes() const noexcept { return ops_.size(); }
    [[nodiscard]] const std::vector<CMatrix> &operators() const noexcept {
        return ops_;
    }
    /// The accepting projector M of a two-outcome measurement.
    [[nodiscard]] const CMatrix &projector() const {
        detail::require<ValidationError>(
            kind_ == MeasurementKind::ProjectiveTwoOutcome,
            "measurement is not a two-outcome projective measurement");
        return ops_.front();
    }

  private:
    void validate() const {
        detail::require<ValidationError>(!ops_.empty(),
                                         "measurement has no operators");
        const auto n = ops_.front().rows();
        detail::require<DimensionError>(n >= 1, "empty operator");
        CMatrix sum = CMatrix::Zero(n, n);
        for (const auto &e : ops_) {
            detail::require<DimensionError>(e.rows() == n && e.cols() == n,
                                            "operators must be square and of "
                                            "equal dimension");
            detail::require<ValidationError>(
                (e - e.adjoint()).cwiseAbs().maxCoeff() <= kTol,
                "operator is not Hermitian");
            Eigen::SelfAdjointEigenSolver<CMatrix> es(
                e, Eigen::EigenvaluesOnly);
            detail::require<ValidationError>(es.eigenvalues().minCoeff() >=
                                                 -kTol,
                                             "operator is not PSD");
            sum += e;
        }
        detail::require<ValidationError>(
            (sum - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= kTol,
            "operators do not sum to the identity");
        if (kind_ == MeasurementKind::ProjectiveTwoOutcome) {
            detail::require<ValidationError>(ops_.size() == 2,
                                             "projective measurement needs "
                                             "exactly two operators");
            const CMatrix &m = ops_.front();
            detail::require<ValidationError>(
                (m * m - m).cwiseAbs().maxCoeff() <= kTol,
                "operator is not a projector");
        }
    }

    MeasurementKind kind_;
    std::vector<CMatrix> ops_;
};

/// Projector onto the span of the first `rank` columns of `basis`.
inline CMatrix span_projector(const CMatrix &basis, std::size_t rank) {
    const auto r = static_cast<Eigen::Index>(rank);
    const CMatrix cols = basis.leftCols(r);
    return cols * cols.adjoint();
}

template <class Engine>
CMatrix haar_random_projector(std::size_t dim, std::size_t rank, Engine &rng) {
    detail::require<DomainError>(rank <= dim, "projector rank exceeds dimension");
    return span_projector(haar_unitary(dim, rng), rank);
}

/// Random k-outcome POVM: E_j = S^{-1/2} A_j S^{-1/2} with A_j = G_j G_j^*.
template <class Engine>
Measurement random_povm(std::size_t dim, std::size_t k, Engine &rng) {
    detail::require<ValidationError>(k >= 1, "POVM needs at least one outcome");
    const auto n = static_cast<Eigen::Index>(dim);
    std::vector<CMatrix> a;
    CMatrix s = CMatrix::Zero(n, n);
    for (std::size_t j = 0; j < k; ++j) {
        CMatrix g(n, n);
        for (Eigen::Index c = 0; c < n; ++c) {
            g.col(c) = complex_gaussian(dim, rng);
        }
        a.push_back(g * g.adjoint());
        s += a.back();
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
    const CMatrix inv_sqrt = es.operatorInverseSqrt();
    std::vector<CMatrix> ops;
    for (auto &aj : a) {
        CMatrix e = inv_sqrt * aj * inv_sqrt;
        ops.push_back(0.5 * (e + e.adjoint()));
    }
    return Measurement::povm(std::move(ops));
}

} // namespace qcomm
