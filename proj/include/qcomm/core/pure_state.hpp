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
#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "qcomm/core/errors.hpp"

namespace qcomm {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Unit vector in C^N, |norm - 1| <= 1e-10.
class PureState {
  public:
    static constexpr double kNormTol = 1e-10;

    PureState() = default;

    explicit PureState(CVector amplitudes) : amps_(std::move(amplitudes)) {
        detail::require<DimensionError>(amps_.size() >= 1,
                                        "state dimension must be >= 1");
        detail::require<ValidationError>(
            std::abs(amps_.norm() - 1.0) <= kNormTol,
            "state is not unit-norm (norm " + std::to_string(amps_.norm()) +
                ")");
    }

    /// Rescales a nonzero vector to unit norm.
    static PureState normalized(const CVector &v) {
        detail::require<DimensionError>(v.size() >= 1,
                                        "state dimension must be >= 1");
        const double nrm = v.norm();
        detail::require<ValidationError>(nrm > 0.0 && std::isfinite(nrm),
                                         "cannot normalize a zero vector");
        return PureState(v / nrm);
    }

    static PureState basis(std::size_t dim, std::size_t index) {
        detail::require<DimensionError>(index < dim,
                                        "basis index out of range");
        CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return PureState(std::move(v));
    }

    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(amps_.size());
    }
    [[nodiscard]] const CVector &amplitudes() const noexcept { return amps_; }
    [[nodiscard]] Complex operator[](std::size_t i) const {
        return amps_(static_cast<Eigen::Index>(i));
    }

    /// Index of the first amplitude with modulus above `tol`.
    [[nodiscard]] std::size_t leading_index(double tol = 1e-15) const {
        for (Eigen::Index i = 0; i < amps_.size(); ++i) {
            if (std::abs(amps_(i)) > tol) {
                return static_cast<std::size_t>(i);
            }
        }
        return 0;
    }

    /// First nonzero amplitude is real and >= 0.
    [[nodiscard]] bool is_canonical(double tol = 1e-12) const {
        const Complex a = amps_(static_cast<Eigen::Index>(leading_index()));
        return std::abs(a.imag()) <= tol && a.real() >= 0.0;
    }

    /// Same ray with the global phase removed.
    [[nodiscard]] PureState canonicalized() const {
        const Complex a = amps_(static_cast<Eigen::Index>(leading_index()));
        const double m = std::abs(a);
        if (m == 0.0) {
            return *this;
        }
        CVector v = amps_ * (std::conj(a) / m);
        v(static_cast<Eigen::Index>(leading_index())) = m;
        return PureState(std::move(v));
    }

  private:
    CVector amps_;
};

/// <a|b>.
inline Complex overlap(const PureState &a, const PureState &b) {
    detail::require<DimensionError>(a.dim() == b.dim(),
                                    "overlap of states of unequal dimension");
    return a.amplitudes().dot(b.amplitudes());
}

/// |<a|b>|^2.
inline double fidelity(const PureState &a, const PureState &b) {
    return std::norm(overlap(a, b));
}

/// || |a><a| - |b><b| ||_1 = 2 sqrt(1 - |<a|b>|^2).
inline double trace_norm_distance(const PureState &a, const PureState &b) {
    return 2.0 * std::sqrt(std::max(0.0, 1.0 - fidelity(a, b)));
}

/// Half the trace norm of the projector difference.
inline double trace_distance(const PureState &a, const PureState &b) {
    return 0.5 * trace_norm_distance(a, b);
}

} // namespace qcomm
