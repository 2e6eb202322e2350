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
#include <random>

#include "qcomm/core/pure_state.hpp"

namespace qcomm {

/// Vector of i.i.d. standard complex Gaussians (real and imaginary parts
/// each N(0, 1/2)).
template <class Engine> CVector complex_gaussian(std::size_t n, Engine &rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CVector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = Complex(re, im);
    }
    return v;
}

/// Haar-random pure state: a normalized complex Gaussian vector.
template <class Engine> PureState haar_random_state(std::size_t n, Engine &rng) {
    detail::require<DimensionError>(n >= 1, "state dimension must be >= 1");
    return PureState::normalized(complex_gaussian(n, rng));
}

/**
 * @brief Haar-random N x N unitary.
 *
 * QR of a complex Ginibre matrix with the phases of R's diagonal folded into
 * Q (Mezzadri's correction); without that step the law is not Haar.
 */
template <class Engine> CMatrix haar_unitary(std::size_t n, Engine &rng) {
    detail::require<DimensionError>(n >= 1, "unitary dimension must be >= 1");
    const auto dim = static_cast<Eigen::Index>(n);
    CMatrix z(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        z.col(c) = complex_gaussian(n, rng);
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index c = 0; c < dim; ++c) {
        const Complex d = r(c, c);
        const double m = std::abs(d);
        if (m > 0.0) {
            q.col(c) *= d / m;
        }
    }
    return q;
}

} // namespace qcomm
