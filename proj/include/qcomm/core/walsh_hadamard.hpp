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
#include <span>
#include <vector>

#include "qcomm/core/sign_vector.hpp"

namespace qcomm {

/**
 * @brief Unnormalized in-place fast Walsh-Hadamard transform.
 *
 * After the call, v[s] = sum_x (-1)^{s.x} v_in[x]. Applying it twice
 * multiplies the input by v.size(). Works for any arithmetic value type.
 */
template <class T> void fwht_inplace(std::span<T> v) {
    const std::size_t n = v.size();
    log2_exact(n);
    for (std::size_t half = 1; half < n; half <<= 1) {
        for (std::size_t block = 0; block < n; block += half << 1) {
            for (std::size_t j = block; j < block + half; ++j) {
                const T a = v[j];
                const T b = v[j + half];
                v[j] = a + b;
                v[j + half] = a - b;
            }
        }
    }
}

/// Fourier coefficients h^(s) = 2^{-n} sum_x (-1)^{s.x} h(x).
inline std::vector<double> walsh_hadamard(const SignVector &table) {
    std::vector<double> v(table.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = table[i];
    }
    fwht_inplace(std::span<double>(v));
    const double scale = 1.0 / static_cast<double>(v.size());
    for (auto &c : v) {
        c *= scale;
    }
    return v;
}

} // namespace qcomm
