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
#include <vector>

#include "qcomm/core/distribution.hpp"
#include "qcomm/core/measurement.hpp"
#include "qcomm/core/pure_state.hpp"

namespace qcomm {

/// Distributed Quantum Sampling input: Alice holds psi, Bob holds a POVM.
struct DqsInstance {
    PureState psi;
    Measurement m;

    DqsInstance(PureState state, Measurement measurement)
        : psi(std::move(state)), m(std::move(measurement)) {
        detail::require<DimensionError>(psi.dim() == m.dim(),
                                        "state and measurement dimensions "
                                        "differ");
    }
};

/// p_j = <psi|E_j|psi>; the imaginary part must vanish to 1e-10.
inline OutcomeDistribution dqs_distribution(const PureState &psi,
                                            const Measurement &m) {
    detail::require<DimensionError>(psi.dim() == m.dim(),
                                    "state and measurement dimensions differ");
    std::vector<double> p;
    p.reserve(m.outcomes());
    for (const auto &e : m.operators()) {
        const Complex v = psi.amplitudes().dot(e * psi.amplitudes());
        detail::require<ValidationError>(std::abs(v.imag()) <= 1e-10,
                                         "outcome probability is not real");
        p.push_back(v.real());
    }
    return OutcomeDistribution(std::move(p));
}

inline OutcomeDistribution dqs_distribution(const DqsInstance &inst) {
    return dqs_distribution(inst.psi, inst.m);
}

} // namespace qcomm
