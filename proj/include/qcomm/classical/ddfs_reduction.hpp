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
#include <cstdint>

#include "qcomm/core/errors.hpp"
#include "qcomm/core/sign_vector.hpp"
#include "qcomm/protocol/run.hpp"
#include "qcomm/quantum/ddfs.hpp"

namespace qcomm {

/**
 * @brief Turns a DDFS output pair into a DFS sample.
 *
 * Alice sends her n-bit output s; Bob outputs u = s xor t. Appends the n
 * bits to `run`, so a DDFS protocol of cost c becomes a DFS protocol of cost
 * c + n.
 */
inline std::uint64_t ddfs_to_dfs(const OutcomePair &pair, std::size_t qubits,
                                 ProtocolRun &run) {
    detail::require<DomainError>(qubits >= 1 && qubits < 64,
                                 "qubit count must be in [1, 63]");
    const std::uint64_t limit = std::uint64_t{1} << qubits;
    detail::require<DomainError>(pair.first < limit && pair.second < limit,
                                 "output pair out of range");
    run.send_word(Party::Alice, pair.first, qubits);
    const std::uint64_t s = run.word_at(run.bits_sent() - qubits, qubits);
    return s ^ pair.second;
}

/// Exact output law of the reduction applied to a joint source pmf.
inline OutcomeDistribution ddfs_to_dfs_law(const OutcomeDistribution &joint,
                                           std::size_t qubits) {
    return xor_pushforward(joint, std::size_t{1} << qubits);
}

} // namespace qcomm
