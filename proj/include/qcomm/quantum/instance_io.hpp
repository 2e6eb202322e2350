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

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcomm/quantum/ddfs.hpp"

namespace qcomm {

/// {"n": n, "f": [+-1...], "g": [+-1...]}
inline nlohmann::json instance_to_json(const DfsInstance &inst) {
    return {{"n", inst.qubits()}, {"f", inst.f.to_ints()},
            {"g", inst.g.to_ints()}};
}

inline DfsInstance instance_from_json(const nlohmann::json &j) {
    try {
        const auto n = j.at("n").get<std::size_t>();
        DfsInstance inst(SignVector(j.at("f").get<std::vector<int>>()),
                         SignVector(j.at("g").get<std::vector<int>>()));
        detail::require<ValidationError>(inst.qubits() == n,
                                         "table length does not match n");
        return inst;
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed instance: ") + e.what());
    }
}

/// CSV with header "shot,s,t"; s and t as integers in the bit convention.
inline void write_pairs_csv(std::ostream &os,
                            const std::vector<OutcomePair> &pairs) {
    os << "shot,s,t\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        os << i << ',' << pairs[i].first << ',' << pairs[i].second << '\n';
    }
}

template <class Engine>
DfsInstance random_dfs_instance(std::size_t qubits, Engine &rng) {
    const std::size_t n = std::size_t{1} << qubits;
    auto f = random_sign_vector(n, rng);
    auto g = random_sign_vector(n, rng);
    return {std::move(f), std::move(g)};
}

} // namespace qcomm
