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

#include <string>

#include <json.hpp>

#include "qcomm/protocol/tree.hpp"

namespace qcomm {

/// {"alice_inputs", "bob_inputs", "depth_bound", "nodes": [...]} with the
/// root first; internal nodes carry "speaker", "table" and "children".
inline nlohmann::json tree_to_json(const ProtocolTree &tree) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto &n : tree.nodes()) {
        if (n.is_leaf) {
            nodes.push_back({{"leaf", true}, {"accept", n.accept}});
        } else {
            nodes.push_back({{"leaf", false},
                             {"speaker", party_name(n.speaker)},
                             {"table", n.table},
                             {"children", {n.children[0], n.children[1]}}});
        }
    }
    return {{"alice_inputs", tree.alice_inputs()},
            {"bob_inputs", tree.bob_inputs()},
            {"depth_bound", tree.depth_bound()},
            {"nodes", std::move(nodes)}};
}

inline ProtocolTree tree_from_json(const nlohmann::json &j) {
    try {
        ProtocolTree t(j.at("alice_inputs").get<std::size_t>(),
                       j.at("bob_inputs").get<std::size_t>(),
                       j.at("depth_bound").get<std::size_t>());
        const auto &nodes = j.at("nodes");
        for (const auto &n : nodes) {
            if (n.at("leaf").get<bool>()) {
                t.add_leaf(n.at("accept").get<bool>());
                continue;
            }
            const auto who = n.at("speaker").get<std::string>();
            detail::require<ValidationError>(who == "alice" || who == "bob",
                                             "unknown speaker '" + who + "'");
            t.add_internal(who == "alice" ? Party::Alice : Party::Bob,
                           n.at("table").get<std::vector<std::uint8_t>>());
        }
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (!nodes[i].at("leaf").get<bool>()) {
                const auto &c = nodes[i].at("children");
                t.set_children(i, c.at(0).get<std::size_t>(),
                               c.at(1).get<std::size_t>());
            }
        }
        t.validate();
        return t;
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed protocol tree: ") +
                              e.what());
    }
}

} // namespace qcomm
