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
#include <string>
#include <utility>
#include <vector>

#include "qcomm/core/rng.hpp"
#include "qcomm/protocol/run.hpp"

namespace qcomm {

/**
 * @brief Node of a deterministic protocol tree.
 *
 * Internal nodes hold the speaker and a message table indexed by the
 * speaker's input; the bit sent selects children[bit]. Because a node is
 * reached by exactly one path, the table may depend on the path as well.
 */
struct TreeNode {
    bool is_leaf = true;
    bool accept = false;
    Party speaker = Party::Alice;
    std::vector<std::uint8_t> table;
    std::size_t children[2] = {0, 0};
};

/**
 * @brief Deterministic two-party protocol over inputs X = [0, nx), Y = [0, ny).
 *
 * Nodes are stored in a flat list with the root at index 0. Every root-to-leaf
 * path has length at most depth_bound().
 */
class ProtocolTree {
  public:
    ProtocolTree(std::size_t alice_inputs, std::size_t bob_inputs,
                 std::size_t depth_bound)
        : nx_(alice_inputs), ny_(bob_inputs), depth_bound_(depth_bound) {
        detail::require<ValidationError>(nx_ >= 1 && ny_ >= 1,
                                         "input domains must be non-empty");
    }

    /// Single-leaf protocol: no communication, fixed answer.
    static ProtocolTree constant(std::size_t nx, std::size_t ny, bool accept) {
        ProtocolTree t(nx, ny, 0);
        t.add_leaf(accept);
        return t;
    }

    std::size_t add_leaf(bool accept) {
        TreeNode n;
        n.is_leaf = true;
        n.accept = accept;
        nodes_.push_back(std::move(n));
        return nodes_.size() - 1;
    }

    /// Adds an internal node; children are attached later with set_children.
    std::size_t add_internal(Party speaker, std::vector<std::uint8_t> table) {
        const std::size_t need = speaker == Party::Alice ? nx_ : ny_;
        detail::require<ValidationError>(table.size() == need,
                                         "message table must cover the "
                                         "speaker's whole input domain");
        TreeNode n;
        n.is_leaf = false;
        n.speaker = speaker;
        n.table = std::move(table);
        nodes_.push_back(std::move(n));
        return nodes_.size() - 1;
    }

    void set_children(std::size_t node, std::size_t on_zero,
                      std::size_t on_one) {
        detail::require<ValidationError>(node < nodes_.size() &&
                                             !nodes_[node].is_leaf,
                                         "children attach to internal nodes");
        nodes_[node].children[0] = on_zero;
        nodes_[node].children[1] = on_one;
    }

    /// Checks node references, table ranges, acyclicity and the depth bound.
    void validate() const {
        detail::require<ValidationError>(!nodes_.empty(), "tree has no nodes");
        std::vector<std::uint8_t> seen(nodes_.size(), 0);
        std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
        while (!stack.empty()) {
            auto [id, depth] = stack.back();
            stack.pop_back();
            detail::require<ValidationError>(id < nodes_.size(),
                                             "dangling child reference");
            detail::require<ValidationError>(seen[id] == 0,
                                             "node reachable twice");
            seen[id] = 1;
            const auto &n = nodes_[id];
            if (n.is_leaf) {
                continue;
            }
            detail::require<ValidationError>(depth + 1 <= depth_bound_,
                                             "path exceeds the depth bound");
            for (auto b : n.table) {
                detail::require<ValidationError>(b <= 1,
                                                 "message table entry not a bit");
            }
            stack.push_back({n.children[1], depth + 1});
            stack.push_back({n.children[0], depth + 1});
        }
    }

    [[nodiscard]] std::size_t alice_inputs() const noexcept { return nx_; }
    [[nodiscard]] std::size_t bob_inputs() const noexcept { return ny_; }
    [[nodiscard]] std::size_t depth_bound() const noexcept {
        return depth_bound_;
    }
    [[nodiscard]] const std::vector<TreeNode> &nodes() const noexcept {
        return nodes_;
    }

    /// Longest root-to-leaf path.
    [[nodiscard]] std::size_t depth() const { return depth_from(0); }

    /// Leaf reached on (x, y), with the transcript written to `run`.
    std::size_t leaf_of(std::size_t x, std::size_t y,
                        ProtocolRun *run = nullptr) const {
        detail::require<DomainError>(x < nx_ && y < ny_, "input out of range");
        std::size_t id = 0;
        while (!nodes_[id].is_leaf) {
            const auto &n = nodes_[id];
            const std::uint8_t bit =
                n.table[n.speaker == Party::Alice ? x : y];
            if (run != nullptr) {
                run->send_bit(n.speaker, bit != 0);
            }
            id = n.children[bit];
        }
        return id;
    }

    [[nodiscard]] bool accepts(std::size_t x, std::size_t y) const {
        return nodes_[leaf_of(x, y)].accept;
    }

  private:
    [[nodiscard]] std::size_t depth_from(std::size_t id) const {
        const auto &n = nodes_[id];
        if (n.is_leaf) {
            return 0;
        }
        return 1 + std::max(depth_from(n.children[0]),
                            depth_from(n.children[1]));
    }

    std::size_t nx_;
    std::size_t ny_;
    std::size_t depth_bound_;
    std::vector<TreeNode> nodes_;
};

/// Mixture of deterministic trees with weights pi(D) summing to 1 +- 1e-12.
class RandomizedProtocol {
  public:
    struct Branch {
        ProtocolTree tree;
        double weight;
    };

    explicit RandomizedProtocol(std::vector<Branch> support)
        : support_(std::move(support)) {
        detail::require<ValidationError>(!support_.empty(),
                                         "randomized protocol has no branches");
        double total = 0.0;
        for (const auto &b : support_) {
            detail::require<ValidationError>(b.weight >= 0.0,
                                             "negative branch weight");
            detail::require<ValidationError>(
                b.tree.alice_inputs() == support_.front().tree.alice_inputs() &&
                    b.tree.bob_inputs() == support_.front().tree.bob_inputs(),
                "branches disagree on input domains");
            b.tree.validate();
            total += b.weight;
        }
        detail::require<ValidationError>(std::abs(total - 1.0) <= 1e-12,
                                         "branch weights do not sum to 1");
    }

    [[nodiscard]] const std::vector<Branch> &support() const noexcept {
        return support_;
    }

    /// Shared bound c on the communication of every branch.
    [[nodiscard]] std::size_t cost_bound() const {
        std::size_t c = 0;
        for (const auto &b : support_) {
            c = std::max(c, b.tree.depth_bound());
        }
        return c;
    }

  private:
    std::vector<Branch> support_;
};

namespace detail {
template <class Engine>
std::size_t grow_random(ProtocolTree &t, std::size_t depth_left,
                        double leaf_prob, Engine &rng) {
    if (depth_left == 0 || bernoulli(rng, leaf_prob)) {
        return t.add_leaf((rng() & 1U) != 0U);
    }
    const Party who = (rng() & 1U) != 0U ? Party::Bob : Party::Alice;
    std::vector<std::uint8_t> table(who == Party::Alice ? t.alice_inputs()
                                                        : t.bob_inputs());
    for (auto &b : table) {
        b = static_cast<std::uint8_t>(rng() & 1U);
    }
    const std::size_t id = t.add_internal(who, std::move(table));
    const std::size_t zero = grow_random(t, depth_left - 1, leaf_prob, rng);
    const std::size_t one = grow_random(t, depth_left - 1, leaf_prob, rng);
    t.set_children(id, zero, one);
    return id;
}
} // namespace detail

/// Random tree of depth <= max_depth; each node becomes a leaf with
/// probability leaf_prob (always at max depth). Tables are uniform bits.
template <class Engine>
ProtocolTree random_tree(std::size_t nx, std::size_t ny, std::size_t max_depth,
                         Engine &rng, double leaf_prob = 0.2) {
    ProtocolTree t(nx, ny, max_depth);
    detail::grow_random(t, max_depth, leaf_prob, rng);
    t.validate();
    return t;
}

/// Mixture of `branches` random trees with random normalized weights.
template <class Engine>
RandomizedProtocol random_randomized_protocol(std::size_t nx, std::size_t ny,
                                              std::size_t max_depth,
                                              std::size_t branches,
                                              Engine &rng) {
    std::vector<double> w(branches);
    double total = 0.0;
    for (auto &v : w) {
        v = uniform01(rng) + 1e-3;
        total += v;
    }
    std::vector<RandomizedProtocol::Branch> support;
    for (std::size_t i = 0; i < branches; ++i) {
        support.push_back({random_tree(nx, ny, max_depth, rng), w[i] / total});
    }
    // Renormalize against rounding so the weights meet the 1e-12 invariant.
    double s = 0.0;
    for (const auto &b : support) {
        s += b.weight;
    }
    for (auto &b : support) {
        b.weight /= s;
    }
    return RandomizedProtocol(std::move(support));
}

} // namespace qcomm
