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
#include <cstdint>
#include <optional>
#include <vector>

#include "qcomm/protocol/rectangle.hpp"
#include "qcomm/protocol/tree.hpp"

namespace qcomm {

struct LeafRectangle {
    Rectangle rect;
    bool accept;
    std::size_t leaf;
};

/**
 * @brief Splits X x Y into the rectangles of the tree's leaves.
 *
 * Each internal node refines only the speaker's side, so every leaf is a
 * product set and the leaves partition the domain. `cube_dim` tags the
 * rectangles as living on {+-1}^N.
 */
inline std::vector<LeafRectangle>
decompose_to_rectangles(const ProtocolTree &tree,
                        std::optional<std::size_t> cube_dim = std::nullopt) {
    tree.validate();
    const std::size_t nx = tree.alice_inputs();
    const std::size_t ny = tree.bob_inputs();
    detail::require<CapacityError>(static_cast<std::uint64_t>(nx) * ny <=
                                       kMaxEnumerablePairs,
                                   "input domain too large to decompose");
    struct Frame {
        std::size_t node;
        std::vector<std::uint8_t> a;
        std::vector<std::uint8_t> b;
    };
    std::vector<LeafRectangle> out;
    std::vector<Frame> stack;
    stack.push_back({0, std::vector<std::uint8_t>(nx, 1),
                     std::vector<std::uint8_t>(ny, 1)});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        const auto &node = tree.nodes()[f.node];
        if (node.is_leaf) {
            out.push_back({Rectangle(std::move(f.a), std::move(f.b), cube_dim),
                           node.accept, f.node});
            continue;
        }
        const bool alice = node.speaker == Party::Alice;
        auto &side = alice ? f.a : f.b;
        std::vector<std::uint8_t> zero(side.size(), 0);
        std::vector<std::uint8_t> one(side.size(), 0);
        for (std::size_t i = 0; i < side.size(); ++i) {
            if (side[i] != 0) {
                (node.table[i] != 0 ? one : zero)[i] = 1;
            }
        }
        Frame f1{node.children[1], alice ? one : f.a, alice ? f.b : one};
        Frame f0{node.children[0], alice ? std::move(zero) : std::move(f.a),
                 alice ? std::move(f.b) : std::move(zero)};
        stack.push_back(std::move(f1));
        stack.push_back(std::move(f0));
    }
    return out;
}

/// Distribution mu over X x Y stored densely, row x, column y.
class JointDistribution {
  public:
    JointDistribution(std::size_t nx, std::size_t ny, std::vector<double> w)
        : nx_(nx), ny_(ny), w_(std::move(w)) {
        detail::require<ValidationError>(w_.size() == nx_ * ny_,
                                         "weight table has the wrong size");
        double total = 0.0;
        for (double v : w_) {
            detail::require<ValidationError>(v >= 0.0 && std::isfinite(v),
                                             "negative or non-finite weight");
            total += v;
        }
        detail::require<ValidationError>(std::abs(total - 1.0) <= 1e-9,
                                         "mu is not normalized");
    }

    static JointDistribution uniform(std::size_t nx, std::size_t ny) {
        return {nx, ny,
                std::vector<double>(nx * ny, 1.0 / static_cast<double>(nx * ny))};
    }

    [[nodiscard]] double operator()(std::size_t x, std::size_t y) const {
        return w_[x * ny_ + y];
    }
    [[nodiscard]] std::size_t alice_inputs() const noexcept { return nx_; }
    [[nodiscard]] std::size_t bob_inputs() const noexcept { return ny_; }

    /// mu(A x B).
    [[nodiscard]] double measure(const Rectangle &r) const {
        double acc = 0.0;
        for (std::size_t x = 0; x < nx_; ++x) {
            if (r.alice()[x] == 0) {
                continue;
            }
            const double *row = &w_[x * ny_];
            for (std::size_t y = 0; y < ny_; ++y) {
                if (r.bob()[y] != 0) {
                    acc += row[y];
                }
            }
        }
        return acc;
    }

  private:
    std::size_t nx_;
    std::size_t ny_;
    std::vector<double> w_;
};

struct AccountingResult {
    double total = 0.0;          ///< sum_D pi(D) sum_{accepting R} mu(R)
    double eta = 0.0;            ///< part from rectangles with mu(R) < 2^{-2c}
    double large_rect_sum = 0.0; ///< part from rectangles with mu(R) >= 2^{-2c}
    std::size_t cost = 0;        ///< c
    bool eta_below_bound = false;   ///< eta < 2^{-c}
    double identity_gap = 0.0;      ///< |total - (eta + large_rect_sum)|
};

/**
 * @brief Acceptance probability of a randomized protocol as a weighted sum of
 * 1-rectangle measures, split at the 2^{-2c} largeness threshold.
 */
inline AccountingResult acceptance_accounting(const RandomizedProtocol &proto,
                                              const JointDistribution &mu) {
    const auto &front = proto.support().front().tree;
    detail::require<ValidationError>(
        front.alice_inputs() == mu.alice_inputs() &&
            front.bob_inputs() == mu.bob_inputs(),
        "mu is defined over a different input domain");
    AccountingResult res;
    res.cost = proto.cost_bound();
    const double threshold = std::ldexp(1.0, -2 * static_cast<int>(res.cost));
    for (const auto &branch : proto.support()) {
        double small = 0.0;
        double large = 0.0;
        for (const auto &leaf : decompose_to_rectangles(branch.tree)) {
            if (!leaf.accept) {
                continue;
            }
            const double m = mu.measure(leaf.rect);
            (m < threshold ? small : large) += m;
        }
        res.eta += branch.weight * small;
        res.large_rect_sum += branch.weight * large;
        res.total += branch.weight * (small + large);
    }
    res.identity_gap = std::abs(res.total - (res.eta + res.large_rect_sum));
    res.eta_below_bound =
        res.eta < std::ldexp(1.0, -static_cast<int>(res.cost));
    return res;
}

} // namespace qcomm
