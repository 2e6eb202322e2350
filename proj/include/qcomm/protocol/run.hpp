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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qcomm/core/errors.hpp"

namespace qcomm {

enum class Party { Alice, Bob };

inline const char *party_name(Party p) {
    return p == Party::Alice ? "alice" : "bob";
}

/// ceil(log2 K): bits needed to name one of K alternatives (0 for K = 1).
inline std::size_t index_bits(std::uint64_t k) {
    detail::require<ValidationError>(k >= 1, "index range must be non-empty");
    return k == 1 ? 0 : static_cast<std::size_t>(std::bit_width(k - 1));
}

/**
 * @brief Transcript of one execution of a two-party protocol.
 *
 * bits_sent() is by construction the transcript length. Index messages are
 * written as fixed-width binary numbers, so sending one of K values costs
 * index_bits(K) bits.
 */
class ProtocolRun {
  public:
    struct Message {
        Party sender;
        std::size_t offset;
        std::size_t width;
    };

    void send_bit(Party from, bool bit) {
        messages_.push_back({from, bits_.size(), 1});
        bits_.push_back(bit ? 1 : 0);
    }

    /// Sends `value` as a `width`-bit little-endian word.
    void send_word(Party from, std::uint64_t value, std::size_t width) {
        detail::require<EncodingError>(
            width >= 64 || (value >> width) == 0,
            "value does not fit in " + std::to_string(width) + " bits");
        messages_.push_back({from, bits_.size(), width});
        for (std::size_t i = 0; i < width; ++i) {
            bits_.push_back(static_cast<std::uint8_t>((value >> i) & 1U));
        }
    }

    void send_bits(Party from, const std::vector<std::uint8_t> &bits) {
        messages_.push_back({from, bits_.size(), bits.size()});
        bits_.insert(bits_.end(), bits.begin(), bits.end());
    }

    /// Reads back a word written by send_word.
    [[nodiscard]] std::uint64_t word_at(std::size_t offset,
                                        std::size_t width) const {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < width; ++i) {
            v |= static_cast<std::uint64_t>(bits_.at(offset + i)) << i;
        }
        return v;
    }

    /// Appends another run's transcript (sequential composition).
    void append(const ProtocolRun &other) {
        for (const auto &m : other.messages_) {
            messages_.push_back({m.sender, bits_.size() + m.offset, m.width});
        }
        bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
    }

    [[nodiscard]] std::size_t bits_sent() const noexcept {
        return bits_.size();
    }
    [[nodiscard]] const std::vector<std::uint8_t> &transcript() const noexcept {
        return bits_;
    }
    [[nodiscard]] const std::vector<Message> &messages() const noexcept {
        return messages_;
    }

  private:
    std::vector<std::uint8_t> bits_;
    std::vector<Message> messages_;
};

} // namespace qcomm
