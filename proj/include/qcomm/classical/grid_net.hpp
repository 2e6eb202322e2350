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
#include <span>
#include <string>
#include <vector>

#include "qcomm/core/haar.hpp"
#include "qcomm/core/sign_vector.hpp"
#include "qcomm/protocol/run.hpp"
#include "qcomm/quantum/dqs.hpp"

namespace qcomm {

/**
 * @brief Constructive epsilon-net over n-qubit pure states: every real and
 * imaginary amplitude component is rounded to a uniform grid and packed in
 * a fixed number of bits.
 *
 * With b bits per component the grid is {k / L : |k| <= L}, L = 2^{b-1} - 1,
 * so 0 and +-1 are grid points and quant_step = 1/L. Since
 * 2/quant_step = 2^b - 2, bits_per_amplitude = ceil(log2(2/quant_step)) for
 * every b >= 3. Decoding renormalizes.
 *
 * Covering guarantee: per-component error <= step/2 gives
 * || |psi><psi| - |psi^><psi^| ||_1 <= 2 step sqrt(2N).
 */
class GridNetCodec {
  public:
    static constexpr std::size_t kMinBits = 3;
    static constexpr std::size_t kMaxBits = 30;

    GridNetCodec(std::size_t qubits, double eps, std::size_t bits)
        : qubits_(qubits), eps_(eps), bits_(bits) {
        detail::require<DomainError>(eps > 0.0 && eps <= 2.0,
                                     "eps must lie in (0, 2]");
        detail::require<DimensionError>(qubits <= 10,
                                        "grid codec supports n <= 10");
        detail::require<DomainError>(bits >= kMinBits && bits <= kMaxBits,
                                     "bits per amplitude must be in [3, 30]");
        levels_ = (std::int64_t{1} << (bits - 1)) - 1;
    }

    /// Step the grid must not exceed before any verification:
    /// eps / (8 sqrt(2 * 2^n)).
    static double initial_step(std::size_t qubits, double eps) {
        return eps / (8.0 * std::sqrt(2.0 * std::ldexp(1.0, static_cast<int>(qubits))));
    }

    /// Smallest b >= 3 whose grid step is at most `step`.
    static std::size_t bits_for_step(double step) {
        std::size_t b = kMinBits;
        while (b < kMaxBits &&
               1.0 / static_cast<double>((std::int64_t{1} << (b - 1)) - 1) >
                   step) {
            ++b;
        }
        return b;
    }

    /**
     * @brief Codec for (n, eps) with a verified bit width.
     *
     * Starts from initial_step(), then moves b by one (the step by about a
     * factor 2) until the empirical covering check passes with margin 2
     * (max trace-norm error <= eps/2 on basis states, the uniform state and
     * `verify_samples` Haar states drawn from `verify_seed`). Loosening also
     * stops once the analytic guarantee 2 step sqrt(2N) would exceed eps.
     */
    static GridNetCodec calibrated(std::size_t qubits, double eps,
                                   std::uint64_t verify_seed = 0x5EED,
                                   std::size_t verify_samples = 1000) {
        std::size_t b = bits_for_step(initial_step(qubits, eps));
        auto passes = [&](std::size_t bits) {
            const GridNetCodec c(qubits, eps, bits);
            return c.analytic_bound() <= eps &&
                   c.empirical_max_error(verify_seed, verify_samples) <=
                       eps / 2.0;
        };
        while (!passes(b)) {
            detail::require<EncodingError>(b < kMaxBits,
                                           "no grid width meets eps");
            ++b;
        }
        while (b > kMinBits && passes(b - 1)) {
            --b;
        }
        return {qubits, eps, b};
    }

    [[nodiscard]] std::size_t qubits() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept {
        return std::size_t{1} << qubits_;
    }
    [[nodiscard]] double eps() const noexcept { return eps_; }
    [[nodiscard]] double quant_step() const noexcept {
        return 1.0 / static_cast<double>(levels_);
    }
    [[nodiscard]] std::size_t bits_per_amplitude() const noexcept {
        return bits_;
    }
    [[nodiscard]] std::size_t total_bits() const noexcept {
        return 2 * dim() * bits_;
    }

    /// Worst-case trace-norm error of decode(encode(psi)).
    [[nodiscard]] double analytic_bound() const {
        return 2.0 * quant_step() * std::sqrt(2.0 * static_cast<double>(dim()));
    }

    /// Fixed-width codes of the canonical-phase representative of psi.
    [[nodiscard]] std::vector<std::uint8_t> encode(const PureState &psi) const {
        detail::require<DimensionError>(psi.dim() == dim(),
                                        "state dimension does not match codec");
        const PureState canon = psi.canonicalized();
        std::vector<std::uint8_t> out;
        out.reserve(total_bits());
        for (std::size_t i = 0; i < dim(); ++i) {
            push_component(out, canon[i].real());
            push_component(out, canon[i].imag());
        }
        return out;
    }

    [[nodiscard]] PureState decode(std::span<const std::uint8_t> bits) const {
        detail::require<EncodingError>(bits.size() == total_bits(),
                                       "encoded state has the wrong length");
        CVector v(static_cast<Eigen::Index>(dim()));
        std::size_t pos = 0;
        for (std::size_t i = 0; i < dim(); ++i) {
            const double re = read_component(bits, pos);
            const double im = read_component(bits, pos);
            v(static_cast<Eigen::Index>(i)) = Complex(re, im);
        }
        detail::require<EncodingError>(v.norm() > 0.0,
                                       "encoded vector is zero");
        return PureState::normalized(v);
    }

    /// Max trace-norm error over the verification set described in
    /// calibrated().
    [[nodiscard]] double empirical_max_error(std::uint64_t seed,
                                             std::size_t samples) const {
        double worst = 0.0;
        auto probe = [&](const PureState &psi) {
            worst = std::max(worst,
                             trace_norm_distance(psi, decode(encode(psi))));
        };
        for (std::size_t i = 0; i < dim(); ++i) {
            probe(PureState::basis(dim(), i));
        }
        probe(PureState::normalized(
            CVector::Ones(static_cast<Eigen::Index>(dim()))));
        Rng rng(seed);
        for (std::size_t s = 0; s < samples; ++s) {
            probe(haar_random_state(dim(), rng));
        }
        return worst;
    }

  private:
    void push_component(std::vector<std::uint8_t> &out, double c) const {
        detail::require<EncodingError>(c >= -1.0 - 1e-12 && c <= 1.0 + 1e-12,
                                       "amplitude component outside [-1,1]");
        const auto l = static_cast<double>(levels_);
        auto k = static_cast<std::int64_t>(std::llround(c * l)) + levels_;
        k = std::clamp<std::int64_t>(k, 0, 2 * levels_);
        for (std::size_t i = 0; i < bits_; ++i) {
            out.push_back(static_cast<std::uint8_t>((k >> i) & 1));
        }
    }

    double read_component(std::span<const std::uint8_t> bits,
                          std::size_t &pos) const {
        std::int64_t k = 0;
        for (std::size_t i = 0; i < bits_; ++i) {
            k |= static_cast<std::int64_t>(bits[pos++] & 1U) << i;
        }
        detail::require<EncodingError>(k <= 2 * levels_,
                                       "unused grid code in encoded state");
        return static_cast<double>(k - levels_) / static_cast<double>(levels_);
    }

    std::size_t qubits_;
    double eps_;
    std::size_t bits_;
    std::int64_t levels_;
};

/// Packs bits LSB-first into bytes and prints them as lowercase hex.
inline std::string bits_to_hex(std::span<const std::uint8_t> bits) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (std::size_t byte = 0; byte * 8 < bits.size(); ++byte) {
        unsigned v = 0;
        for (std::size_t i = 0; i < 8 && byte * 8 + i < bits.size(); ++i) {
            v |= static_cast<unsigned>(bits[byte * 8 + i] & 1U) << i;
        }
        out.push_back(kDigits[v >> 4]);
        out.push_back(kDigits[v & 0xF]);
    }
    return out;
}

inline std::vector<std::uint8_t> hex_to_bits(const std::string &hex,
                                             std::size_t nbits) {
    detail::require<EncodingError>(hex.size() % 2 == 0 &&
                                       hex.size() * 4 >= nbits,
                                   "hex string too short");
    auto nibble = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') {
            return static_cast<unsigned>(c - '0');
        }
        if (c >= 'a' && c <= 'f') {
            return static_cast<unsigned>(c - 'a' + 10);
        }
        if (c >= 'A' && c <= 'F') {
            return static_cast<unsigned>(c - 'A' + 10);
        }
        throw EncodingError("invalid hex digit");
    };
    std::vector<std::uint8_t> bits;
    for (std::size_t i = 0; i < nbits; ++i) {
        const std::size_t byte = i / 8;
        const unsigned v = (nibble(hex[2 * byte]) << 4) | nibble(hex[2 * byte + 1]);
        bits.push_back(static_cast<std::uint8_t>((v >> (i % 8)) & 1U));
    }
    return bits;
}

struct EpsNetRun {
    std::size_t outcome;
    ProtocolRun run;
    PureState decoded;
    OutcomeDistribution realized_pmf;
};

/**
 * @brief One-way protocol for Distributed Quantum Sampling: Alice sends the
 * grid code of psi, Bob decodes and samples his POVM on the decoded state.
 */
template <class Engine>
EpsNetRun dqs_epsnet_protocol(const DqsInstance &inst,
                              const GridNetCodec &codec, Engine &rng) {
    detail::require<ValidationError>(inst.psi.dim() == codec.dim(),
                                     "codec dimension does not match instance");
    ProtocolRun run;
    run.send_bits(Party::Alice, codec.encode(inst.psi));
    PureState decoded = codec.decode(run.transcript());
    OutcomeDistribution pmf = dqs_distribution(decoded, inst.m);
    const std::size_t outcome = pmf.sample(rng);
    return {outcome, std::move(run), std::move(decoded), std::move(pmf)};
}

} // namespace qcomm
