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

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcomm/harness/config.hpp"

namespace qcomm {

/// Typed reads from a config that also record the effective value (default
/// or given) for the report.
class ParamReader {
  public:
    explicit ParamReader(const ExperimentConfig &c) : c_(c) {}

    std::int64_t integer(const std::string &key, std::int64_t fallback) {
        const auto v = c_.get_int(key, fallback);
        eff_[key] = v;
        return v;
    }
    std::size_t count(const std::string &key, std::int64_t fallback,
                      std::int64_t min = 0) {
        const auto v = integer(key, fallback);
        detail::require<ValidationError>(v >= min, "parameter '" + key +
                                                       "' must be >= " +
                                                       std::to_string(min));
        return static_cast<std::size_t>(v);
    }
    double real(const std::string &key, double fallback) {
        const double v = c_.get_double(key, fallback);
        eff_[key] = v;
        return v;
    }
    std::string text(const std::string &key, const std::string &fallback) {
        auto v = c_.get_string(key, fallback);
        eff_[key] = v;
        return v;
    }
    bool flag(const std::string &key, bool fallback) {
        const bool v = c_.get_bool(key, fallback);
        eff_[key] = v;
        return v;
    }
    std::vector<std::int64_t> integers(const std::string &key,
                                       const std::vector<std::int64_t> &fb) {
        auto v = c_.get_int_list(key, fb);
        eff_[key] = v;
        return v;
    }
    std::vector<double> reals(const std::string &key,
                              const std::vector<double> &fb) {
        auto v = c_.get_double_list(key, fb);
        eff_[key] = v;
        return v;
    }

    [[nodiscard]] const nlohmann::json &effective() const { return eff_; }

  private:
    const ExperimentConfig &c_;
    nlohmann::json eff_ = nlohmann::json::object();
};

} // namespace qcomm
