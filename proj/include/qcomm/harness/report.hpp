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
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcomm/core/errors.hpp"

namespace qcomm {

/// One run's output. Everything except wall_time_s is a function of the
/// command, params and seed.
struct ReportRecord {
    std::string command;
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json metrics = nlohmann::json::object();
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;

    /// The record without wall time, for reproducibility comparisons.
    [[nodiscard]] std::string deterministic_dump() const {
        return nlohmann::json{{"command", command},
                              {"params", params},
                              {"metrics", metrics},
                              {"seed", seed}}
            .dump();
    }
};

inline void to_json(nlohmann::json &j, const ReportRecord &r) {
    j = nlohmann::json{{"command", r.command}, {"params", r.params},
                       {"metrics", r.metrics}, {"seed", r.seed},
                       {"wall_time_s", r.wall_time_s}};
}

inline void from_json(const nlohmann::json &j, ReportRecord &r) {
    j.at("command").get_to(r.command);
    r.params = j.at("params");
    r.metrics = j.at("metrics");
    j.at("seed").get_to(r.seed);
    r.wall_time_s = j.value("wall_time_s", 0.0);
}

inline void append_record(const std::string &path, const ReportRecord &r) {
    std::ofstream out(path, std::ios::app);
    detail::require<IoError>(out.good(), "cannot open " + path);
    out << nlohmann::json(r).dump() << '\n';
    out.flush();
    detail::require<IoError>(out.good(), "cannot write " + path);
}

inline std::vector<ReportRecord> read_records(std::istream &in) {
    std::vector<ReportRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            out.push_back(nlohmann::json::parse(line).get<ReportRecord>());
        } catch (const nlohmann::json::exception &e) {
            throw ValidationError("results line " + std::to_string(lineno) +
                                  ": " + e.what());
        }
    }
    return out;
}

namespace detail {
inline std::string csv_cell(const nlohmann::json &v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : s) {
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        }
        return q + "\"";
    }
    return s;
}
} // namespace detail

/**
 * @brief Plot-ready CSV: one row per record with columns command, seed,
 * every parameter (param.*) and every scalar metric (metric.*). Nested
 * metrics are left out; missing cells stay empty.
 */
inline void records_to_csv(std::ostream &os,
                           const std::vector<ReportRecord> &records) {
    std::set<std::string> pkeys;
    std::set<std::string> mkeys;
    for (const auto &r : records) {
        for (const auto &[k, v] : r.params.items()) {
            pkeys.insert(k);
        }
        for (const auto &[k, v] : r.metrics.items()) {
            if (v.is_primitive()) {
                mkeys.insert(k);
            }
        }
    }
    os << "command,seed";
    for (const auto &k : pkeys) {
        os << ",param." << k;
    }
    for (const auto &k : mkeys) {
        os << ",metric." << k;
    }
    os << '\n';
    for (const auto &r : records) {
        os << detail::csv_cell(r.command) << ',' << r.seed;
        for (const auto &k : pkeys) {
            os << ',';
            if (r.params.contains(k)) {
                os << detail::csv_cell(r.params.at(k));
            }
        }
        for (const auto &k : mkeys) {
            os << ',';
            if (r.metrics.contains(k) && r.metrics.at(k).is_primitive()) {
                os << detail::csv_cell(r.metrics.at(k));
            }
        }
        os << '\n';
    }
}

} // namespace qcomm
