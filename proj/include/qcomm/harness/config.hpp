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
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcomm/core/errors.hpp"

namespace qcomm {

/**
 * @brief One experiment: a command, its seed, string-valued parameters and
 * an optional results path.
 *
 * Parameters stay strings so both file forms (key=value lines and JSON)
 * round-trip without loss; typed access goes through the getters.
 */
struct ExperimentConfig {
    std::string command;
    std::uint64_t seed = 1;
    std::map<std::string, std::string> params;
    std::string out;

    [[nodiscard]] bool has(const std::string &key) const {
        return params.count(key) != 0;
    }

    [[nodiscard]] std::string get_string(const std::string &key,
                                         const std::string &fallback) const {
        const auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }

    [[nodiscard]] std::int64_t get_int(const std::string &key,
                                       std::int64_t fallback) const {
        const auto it = params.find(key);
        if (it == params.end()) {
            return fallback;
        }
        return parse_int(key, it->second);
    }

    [[nodiscard]] double get_double(const std::string &key,
                                    double fallback) const {
        const auto it = params.find(key);
        if (it == params.end()) {
            return fallback;
        }
        try {
            std::size_t used = 0;
            const double v = std::stod(it->second, &used);
            if (used == it->second.size()) {
                return v;
            }
        } catch (const std::exception &) {
        }
        throw ValidationError("parameter '" + key + "' is not a number: " +
                              it->second);
    }

    [[nodiscard]] bool get_bool(const std::string &key, bool fallback) const {
        const auto it = params.find(key);
        if (it == params.end()) {
            return fallback;
        }
        if (it->second == "1" || it->second == "true") {
            return true;
        }
        if (it->second == "0" || it->second == "false") {
            return false;
        }
        throw ValidationError("parameter '" + key + "' is not a boolean: " +
                              it->second);
    }

    /// Comma-separated list of integers, e.g. "8,16,32".
    [[nodiscard]] std::vector<std::int64_t>
    get_int_list(const std::string &key,
                 const std::vector<std::int64_t> &fallback) const {
        const auto it = params.find(key);
        if (it == params.end()) {
            return fallback;
        }
        std::vector<std::int64_t> out;
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ',')) {
            out.push_back(parse_int(key, item));
        }
        detail::require<ValidationError>(!out.empty(), "parameter '" + key +
                                                           "' is an empty "
                                                           "list");
        return out;
    }

    [[nodiscard]] std::vector<double>
    get_double_list(const std::string &key,
                    const std::vector<double> &fallback) const {
        const auto it = params.find(key);
        if (it == params.end()) {
            return fallback;
        }
        std::vector<double> out;
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ',')) {
            ExperimentConfig one;
            one.params["v"] = item;
            out.push_back(one.get_double("v", 0.0));
        }
        detail::require<ValidationError>(!out.empty(), "parameter '" + key +
                                                           "' is an empty "
                                                           "list");
        return out;
    }

    friend bool operator==(const ExperimentConfig &,
                           const ExperimentConfig &) = default;

  private:
    static std::int64_t parse_int(const std::string &key,
                                  const std::string &text) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(text, &used, 0);
            if (used == text.size()) {
                return v;
            }
        } catch (const std::exception &) {
        }
        throw ValidationError("parameter '" + key + "' is not an integer: " +
                              text);
    }
};

/// Decimal or 0x-prefixed 64-bit seed.
inline std::uint64_t parse_seed(const std::string &text) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(text, &used, 0);
        if (used == text.size() && !text.empty() && text[0] != '-') {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw ValidationError("seed is not a 64-bit unsigned integer: " + text);
}

inline nlohmann::json config_to_json(const ExperimentConfig &c) {
    nlohmann::json j{{"command", c.command},
                     {"seed", c.seed},
                     {"params", c.params}};
    if (!c.out.empty()) {
        j["out"] = c.out;
    }
    return j;
}

/// Accepts string, number or boolean parameter values.
inline ExperimentConfig config_from_json(const nlohmann::json &j) {
    detail::require<ValidationError>(j.is_object(),
                                     "config JSON must be an object");
    ExperimentConfig c;
    if (j.contains("command")) {
        c.command = j.at("command").get<std::string>();
    }
    if (j.contains("seed")) {
        const auto &s = j.at("seed");
        c.seed = s.is_string() ? parse_seed(s.get<std::string>())
                               : s.get<std::uint64_t>();
    }
    if (j.contains("out")) {
        c.out = j.at("out").get<std::string>();
    }
    if (j.contains("params")) {
        for (const auto &[k, v] : j.at("params").items()) {
            c.params[k] = v.is_string() ? v.get<std::string>() : v.dump();
        }
    }
    return c;
}

/// key=value lines; `command`, `seed` and `out` are reserved keys, '#'
/// starts a comment line.
inline std::string config_to_kv(const ExperimentConfig &c) {
    std::string s = "command=" + c.command + "\nseed=" +
                    std::to_string(c.seed) + "\n";
    if (!c.out.empty()) {
        s += "out=" + c.out + "\n";
    }
    for (const auto &[k, v] : c.params) {
        s += k + "=" + v + "\n";
    }
    return s;
}

inline ExperimentConfig config_from_kv(const std::string &text) {
    ExperimentConfig c;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        detail::require<ValidationError>(
            eq != std::string::npos,
            "config line " + std::to_string(lineno) + " has no '='");
        auto trim = [](std::string v) {
            const auto a = v.find_first_not_of(" \t\r");
            const auto b = v.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{}
                                          : v.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "command") {
            c.command = value;
        } else if (key == "seed") {
            c.seed = parse_seed(value);
        } else if (key == "out") {
            c.out = value;
        } else {
            c.params[key] = value;
        }
    }
    return c;
}

/// Either form, chosen by the first non-blank character.
inline ExperimentConfig config_from_text(const std::string &text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception &e) {
            throw ValidationError(std::string("config JSON: ") + e.what());
        }
        return config_from_json(j);
    }
    return config_from_kv(text);
}

inline std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    detail::require<IoError>(in.good(), "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ExperimentConfig load_config(const std::string &path) {
    return config_from_text(read_text_file(path));
}

/// QCOMM_SEED, when set, replaces the seed from any other source.
inline void apply_seed_override(ExperimentConfig &c) {
    if (const char *env = std::getenv("QCOMM_SEED");
        env != nullptr && *env != '\0') {
        c.seed = parse_seed(env);
    }
}

} // namespace qcomm
