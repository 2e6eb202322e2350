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
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace qcomm {

/// Outcome of one numerical check: holds means lhs >= rhs - tolerance, with
/// the tolerance already folded into `holds` by the producing check.
struct Verdict {
    std::string check;
    nlohmann::json params = nlohmann::json::object();
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool holds = false;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

inline void to_json(nlohmann::json &j, const Verdict &v) {
    j = nlohmann::json{{"check", v.check},   {"params", v.params},
                       {"lhs", v.lhs},       {"rhs", v.rhs},
                       {"margin", v.margin}, {"holds", v.holds},
                       {"samples", v.samples}, {"seed", v.seed}};
}

inline void from_json(const nlohmann::json &j, Verdict &v) {
    j.at("check").get_to(v.check);
    v.params = j.at("params");
    j.at("lhs").get_to(v.lhs);
    j.at("rhs").get_to(v.rhs);
    j.at("margin").get_to(v.margin);
    j.at("holds").get_to(v.holds);
    j.at("samples").get_to(v.samples);
    j.at("seed").get_to(v.seed);
}

/// Appends one JSON line per verdict.
inline void write_verdicts_jsonl(std::ostream &os,
                                 const std::vector<Verdict> &vs) {
    for (const auto &v : vs) {
        os << nlohmann::json(v).dump() << '\n';
    }
}

/// Flat CSV for plotting margin against parameters; params are written as
/// key=value pairs joined by ';'.
inline void write_verdicts_csv(std::ostream &os,
                               const std::vector<Verdict> &vs) {
    os << "check,params,lhs,rhs,margin,holds,samples,seed\n";
    for (const auto &v : vs) {
        std::string ps;
        for (const auto &[k, val] : v.params.items()) {
            if (!ps.empty()) {
                ps += ';';
            }
            ps += k + "=" + (val.is_string() ? val.get<std::string>()
                                             : val.dump());
        }
        os << v.check << ',' << ps << ',' << nlohmann::json(v.lhs).dump()
           << ',' << nlohmann::json(v.rhs).dump() << ','
           << nlohmann::json(v.margin).dump() << ',' << (v.holds ? 1 : 0)
           << ',' << v.samples << ',' << v.seed << '\n';
    }
}

} // namespace qcomm
