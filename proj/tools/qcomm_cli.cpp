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


// Command-line front end. Usage:
//   qcomm_cli <command> [--seed S] [--config FILE] [--out FILE] [--key value]...
//   qcomm_cli report --in results.jsonl [--out table.csv]
// Exit codes: 0 ok, 2 usage, 3 validation, 4 I/O.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcomm/harness/commands.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

std::string param_key(std::string flag) {
    for (auto &c : flag) {
        if (c == '-') {
            c = '_';
        }
    }
    return flag;
}

/// Turns leftover "--key value" / "--key=value" tokens into parameters.
void absorb_extras(const std::vector<std::string> &extras,
                   qcomm::ExperimentConfig &cfg) {
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const std::string &tok = extras[i];
        if (tok.rfind("--", 0) != 0 || tok.size() <= 2) {
            throw qcomm::UsageError("unexpected argument: " + tok);
        }
        const std::string body = tok.substr(2);
        const auto eq = body.find('=');
        if (eq != std::string::npos) {
            cfg.params[param_key(body.substr(0, eq))] = body.substr(eq + 1);
            continue;
        }
        if (i + 1 >= extras.size()) {
            throw qcomm::UsageError("missing value for " + tok);
        }
        cfg.params[param_key(body)] = extras[++i];
    }
}

int run(int argc, char **argv) {
    CLI::App app{"Communication-complexity experiments for distributed "
                 "sampling"};
    app.allow_extras();
    std::string command;
    std::string config_path;
    std::string seed_text;
    std::string out_path;
    std::string in_path;
    app.add_option("command", command,
                   "dfs-quantum | dqs-epsnet | raz | raz-calibrate | ddfs | "
                   "sqrt-sampler | lemma-verify | rectangles | report");
    app.add_option("--config", config_path,
                   "config file (key=value lines or JSON)");
    app.add_option("--seed", seed_text, "64-bit seed (QCOMM_SEED overrides)");
    app.add_option("--out", out_path,
                   "results file (JSON lines, appended); CSV for report");
    app.add_option("--in", in_path, "results file read by report");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    qcomm::ExperimentConfig cfg;
    if (!config_path.empty()) {
        cfg = qcomm::load_config(config_path);
    }
    absorb_extras(app.remaining(), cfg);
    if (!command.empty()) {
        cfg.command = command;
    }
    if (!seed_text.empty()) {
        cfg.seed = qcomm::parse_seed(seed_text);
    }
    if (!out_path.empty()) {
        cfg.out = out_path;
    }
    qcomm::apply_seed_override(cfg);
    if (cfg.command.empty()) {
        throw qcomm::UsageError("no command given (see --help)");
    }

    if (cfg.command == "report") {
        if (!cfg.params.empty()) {
            throw qcomm::UsageError("report takes only --in and --out");
        }
        if (in_path.empty()) {
            throw qcomm::UsageError("report needs --in");
        }
        if (cfg.out.empty()) {
            qcomm::run_report(in_path, std::cout);
        } else {
            std::ofstream os(cfg.out);
            if (!os.good()) {
                throw qcomm::IoError("cannot write " + cfg.out);
            }
            qcomm::run_report(in_path, os);
        }
        return 0;
    }

    const qcomm::ReportRecord rec = qcomm::run_experiment(cfg);
    if (!cfg.out.empty()) {
        qcomm::append_record(cfg.out, rec);
    }
    std::cout << nlohmann::json(rec).dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const qcomm::UsageError &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const qcomm::IoError &e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const qcomm::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}
