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


#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qcomm/harness/commands.hpp"
#include "qcomm/lab/xi.hpp"

using namespace qcomm;
namespace fs = std::filesystem;

namespace {

ExperimentConfig sample_config() {
    ExperimentConfig c;
    c.command = "lemma-verify";
    c.seed = 0x1234;
    c.params = {{"check", "fact1"}, {"N", "4,8"}, {"p", "0.5"}};
    return c;
}

fs::path scratch_dir(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / ("qcomm_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string &args, const fs::path &stdout_path) {
    const std::string cmd = std::string("\"") + QCOMM_CLI_PATH + "\" " + args +
                            " > \"" + stdout_path.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string strip_wall_time(const std::string &jsonl) {
    std::stringstream in(jsonl);
    std::string line;
    std::string out;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line);
        j.erase("wall_time_s");
        out += j.dump() + "\n";
    }
    return out;
}

} // namespace

TEST_CASE("config round trips through JSON and key=value text", "[harness]") {
    const auto c = sample_config();
    CHECK(config_from_json(config_to_json(c)) == c);
    CHECK(config_from_kv(config_to_kv(c)) == c);
    CHECK(config_from_text(config_to_json(c).dump()) == c);
    const auto kv = config_from_text("# comment\ncommand = raz\nseed=0x10\nN=16\n");
    CHECK(kv.command == "raz");
    CHECK(kv.seed == 16);
    CHECK(kv.get_int("N", 0) == 16);
    const auto js = config_from_json(
        nlohmann::json::parse(R"({"command":"ddfs","seed":"7","params":{"n":2,"flag":true}})"));
    CHECK(js.seed == 7);
    CHECK(js.get_int("n", 0) == 2);
    CHECK(js.get_bool("flag", false));
    CHECK_THROWS_AS(config_from_kv("no equals sign"), ValidationError);
    CHECK_THROWS_AS(config_from_text("{bad json"), ValidationError);
}

TEST_CASE("typed parameter access", "[harness]") {
    ExperimentConfig c;
    c.params = {{"a", "12"}, {"b", "x"}, {"l", "8,16,32"}, {"r", "0.5,1e-3"}};
    CHECK(c.get_int("a", 0) == 12);
    CHECK(c.get_int("missing", 5) == 5);
    CHECK_THROWS_AS(c.get_int("b", 0), ValidationError);
    CHECK_THROWS_AS(c.get_double("b", 0.0), ValidationError);
    CHECK_THROWS_AS(c.get_bool("b", false), ValidationError);
    CHECK(c.get_int_list("l", {}) == std::vector<std::int64_t>{8, 16, 32});
    CHECK(c.get_double_list("r", {}) == std::vector<double>{0.5, 1e-3});
    CHECK(parse_seed("0xff") == 255);
    CHECK(parse_seed("18446744073709551615") == UINT64_MAX);
    CHECK_THROWS_AS(parse_seed("-1"), ValidationError);
    CHECK_THROWS_AS(parse_seed(""), ValidationError);
}

TEST_CASE("seed override from the environment", "[harness]") {
    auto c = sample_config();
    ::setenv("QCOMM_SEED", "99", 1);
    apply_seed_override(c);
    ::unsetenv("QCOMM_SEED");
    CHECK(c.seed == 99);
    apply_seed_override(c);
    CHECK(c.seed == 99);
}

TEST_CASE("parameter reader records effective values", "[harness]") {
    ExperimentConfig c;
    c.params = {{"n", "3"}};
    ParamReader pr(c);
    CHECK(pr.count("n", 1, 1) == 3);
    CHECK(pr.real("eps", 0.25) == 0.25);
    CHECK(pr.effective()["n"] == 3);
    CHECK(pr.effective()["eps"] == 0.25);
    ParamReader bad(c);
    CHECK_THROWS_AS(bad.count("n", 1, 4), ValidationError);
}

TEST_CASE("run_experiment rejects unknown commands and parameters",
          "[harness]") {
    ExperimentConfig c;
    c.command = "teleport";
    CHECK_THROWS_AS(run_experiment(c), UsageError);
    auto d = sample_config();
    d.params["bogus"] = "1";
    CHECK_THROWS_AS(run_experiment(d), UsageError);
    auto e = sample_config();
    e.params["check"] = "nope";
    CHECK_THROWS_AS(run_experiment(e), UsageError);
}

TEST_CASE("run_experiment is a function of its config", "[harness]") {
    ExperimentConfig c;
    c.command = "dfs-quantum";
    c.seed = 5;
    c.params = {{"n", "2"}, {"shots", "2000"}};
    const auto a = run_experiment(c);
    const auto b = run_experiment(c);
    CHECK(a.deterministic_dump() == b.deterministic_dump());
    c.seed = 6;
    CHECK(run_experiment(c).deterministic_dump() != a.deterministic_dump());
}

TEST_CASE("lemma-verify fact1 reports the closed form", "[harness]") {
    ExperimentConfig c;
    c.command = "lemma-verify";
    c.params = {{"check", "fact1"}, {"N", "4"}, {"p", "0.5"}};
    const auto rec = run_experiment(c);
    CHECK(rec.metrics["holds"] == true);
    CHECK_THAT(rec.metrics["lhs"].get<double>(),
               Catch::Matchers::WithinAbs(7.0 / 16.0, 1e-15));
    CHECK_THAT(rec.metrics["rhs"].get<double>(),
               Catch::Matchers::WithinAbs(7.0 / 16.0, 1e-15));
}

TEST_CASE("report CSV has one column per parameter and scalar metric",
          "[harness]") {
    ReportRecord a;
    a.command = "x";
    a.seed = 1;
    a.params = {{"n", 2}};
    a.metrics = {{"err", 0.5}, {"rows", {1, 2}}};
    ReportRecord b = a;
    b.params = {{"m", "a,b"}};
    std::stringstream jl;
    jl << nlohmann::json(a).dump() << "\n\n" << nlohmann::json(b).dump() << "\n";
    const auto recs = read_records(jl);
    REQUIRE(recs.size() == 2);
    std::ostringstream csv;
    records_to_csv(csv, recs);
    CHECK(csv.str() ==
          "command,seed,param.m,param.n,metric.err\n"
          "x,1,,2,0.5\n"
          "x,1,\"a,b\",,0.5\n");
    std::stringstream broken("{not json}\n");
    CHECK_THROWS_AS(read_records(broken), ValidationError);
}

TEST_CASE("counting engine audits draws", "[harness]") {
    CountingEngine<> a(3);
    CountingEngine<> b(3);
    const auto xa = xi_sample(XiParams(16, 0.2), a);
    const auto xb = xi_sample(XiParams(16, 0.2), b);
    CHECK(xa == xb);
    CHECK(a.draws() == b.draws());
    CHECK(a.draws() >= 16);
}

TEST_CASE("command line exit codes", "[harness]") {
    const auto dir = scratch_dir("exit_codes");
    const auto log = dir / "log.txt";
    CHECK(run_cli("lemma-verify --check fact1 --N 4 --p 0.5", log) == 0);
    CHECK(run_cli("--help", log) == 0);
    CHECK(run_cli("teleport", log) == 2);
    CHECK(run_cli("lemma-verify --check fact1 --bogus 1", log) == 2);
    CHECK(run_cli("lemma-verify --check fact1 --N abc", log) == 3);
    CHECK(run_cli("lemma-verify --seed abc", log) == 3);
    CHECK(run_cli("--config \"" + (dir / "missing.cfg").string() + "\"", log) == 4);
    CHECK(run_cli("report --in \"" + (dir / "missing.jsonl").string() + "\"",
                  log) == 4);
    fs::remove_all(dir);
}

TEST_CASE("command line runs reproduce modulo wall time", "[harness]") {
    const auto dir = scratch_dir("repro");
    const auto cfg = dir / "run.cfg";
    {
        std::ofstream os(cfg);
        os << "command=ddfs\nseed=0x2a\nn=2\nshots=5000\n";
    }
    const auto one = dir / "one.jsonl";
    const auto two = dir / "two.jsonl";
    REQUIRE(run_cli("--config \"" + cfg.string() + "\" --out \"" +
                        one.string() + "\"",
                    dir / "log1.txt") == 0);
    REQUIRE(run_cli("--config \"" + cfg.string() + "\" --out \"" +
                        two.string() + "\"",
                    dir / "log2.txt") == 0);
    const auto a = read_text_file(one.string());
    const auto b = read_text_file(two.string());
    CHECK_FALSE(a.empty());
    CHECK(strip_wall_time(a) == strip_wall_time(b));
    const auto csv = dir / "out.csv";
    CHECK(run_cli("report --in \"" + one.string() + "\" --out \"" +
                      csv.string() + "\"",
                  dir / "log3.txt") == 0);
    CHECK(read_text_file(csv.string()).rfind("command,seed,", 0) == 0);
    fs::remove_all(dir);
}
