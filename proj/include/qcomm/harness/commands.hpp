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

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcomm/classical/ddfs_reduction.hpp"
#include "qcomm/classical/grid_net.hpp"
#include "qcomm/classical/raz.hpp"
#include "qcomm/classical/sqrt_sampler.hpp"
#include "qcomm/core/haar.hpp"
#include "qcomm/core/measurement.hpp"
#include "qcomm/core/rng.hpp"
#include "qcomm/harness/config.hpp"
#include "qcomm/harness/lemma_checks.hpp"
#include "qcomm/harness/params.hpp"
#include "qcomm/harness/report.hpp"
#include "qcomm/protocol/accounting.hpp"
#include "qcomm/quantum/ddfs.hpp"
#include "qcomm/quantum/dfs.hpp"
#include "qcomm/quantum/dqs.hpp"
#include "qcomm/quantum/instance_io.hpp"

namespace qcomm {

namespace detail {
inline DfsInstance load_or_draw_instance(ParamReader &pr, std::size_t qubits,
                                         std::uint64_t seed) {
    const std::string path = pr.text("instance", "");
    if (!path.empty()) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(read_text_file(path));
        } catch (const nlohmann::json::exception &e) {
            throw ValidationError("instance file: " + std::string(e.what()));
        }
        return instance_from_json(j);
    }
    Rng rng = make_rng(seed, 0);
    return random_dfs_instance(qubits, rng);
}

inline std::vector<double> to_vector(const OutcomeDistribution &d) {
    return {d.probabilities().begin(), d.probabilities().end()};
}
} // namespace detail

/// Quantum DFS: statevector pipeline, sampled shots, exact law.
inline nlohmann::json cmd_dfs_quantum(ParamReader &pr, std::uint64_t seed) {
    const auto n = pr.count("n", 2, 1);
    const auto shots = pr.count("shots", 100000, 1);
    const DfsInstance inst = detail::load_or_draw_instance(pr, n, seed);
    Rng rng = make_rng(seed, 1);
    const DfsSimulation sim = dfs_quantum_simulate(inst, rng, shots);
    const OutcomeDistribution exact = dfs_distribution(inst);
    return {{"qubits", inst.qubits()},
            {"shots", shots},
            {"qubits_sent", inst.qubits()},
            {"l1_empirical_exact", l1_distance(sim.empirical, exact)},
            {"l1_pipeline_exact", l1_distance(sim.pipeline_pmf, exact)},
            {"exact_pmf", detail::to_vector(exact)}};
}

/// Grid-code protocol on Haar states and Haar-rotated basis measurements.
inline nlohmann::json cmd_dqs_epsnet(ParamReader &pr, std::uint64_t seed) {
    const auto n = pr.count("n", 1);
    const double eps = pr.real("eps", 0.2);
    const auto instances = pr.count("instances", 200, 1);
    const auto bits = pr.count("bits", 0);
    const GridNetCodec codec =
        bits == 0 ? GridNetCodec::calibrated(n, eps)
                  : GridNetCodec(n, eps, bits);
    double max_l1 = 0.0;
    double sum_l1 = 0.0;
    double max_trace = 0.0;
    std::size_t bits_min = SIZE_MAX;
    std::size_t bits_max = 0;
    for (std::size_t i = 0; i < instances; ++i) {
        Rng rng = make_rng(seed, i);
        PureState psi = haar_random_state(codec.dim(), rng);
        Measurement m = Measurement::from_basis(haar_unitary(codec.dim(), rng));
        const DqsInstance inst(std::move(psi), std::move(m));
        const EpsNetRun run = dqs_epsnet_protocol(inst, codec, rng);
        const double l1 =
            l1_distance(run.realized_pmf, dqs_distribution(inst));
        max_l1 = std::max(max_l1, l1);
        sum_l1 += l1;
        max_trace = std::max(max_trace,
                             trace_norm_distance(inst.psi, run.decoded));
        bits_min = std::min(bits_min, run.run.bits_sent());
        bits_max = std::max(bits_max, run.run.bits_sent());
    }
    return {{"qubits", n},
            {"eps", eps},
            {"instances", instances},
            {"bits_per_amplitude", codec.bits_per_amplitude()},
            {"quant_step", codec.quant_step()},
            {"bits_sent", bits_max},
            {"bits_formula", 2 * codec.dim() * codec.bits_per_amplitude()},
            {"bits_constant", bits_min == bits_max},
            {"max_l1_error", max_l1},
            {"mean_l1_error", sum_l1 / static_cast<double>(instances)},
            {"max_trace_norm_error", max_trace},
            {"within_eps", max_l1 <= eps}};
}

namespace detail {
inline RazExperiment raz_experiment(ParamReader &pr, std::uint64_t seed) {
    RazExperiment ex;
    ex.trials_per_label = pr.count("trials", 500, 1);
    ex.family = family_from_name(pr.text("family", "mixed"));
    ex.plant_solution = pr.flag("plant", false);
    ex.seed = seed;
    return ex;
}

inline nlohmann::json outcome_json(const RazOutcome &o) {
    return {{"K", o.k},
            {"bits_sent", o.bits_per_run},
            {"padded_N", o.padded_dim},
            {"successes", o.successes},
            {"trials", o.trials},
            {"success_rate", o.success_rate()},
            {"wilson_lower", o.wilson_lower()},
            {"mean_best_overlap_sq", o.mean_best_overlap_sq}};
}
} // namespace detail

/**
 * @brief Raz protocol at one N. Without K, the smallest power of two
 * reaching the target is calibrated on one seed stream and the reported
 * success rate comes from a fresh holdout stream.
 */
inline nlohmann::json cmd_raz(ParamReader &pr, std::uint64_t seed) {
    const auto n = pr.count("N", 16, 4);
    auto k = static_cast<std::uint64_t>(pr.count("K", 0));
    const double target = pr.real("target", 2.0 / 3.0);
    const auto cap = static_cast<std::uint64_t>(pr.count("cap", 1 << 20, 1));
    RazExperiment ex = detail::raz_experiment(pr, seed);
    ex.dim = n;
    ex.rank = pr.count("rank", static_cast<std::int64_t>(n / 4), 1);
    nlohmann::json out = {{"N", n}, {"rank", ex.rank}};
    if (k == 0) {
        detail::require<ValidationError>(ex.rank == n / 4,
                                         "calibration uses rank N/4");
        RazExperiment cal = ex;
        cal.seed = derive_seed(seed, 1);
        const auto rows = calibrate_raz({n}, cal, target, cap);
        out["calibration"] = nlohmann::json::array();
        for (const auto &o : rows.front().search) {
            out["calibration"].push_back(
                {{"K", o.k}, {"success_rate", o.success_rate()}});
        }
        if (!rows.front().min_k) {
            out["resolved"] = false;
            return out;
        }
        k = *rows.front().min_k;
        out["calibration_rate"] = rows.front().at_min_k.success_rate();
    }
    out["resolved"] = true;
    RazExperiment hold = ex;
    hold.seed = derive_seed(seed, 2);
    out["holdout"] = detail::outcome_json(evaluate_raz(hold, k));
    out["K"] = k;
    out["log2_K"] = std::log2(static_cast<double>(k));
    return out;
}

/// Doubling calibration over several N with trend fits.
inline nlohmann::json cmd_raz_calibrate(ParamReader &pr, std::uint64_t seed) {
    const auto ns = pr.integers("Ns", {8, 16, 32, 64});
    const double target = pr.real("target", 2.0 / 3.0);
    const auto cap = static_cast<std::uint64_t>(pr.count("cap", 1 << 20, 1));
    const RazExperiment ex = detail::raz_experiment(pr, seed);
    std::vector<std::size_t> dims;
    for (auto n : ns) {
        detail::require<ValidationError>(n >= 4 && n <= 64,
                                         "calibration needs 4 <= N <= 64");
        dims.push_back(static_cast<std::size_t>(n));
    }
    const auto rows = calibrate_raz(dims, ex, target, cap);
    nlohmann::json table = nlohmann::json::array();
    std::vector<double> ln_n;
    std::vector<double> ln_bits;
    std::vector<double> sqrt_n;
    std::vector<double> bits;
    std::map<std::size_t, double> by_n;
    bool monotone = true;
    double prev = -1.0;
    std::size_t unresolved = 0;
    for (const auto &r : rows) {
        nlohmann::json row = {{"N", r.dim},
                              {"padded_N", r.padded_dim},
                              {"resolved", r.min_k.has_value()}};
        if (r.min_k) {
            const double l = r.log2_k();
            row["K"] = *r.min_k;
            row["log2_K"] = l;
            row["success_rate"] = r.at_min_k.success_rate();
            sqrt_n.push_back(std::sqrt(static_cast<double>(r.dim)));
            bits.push_back(l);
            by_n[r.dim] = l;
            if (l > 0.0) {
                ln_n.push_back(std::log(static_cast<double>(r.dim)));
                ln_bits.push_back(std::log(l));
            }
            monotone = monotone && l >= prev;
            prev = l;
        } else {
            ++unresolved;
        }
        table.push_back(row);
    }
    nlohmann::json out = {{"rows", table},
                          {"unresolved", unresolved},
                          {"monotone", monotone}};
    if (ln_n.size() >= 2) {
        out["exponent_vs_N"] = fitted_slope(ln_n, ln_bits);
    }
    if (bits.size() >= 2) {
        out["slope_vs_sqrtN"] = fitted_slope(sqrt_n, bits);
    }
    // central secant of log2 K against sqrt N around N = 16
    if (by_n.count(8) != 0 && by_n.count(32) != 0) {
        out["slope_at_16"] = (by_n[32] - by_n[8]) / (std::sqrt(32.0) -
                                                     std::sqrt(8.0));
        if (out.contains("slope_vs_sqrtN")) {
            out["slope_ratio"] = out["slope_vs_sqrtN"].get<double>() /
                                 out["slope_at_16"].get<double>();
        }
    }
    return out;
}

/// DDFS sampling, its exact law, and the reduction to DFS.
inline nlohmann::json cmd_ddfs(ParamReader &pr, std::uint64_t seed) {
    const auto n = pr.count("n", 2, 1);
    const auto shots = pr.count("shots", 100000, 1);
    const std::string csv = pr.text("samples_csv", "");
    const DfsInstance inst = detail::load_or_draw_instance(pr, n, seed);
    const std::size_t size = inst.size();
    const OutcomeDistribution joint = ddfs_joint_pmf(inst);
    const OutcomeDistribution target = dfs_distribution(inst);
    Rng rng = make_rng(seed, 1);
    const auto pairs = ddfs_quantum_sample(inst, rng, shots);
    std::vector<std::size_t> flat;
    std::vector<std::size_t> reduced;
    ProtocolRun reduction;
    for (const auto &pair : pairs) {
        flat.push_back(static_cast<std::size_t>(pair.first * size +
                                                pair.second));
        reduced.push_back(static_cast<std::size_t>(
            ddfs_to_dfs(pair, inst.qubits(), reduction)));
    }
    double marginal_dev = 0.0;
    const auto am = alice_marginal(joint, size);
    const auto bm = bob_marginal(joint, size);
    for (std::size_t s = 0; s < size; ++s) {
        const double u = 1.0 / static_cast<double>(size);
        marginal_dev = std::max(
            {marginal_dev, std::abs(am[s] - u), std::abs(bm[s] - u)});
    }
    nlohmann::json out = {
        {"qubits", inst.qubits()},
        {"shots", shots},
        {"l1_empirical_joint",
         l1_distance(OutcomeDistribution::empirical(flat, size * size), joint)},
        {"max_marginal_deviation", marginal_dev},
        {"pushforward_l1", l1_distance(ddfs_to_dfs_law(joint, inst.qubits()),
                                       target)},
        {"reduced_l1_empirical",
         l1_distance(OutcomeDistribution::empirical(reduced, size), target)},
        {"reduction_bits_per_shot", reduction.bits_sent() / shots}};
    if (inst.qubits() <= 4) {
        out["statevector_l1"] =
            l1_distance(ddfs_statevector_joint_pmf(inst), joint);
    }
    if (!csv.empty()) {
        std::ofstream os(csv);
        detail::require<IoError>(os.good(), "cannot write " + csv);
        write_pairs_csv(os, pairs);
        detail::require<IoError>(os.good(), "cannot write " + csv);
    }
    return out;
}

/// Sampler acceptance: exact, large-N approximation, and Monte Carlo.
inline nlohmann::json cmd_sqrt_sampler(ParamReader &pr, std::uint64_t seed) {
    const auto n = pr.count("N", 64, 1);
    const auto deltas = pr.reals("deltas", {-2.0, -1.0, 0.0, 1.0, 2.0});
    const auto trials = pr.count("trials", 100000, 1);
    const double rt = std::sqrt(static_cast<double>(n));
    const auto k = static_cast<std::size_t>(std::llround(rt));
    detail::require<ValidationError>(k * k == n, "N must be a perfect square");
    nlohmann::json rows = nlohmann::json::array();
    double max_rel = 0.0;
    double max_z = 0.0;
    bool bits_ok = true;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double dis = static_cast<double>(n) / 2.0 + deltas[i] * rt;
        const auto differ = static_cast<long>(std::llround(dis));
        detail::require<ValidationError>(
            std::abs(dis - static_cast<double>(differ)) < 1e-9 && differ >= 0 &&
                differ <= static_cast<long>(n),
            "N/2 + delta sqrt(N) must be an integer in [0, N]");
        Rng rng = make_rng(seed, i);
        const auto [x, y] = pair_with_inner_product(
            n, static_cast<long>(n) - 2 * differ, rng);
        const double a = agree_fraction(x, y);
        const double exact = sqrt_sampler_exact_prob(a, k);
        const double approx = sqrt_sampler_cosh_approx(n, deltas[i]);
        std::uint64_t accepted = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            const SqrtSamplerRun r = sqrt_sampler(x, y, k, rng);
            accepted += r.accept ? 1 : 0;
            bits_ok = bits_ok && r.run.bits_sent() == 2 * k;
        }
        const double emp =
            static_cast<double>(accepted) / static_cast<double>(trials);
        const double sigma =
            std::sqrt(exact * (1.0 - exact) / static_cast<double>(trials));
        const double z = sigma > 0.0 ? std::abs(emp - exact) / sigma
                                     : (emp == exact ? 0.0 : INFINITY);
        const double rel = std::abs(approx - exact) / exact;
        max_rel = std::max(max_rel, rel);
        max_z = std::max(max_z, z);
        rows.push_back({{"delta", deltas[i]},
                        {"agree_fraction", a},
                        {"exact", exact},
                        {"cosh_approx", approx},
                        {"relative_error", rel},
                        {"empirical", emp},
                        {"z", z}});
    }
    return {{"N", n},
            {"queries", k},
            {"bits_per_run", 2 * k},
            {"bits_ok", bits_ok},
            {"trials", trials},
            {"rows", rows},
            {"max_z", max_z},
            {"max_relative_error_approx", max_rel}};
}

/// Accounting identity on random randomized protocols.
inline nlohmann::json cmd_rectangles(ParamReader &pr, std::uint64_t seed) {
    const auto protocols = pr.count("protocols", 20, 1);
    const auto nx = pr.count("nx", 8, 1);
    const auto ny = pr.count("ny", 8, 1);
    const auto depth = pr.count("depth", 4, 1);
    const auto branches = pr.count("branches", 3, 1);
    double max_gap = 0.0;
    double max_direct_gap = 0.0;
    double max_eta_ratio = 0.0;
    bool eta_ok = true;
    for (std::size_t i = 0; i < protocols; ++i) {
        Rng rng = make_rng(seed, i);
        const RandomizedProtocol proto =
            random_randomized_protocol(nx, ny, depth, branches, rng);
        std::vector<double> w(nx * ny);
        double total = 0.0;
        for (auto &v : w) {
            v = uniform01(rng);
            total += v;
        }
        for (auto &v : w) {
            v /= total;
        }
        const JointDistribution mu(nx, ny, w);
        const AccountingResult acc = acceptance_accounting(proto, mu);
        double direct = 0.0;
        for (const auto &b : proto.support()) {
            double inner = 0.0;
            for (std::size_t x = 0; x < nx; ++x) {
                for (std::size_t y = 0; y < ny; ++y) {
                    inner += b.tree.accepts(x, y) ? mu(x, y) : 0.0;
                }
            }
            direct += b.weight * inner;
        }
        max_gap = std::max(max_gap, acc.identity_gap);
        max_direct_gap = std::max(max_direct_gap, std::abs(acc.total - direct));
        eta_ok = eta_ok && acc.eta_below_bound;
        max_eta_ratio = std::max(
            max_eta_ratio,
            acc.eta / std::ldexp(1.0, -static_cast<int>(acc.cost)));
    }
    return {{"protocols", protocols},
            {"max_identity_gap", max_gap},
            {"max_direct_gap", max_direct_gap},
            {"eta_below_bound", eta_ok},
            {"max_eta_over_bound", max_eta_ratio}};
}

/// Runs one lemma check, or all of them with their defaults.
inline nlohmann::json cmd_lemma_verify(ParamReader &pr, std::uint64_t seed) {
    const std::string check = pr.text("check", "all");
    const std::string summary = pr.text("summary_csv", "");
    std::vector<Verdict> verdicts;
    const auto &table = lemma_checks();
    std::uint64_t stream = 0;
    if (check == "all") {
        for (const auto &[name, fn] : table) {
            for (auto &v : fn(pr, derive_seed(seed, stream++))) {
                verdicts.push_back(std::move(v));
            }
        }
    } else {
        const auto it = table.find(check);
        detail::require<UsageError>(it != table.end(),
                                    "unknown lemma check: " + check);
        verdicts = it->second(pr, derive_seed(seed, 0));
    }
    bool all = true;
    for (const auto &v : verdicts) {
        all = all && v.holds;
    }
    if (!summary.empty()) {
        std::ofstream os(summary);
        detail::require<IoError>(os.good(), "cannot write " + summary);
        write_verdicts_csv(os, verdicts);
    }
    nlohmann::json out = {{"holds", all}, {"verdicts", verdicts}};
    if (verdicts.size() == 1) {
        out["lhs"] = verdicts.front().lhs;
        out["rhs"] = verdicts.front().rhs;
    }
    return out;
}

using CommandFn = nlohmann::json (*)(ParamReader &, std::uint64_t);

inline const std::map<std::string, CommandFn> &command_table() {
    static const std::map<std::string, CommandFn> table = {
        {"dfs-quantum", &cmd_dfs_quantum},
        {"dqs-epsnet", &cmd_dqs_epsnet},
        {"raz", &cmd_raz},
        {"raz-calibrate", &cmd_raz_calibrate},
        {"ddfs", &cmd_ddfs},
        {"sqrt-sampler", &cmd_sqrt_sampler},
        {"lemma-verify", &cmd_lemma_verify},
        {"rectangles", &cmd_rectangles},
    };
    return table;
}

/**
 * @brief Executes a config and returns its record. All randomness derives
 * from config.seed. Parameters the command never reads are rejected.
 */
inline ReportRecord run_experiment(const ExperimentConfig &config) {
    const auto &table = command_table();
    const auto it = table.find(config.command);
    detail::require<UsageError>(it != table.end(),
                                "unknown command: " + config.command);
    const auto start = std::chrono::steady_clock::now();
    ParamReader pr(config);
    ReportRecord rec;
    rec.command = config.command;
    rec.seed = config.seed;
    rec.metrics = it->second(pr, config.seed);
    for (const auto &[k, v] : config.params) {
        detail::require<UsageError>(pr.effective().contains(k),
                                    "unknown parameter for " +
                                        config.command + ": " + k);
    }
    rec.params = pr.effective();
    rec.wall_time_s = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    return rec;
}

/// `report`: JSON-lines results to plot-ready CSV.
inline void run_report(const std::string &in_path, std::ostream &out) {
    std::ifstream in(in_path);
    detail::require<IoError>(in.good(), "cannot read " + in_path);
    records_to_csv(out, read_records(in));
}

} // namespace qcomm
