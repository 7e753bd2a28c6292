// Copyright 2026 The SEQSS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// seqss: run, attack and verify the GHZ secret-sharing protocol.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "seqss/cli.hpp"

namespace {

using seqss::BackendKind;
using seqss::cli::BroadcastMode;
using seqss::cli::OutputFormat;

const std::map<std::string, BackendKind> kBackends = {{"factorized", BackendKind::factorized},
                                                      {"analytic", BackendKind::analytic},
                                                      {"joint", BackendKind::joint}};
const std::map<std::string, OutputFormat> kFormats = {{"text", OutputFormat::text},
                                                      {"transcript", OutputFormat::transcript}};
const std::map<std::string, BroadcastMode> kBroadcast = {{"immediate", BroadcastMode::immediate},
                                                         {"deferred", BroadcastMode::deferred}};

/// Enum option read as text and looked up in `table`.
template <class E>
CLI::Option *enum_option(CLI::App *app, const std::string &name, E &target,
                         const std::map<std::string, E> &table, const std::string &desc) {
    return app
        ->add_option_function<std::string>(
            name, [&target, &table](const std::string &v) { target = table.at(v); }, desc)
        ->check(CLI::IsMember(table));
}

/// Sends output to `path` when set, stdout otherwise.
template <class F> int with_output(const std::string &path, F &&body) {
    if (path.empty()) {
        return body(std::cout);
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open " << path << " for writing\n";
        return seqss::cli::kExitUsage;
    }
    return body(file);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulator for GHZ-based symmetric extensible quantum secret sharing"};
    app.require_subcommand(1);

    seqss::cli::RunConfig run_cfg;
    std::string run_out;
    auto *run = app.add_subcommand("run", "Execute the protocol and reconstruct the secret");
    run->add_option("--players,-n", run_cfg.players, "Number of players n (spymaster + n-1 agents)");
    auto *msg = run->add_option("--message", run_cfg.message, "Secret as text (UTF-8 bytes, MSB first)");
    run->add_option("--bits", run_cfg.bits, "Secret as a 0/1 string, MSB first")->excludes(msg);
    enum_option(run, "--backend", run_cfg.backend, kBackends, "factorized | analytic | joint");
    run->add_option("--seed", run_cfg.seed, "Run seed");
    run->add_option("--runs", run_cfg.runs, "Number of runs");
    enum_option(run, "--broadcast", run_cfg.broadcast, kBroadcast, "immediate | deferred");
    run->add_option("--broadcast-to", run_cfg.broadcast_to, "Agent index that receives the spymaster's share");
    run->add_option("--broadcast-time", run_cfg.broadcast_time,
                    "Logical time of a deferred broadcast (omit to withhold)");
    enum_option(run, "--format", run_cfg.format, kFormats, "text | transcript");
    run->add_option("--out", run_out, "Write output to this file");

    seqss::cli::AttackConfig atk_cfg;
    auto *attack = app.add_subcommand("attack", "Run an adversary experiment");
    attack->add_option("--model", atk_cfg.model,
                       "intercept-resend | classical-eavesdrop | rogue-flip | rogue-guess | none")
        ->required();
    attack->add_option("--players,-n", atk_cfg.players, "Number of players n");
    attack->add_option("--bits-len", atk_cfg.bits_len, "Secret length m (secret drawn per run)");
    attack->add_option("--bits", atk_cfg.bits, "Fixed secret as a 0/1 string");
    attack->add_option("--runs", atk_cfg.runs, "Number of runs");
    attack->add_option("--seed", atk_cfg.seed, "Experiment seed");
    enum_option(attack, "--backend", atk_cfg.backend, kBackends, "factorized | analytic | joint");
    attack->add_option("--target", atk_cfg.target, "Intercepted party (spymaster, agent0, ...)");
    attack->add_option("--rogue", atk_cfg.rogue, "Index of the rogue agent");
    attack->add_option("--mask", atk_cfg.mask, "Flip mask of a rogue-flip agent (default all ones)");
    attack->add_flag("--check-bits", atk_cfg.check_bits,
                     "Spymaster reveals half the secret positions for verification");
    attack->add_flag("--eve-all-shares", atk_cfg.eve_all_shares,
                     "Classical eavesdropper also holds every agent's outcome");
    enum_option(attack, "--format", atk_cfg.format, kFormats, "text | transcript (transcript of the first run)");

    seqss::cli::VerifyConfig ver_cfg;
    auto *verify = app.add_subcommand("verify", "Run the invariant checks");
    verify->add_option("--suite", ver_cfg.suite,
                       "all | ghz | delta | parity | a-zero | subset | backend | intercept");
    verify->add_option("--n", ver_cfg.n, "Player count for the statistical suites");
    verify->add_option("--m", ver_cfg.m, "Secret length for the statistical suites");
    verify->add_option("--runs", ver_cfg.runs, "Samples per statistical check");
    verify->add_option("--seed", ver_cfg.seed, "Seed");
    verify->add_option("--tol", ver_cfg.tol, "Absolute tolerance on frequencies");
    verify->add_option("--tvd", ver_cfg.tvd, "Total variation distance threshold");
    verify->add_option("--alpha", ver_cfg.alpha, "Chi-square significance level");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return seqss::cli::kExitUsage;
    }

    if (run->parsed()) {
        return with_output(run_out, [&](std::ostream &os) { return seqss::cli::cmd_run(run_cfg, os, std::cerr); });
    }
    if (attack->parsed()) {
        return seqss::cli::cmd_attack(atk_cfg, std::cout, std::cerr);
    }
    return seqss::cli::cmd_verify(ver_cfg, std::cout, std::cerr);
}
