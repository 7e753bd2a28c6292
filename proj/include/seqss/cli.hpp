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

/**
 * @file
 * Command implementations behind the `seqss` tool. Flag parsing lives in
 * tools/seqss.cpp; everything here writes to caller-supplied streams so the
 * commands can be driven from tests.
 *
 * Exit codes: 0 success, 1 property or statistical failure, 2 usage error,
 * 3 joint-backend capacity exceeded.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "seqss/adversary.hpp"
#include "seqss/message.hpp"
#include "seqss/protocol.hpp"
#include "seqss/transcript_io.hpp"
#include "seqss/verify.hpp"

namespace seqss::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;

enum class BroadcastMode : std::uint8_t { immediate, deferred };
enum class OutputFormat : std::uint8_t { text, transcript };

struct RunConfig {
    std::size_t players = 3;
    std::optional<std::string> message;
    std::optional<std::string> bits;
    BackendKind backend = BackendKind::factorized;
    std::uint64_t seed = 0;
    std::size_t runs = 1;
    BroadcastMode broadcast = BroadcastMode::immediate;
    std::size_t broadcast_to = 0;
    /// Deferred mode: logical time of the release; none means withheld.
    std::optional<std::uint64_t> broadcast_time;
    OutputFormat format = OutputFormat::text;
};

/// Run r of a batch uses `seed` itself for r = 0 and batch_seed(seed, r) after.
inline std::uint64_t run_seed(std::uint64_t seed, std::size_t r) {
    return r == 0 ? seed : batch_seed(seed, r);
}

namespace detail {

inline std::string printable(const std::string &s) {
    std::ostringstream os;
    os << '"';
    for (unsigned char c : s) {
        if (c == '"' || c == '\\') {
            os << '\\' << c;
        } else if (c < 0x20 || c == 0x7f) {
            os << "\\x" << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(c)
               << std::dec;
        } else {
            os << c;
        }
    }
    os << '"';
    return os.str();
}

template <class F> int guarded(std::ostream &err, F &&body) {
    try {
        return body();
    } catch (const CapacityError &e) {
        err << "error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const InternalError &e) {
        err << "internal error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace detail

inline int cmd_run(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    return detail::guarded(err, [&]() -> int {
        if (cfg.message.has_value() == cfg.bits.has_value()) {
            throw ArgumentError("give exactly one of --message or --bits");
        }
        require_players(cfg.players);
        if (cfg.runs == 0) {
            throw ArgumentError("--runs must be at least 1");
        }
        if (cfg.broadcast_to + 1 >= cfg.players) {
            throw ArgumentError("--broadcast-to names agent" + std::to_string(cfg.broadcast_to) +
                                " but agents are 0.." + std::to_string(cfg.players - 2));
        }
        const Secret secret(cfg.message ? message_to_bits(*cfg.message) : BitString::parse(*cfg.bits));
        if (cfg.backend == BackendKind::joint) {
            require_joint_capacity(cfg.players, secret.size());
        }

        bool all_pass = true;
        for (std::size_t r = 0; r < cfg.runs; ++r) {
            auto run = execute(cfg.players, secret.size(), secret, cfg.backend, run_seed(cfg.seed, r));
            const PartyId recipient = PartyId::agent(cfg.broadcast_to);
            if (cfg.broadcast == BroadcastMode::immediate) {
                broadcast_share(run, recipient);
            } else if (cfg.broadcast_time) {
                broadcast_share(run, recipient, *cfg.broadcast_time);
            }
            const bool pass = reconstruct(run.outcomes) == secret && run.all_phases_passed();
            all_pass = all_pass && pass;

            if (cfg.format == OutputFormat::transcript) {
                out << emit_transcript(run);
                continue;
            }
            out << "run " << r << " n=" << run.n << " m=" << run.m << " backend=" << to_string(run.backend)
                << " seed=" << run.seed << " rng=" << Rng::kAlgorithm << '\n';
            for (const auto &c : run.phase_log) {
                out << "  phase " << to_string(c.phase) << " t=" << c.logical_time << ' '
                    << (c.passed ? "pass" : "fail") << '\n';
            }
            for (const auto &o : run.outcomes) {
                out << "  outcome " << o.party.to_string() << ' ' << o.bits.to_string() << '\n';
            }
            if (run.broadcast) {
                out << "  broadcast t=" << run.broadcast->logical_time
                    << " to=" << run.broadcast->recipient.to_string()
                    << " payload=" << run.broadcast->payload.to_string() << '\n';
                const auto got = agents_reconstruct(run);
                out << "  reconstructed bits=" << got.bits.to_string();
                if (cfg.message) {
                    out << " message=" << detail::printable(bits_to_message(got.bits));
                }
                out << '\n';
            } else {
                try {
                    agents_reconstruct(run);
                } catch (const MissingShareError &e) {
                    out << "  reconstruction withheld: " << e.what() << '\n';
                }
            }
            out << "  fundamental-property " << (pass ? "PASS" : "FAIL") << '\n';
        }
        return all_pass ? kExitOk : kExitFailure;
    });
}

struct AttackConfig {
    std::string model;
    std::size_t players = 3;
    std::size_t bits_len = 1;
    /// Fixed secret; otherwise a uniform secret is drawn per run.
    std::optional<std::string> bits;
    std::size_t runs = 10000;
    std::uint64_t seed = 1;
    BackendKind backend = BackendKind::factorized;
    std::string target = "spymaster";
    std::size_t rogue = 0;
    std::optional<std::string> mask;
    bool check_bits = false;
    bool eve_all_shares = false;
    OutputFormat format = OutputFormat::text;
};

inline std::string render_report(const AttackReport &rep) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4);
    os << "attack model=" << model_name(rep.model) << " n=" << rep.n << " m=" << rep.m
       << " runs=" << rep.runs << '\n';
    os << std::left << std::setw(30) << "metric" << std::setw(10) << "value"
       << "samples" << '\n';
    auto row = [&](const std::string &name, std::optional<double> v, std::size_t samples) {
        os << std::setw(30) << name << std::setw(10);
        if (v) {
            os << *v;
        } else {
            os << "-";
        }
        os << samples << '\n';
    };
    row("agent_reconstruction_success", rep.agent_reconstruction_success, rep.runs);
    row("per_bit_success", rep.per_bit_success, rep.runs * rep.m);
    row("eve_guess_success", rep.eve_guess_success, rep.eve_guess_success ? rep.runs : 0);
    row("detection_rate", rep.detection_rate, rep.detection_rate ? rep.runs : 0);
    return os.str();
}

inline AttackModel parse_attack_model(const AttackConfig &cfg, std::size_t m) {
    if (cfg.model == "intercept-resend") {
        return InterceptResend{PartyId::parse(cfg.target)};
    }
    if (cfg.model == "classical-eavesdrop") {
        return ClassicalEavesdrop{cfg.eve_all_shares};
    }
    if (cfg.model == "rogue-flip") {
        BitString mask = cfg.mask ? BitString::parse(*cfg.mask) : ~BitString(m);
        return RogueAgent{cfg.rogue, RogueStrategy::report_flipped, std::move(mask)};
    }
    if (cfg.model == "rogue-guess") {
        return RogueAgent{cfg.rogue, RogueStrategy::guess_alone, BitString(m)};
    }
    if (cfg.model == "none") {
        return NoAttack{};
    }
    throw ArgumentError("unknown attack model '" + cfg.model +
                        "' (expected intercept-resend, classical-eavesdrop, rogue-flip, "
                        "rogue-guess or none)");
}

inline int cmd_attack(const AttackConfig &cfg, std::ostream &out, std::ostream &err) {
    return detail::guarded(err, [&]() -> int {
        require_players(cfg.players);
        std::optional<Secret> secret;
        if (cfg.bits) {
            secret = Secret(BitString::parse(*cfg.bits));
        }
        const std::size_t m = secret ? secret->size() : cfg.bits_len;
        if (m == 0) {
            throw ArgumentError("--bits-len must be at least 1");
        }
        const AttackModel model = parse_attack_model(cfg, m);
        const AttackOptions opts{cfg.backend, cfg.check_bits};
        if (cfg.backend == BackendKind::joint) {
            require_joint_capacity(cfg.players, m);
        }

        if (cfg.format == OutputFormat::transcript) {
            Rng rng(cfg.seed);
            const std::uint64_t seed = rng.next();
            const Secret s = secret ? *secret : Secret(BitString::random(m, rng));
            out << emit_transcript(run_attack_once(model, cfg.players, s, seed, opts).run);
        }
        Rng rng(cfg.seed);
        const auto rep = run_attack_experiment(model, cfg.players, m, secret, cfg.runs, rng, opts);
        out << render_report(rep);
        return kExitOk;
    });
}

struct VerifyConfig {
    std::string suite = "all";
    std::optional<std::size_t> n;
    std::optional<std::size_t> m;
    std::size_t runs = 10000;
    std::uint64_t seed = 1;
    double tol = 0.02;
    double tvd = 0.05;
    double alpha = 0.001;
};

inline int cmd_verify(const VerifyConfig &cfg, std::ostream &out, std::ostream &err) {
    return detail::guarded(err, [&]() -> int {
        static const std::vector<std::string> kSuites = {"ghz",    "delta",   "parity",   "a-zero",
                                                         "subset", "backend", "intercept"};
        const bool all = cfg.suite == "all";
        if (!all && std::find(kSuites.begin(), kSuites.end(), cfg.suite) == kSuites.end()) {
            throw ArgumentError("unknown suite '" + cfg.suite + "'");
        }
        if (cfg.n) {
            require_players(*cfg.n);
        }
        if (cfg.m && *cfg.m == 0) {
            throw ArgumentError("--m must be at least 1");
        }
        auto want = [&](const char *name) { return all || cfg.suite == name; };
        const std::size_t n = cfg.n.value_or(3);

        std::vector<verify::CheckResult> results;
        if (want("ghz")) {
            results.push_back(verify::ghz_states());
        }
        if (want("delta")) {
            results.push_back(verify::delta_identity());
        }
        if (want("parity")) {
            results.push_back(verify::parity_law(n, cfg.m.value_or(1), cfg.runs, cfg.seed));
        }
        if (want("a-zero")) {
            results.push_back(verify::a_zero_frequency(n, cfg.m.value_or(3), cfg.runs, cfg.seed, cfg.tol));
        }
        if (want("subset")) {
            results.push_back(verify::subset_uniformity(n, cfg.m.value_or(2), cfg.runs, cfg.seed, cfg.alpha));
        }
        if (want("backend")) {
            std::vector<std::pair<std::size_t, std::size_t>> cases = {{3, 1}, {3, 2}, {4, 1}, {5, 1}};
            if (cfg.n || cfg.m) {
                cases = {{n, cfg.m.value_or(1)}};
            }
            results.push_back(verify::backend_equivalence(cases, cfg.runs, cfg.seed, cfg.tvd));
        }
        if (want("intercept")) {
            results.push_back(verify::intercept_damage(n, cfg.m.value_or(1), cfg.runs, cfg.seed, cfg.tol));
        }

        bool ok = true;
        for (const auto &r : results) {
            out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
            if (!r.passed) {
                err << "check failed: " << r.name << '\n';
                ok = false;
            }
        }
        return ok ? kExitOk : kExitFailure;
    });
}

} // namespace seqss::cli
