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
 * Attack experiments.
 *
 * - InterceptResend: an eavesdropper measures one party's qubit of every
 *   tuple in the computational basis while it is in transit and forwards the
 *   collapsed qubit. Each tuple becomes |z...z>, and the per-bit parity law no
 *   longer holds.
 * - ClassicalEavesdrop: Eve reads the spymaster's public broadcast and guesses
 *   the secret from it.
 * - RogueAgent: one agent lies about its share (ReportFlipped) or tries to
 *   recover the secret alone (GuessAlone).
 *
 * Check bits are an optional detection layer that the base protocol lacks:
 * the spymaster reveals the secret at a random half of the positions after
 * the broadcast, and the agents abort on any mismatch.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "seqss/bits.hpp"
#include "seqss/channels.hpp"
#include "seqss/errors.hpp"
#include "seqss/protocol.hpp"
#include "seqss/rng.hpp"
#include "seqss/stats.hpp"
#include "seqss/types.hpp"

namespace seqss {

struct NoAttack {
    friend bool operator==(const NoAttack &, const NoAttack &) = default;
};

struct ClassicalEavesdrop {
    /// Eve also obtains every agent's outcome (collusion of all parties).
    bool sees_all_shares = false;

    friend bool operator==(const ClassicalEavesdrop &, const ClassicalEavesdrop &) = default;
};

struct InterceptResend {
    PartyId target = PartyId::spymaster();

    friend bool operator==(const InterceptResend &, const InterceptResend &) = default;
};

enum class RogueStrategy : std::uint8_t { report_flipped, guess_alone };

struct RogueAgent {
    std::size_t index = 0;
    RogueStrategy strategy = RogueStrategy::report_flipped;
    /// XORed into the rogue's reported share (ReportFlipped only).
    BitString mask;

    friend bool operator==(const RogueAgent &, const RogueAgent &) = default;
};

using AttackModel = std::variant<NoAttack, ClassicalEavesdrop, InterceptResend, RogueAgent>;

inline std::string model_name(const AttackModel &model) {
    struct Visitor {
        std::string operator()(const NoAttack &) const { return "none"; }
        std::string operator()(const ClassicalEavesdrop &) const { return "classical-eavesdrop"; }
        std::string operator()(const InterceptResend &) const { return "intercept-resend"; }
        std::string operator()(const RogueAgent &r) const {
            return r.strategy == RogueStrategy::report_flipped ? "rogue-flip" : "rogue-guess";
        }
    };
    return std::visit(Visitor{}, model);
}

struct AttackOptions {
    BackendKind backend = BackendKind::factorized;
    bool check_bits = false;
};

/// One attacked execution.
struct AttackedRun {
    ProtocolRun run;
    /// What the agents reconstruct after the broadcast.
    BitString agents_result;
    /// Eve's (or the rogue's solo) guess, when the model has one.
    std::optional<BitString> adversary_guess;
    /// Check-bit positions disagreed; only meaningful with check_bits.
    bool aborted = false;
};

struct AttackReport {
    AttackModel model;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t runs = 0;
    /// Runs where the agents recovered the whole secret.
    double agent_reconstruction_success = 0.0;
    /// Bit positions recovered correctly, over runs * m.
    double per_bit_success = 0.0;
    std::optional<double> eve_guess_success;
    /// Abort frequency under check bits.
    std::optional<double> detection_rate;
    /// Outcome value histogram per party, in outcome order (m <= 16 only).
    std::vector<stats::Histogram> party_marginals;
    /// Joint counts of (a << m | s), classical eavesdropping with m <= 8.
    stats::Histogram eve_view;
};

namespace detail {

/// Secret positions the spymaster reveals for verification: a uniformly
/// random subset of ceil(m/2) positions.
inline std::vector<std::size_t> choose_check_positions(std::size_t m, Rng &rng) {
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) {
        idx[i] = i;
    }
    const std::size_t k = (m + 1) / 2;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(m - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

} // namespace detail

/// Runs one execution under `model`. `seed` drives both the protocol and
/// the attack-side choices (check positions).
inline AttackedRun run_attack_once(const AttackModel &model, std::size_t n, const Secret &secret,
                                   std::uint64_t seed, const AttackOptions &opts = {}) {
    const std::size_t m = secret.size();
    ExecuteOptions exec;
    if (const auto *ir = std::get_if<InterceptResend>(&model)) {
        exec.intercept = ir->target;
    }
    if (const auto *ra = std::get_if<RogueAgent>(&model)) {
        if (ra->index + 1 >= n) {
            throw ArgumentError("rogue agent index " + std::to_string(ra->index) +
                                " out of range for n = " + std::to_string(n));
        }
        if (ra->strategy == RogueStrategy::report_flipped && ra->mask.size() != m) {
            throw LengthError("rogue mask length must equal m");
        }
    }

    AttackedRun out{execute(n, m, secret, opts.backend, seed, exec), BitString(m), std::nullopt, false};
    auto &run = out.run;

    PublicChannel channel;
    std::optional<BitString> eve_observed;
    const auto *eaves = std::get_if<ClassicalEavesdrop>(&model);
    if (eaves != nullptr) {
        channel.subscribe([&](const BroadcastEvent &ev) { eve_observed = ev.payload; });
    }
    broadcast_share(run, PartyId::agent(0), std::nullopt, &channel);

    if (eaves != nullptr) {
        run.transcript.append(
            AttackPayload{"classical-eavesdrop", run.broadcast->recipient, std::nullopt, *eve_observed});
        out.adversary_guess = eaves->sees_all_shares ? reconstruct(run.outcomes).bits : *eve_observed;
    }

    auto shares = run.agent_outcomes();
    if (const auto *ra = std::get_if<RogueAgent>(&model)) {
        const PartyId rogue = PartyId::agent(ra->index);
        if (ra->strategy == RogueStrategy::report_flipped) {
            for (auto &s : shares) {
                if (s.party == rogue) {
                    s.bits ^= ra->mask;
                }
            }
            run.transcript.append(AttackPayload{"rogue-flip", rogue, std::nullopt, ra->mask});
        } else {
            out.adversary_guess = run.outcome_of(rogue).bits;
            run.transcript.append(AttackPayload{"rogue-guess", rogue, std::nullopt, *out.adversary_guess});
        }
    }
    shares.push_back(ShareOutcome{run.broadcast->recipient, run.broadcast->payload});
    out.agents_result = reconstruct(shares).bits;

    if (opts.check_bits) {
        Rng rng = Rng::stream(seed, std::uint64_t{1} << 32);
        for (auto pos : detail::choose_check_positions(m, rng)) {
            out.aborted = out.aborted || out.agents_result.test(pos) != secret.bits.test(pos);
        }
    }
    return out;
}

/**
 * Repeats run_attack_once `runs` times. Run seeds are drawn from `rng`. With
 * no fixed secret, a fresh uniform secret of length m is drawn per run.
 */
inline AttackReport run_attack_experiment(const AttackModel &model, std::size_t n, std::size_t m,
                                          const std::optional<Secret> &secret, std::size_t runs,
                                          Rng &rng, const AttackOptions &opts = {}) {
    require_players(n);
    if (m == 0) {
        throw ArgumentError("secret length m must be at least 1");
    }
    if (secret && secret->size() != m) {
        throw LengthError("secret length does not match m");
    }
    AttackReport rep;
    rep.model = model;
    rep.n = n;
    rep.m = m;
    rep.runs = runs;
    const bool tabulate = m <= 16;
    if (tabulate) {
        rep.party_marginals.assign(n, {});
    }

    std::size_t full = 0;
    std::size_t bits_ok = 0;
    std::size_t guesses = 0;
    std::size_t guess_ok = 0;
    std::size_t aborts = 0;
    for (std::size_t r = 0; r < runs; ++r) {
        const std::uint64_t seed = rng.next();
        const Secret s = secret ? *secret : Secret(BitString::random(m, rng));
        const auto res = run_attack_once(model, n, s, seed, opts);

        full += res.agents_result == s.bits ? 1 : 0;
        bits_ok += m - (res.agents_result ^ s.bits).popcount();
        if (res.adversary_guess) {
            ++guesses;
            guess_ok += *res.adversary_guess == s.bits ? 1 : 0;
        }
        aborts += res.aborted ? 1 : 0;
        if (tabulate) {
            for (std::size_t p = 0; p < n; ++p) {
                ++rep.party_marginals[p][res.run.outcomes[p].bits.to_uint()];
            }
        }
        if (std::holds_alternative<ClassicalEavesdrop>(model) && m <= 8) {
            ++rep.eve_view[(res.run.broadcast->payload.to_uint() << m) | s.bits.to_uint()];
        }
    }
    rep.agent_reconstruction_success = stats::frequency(full, runs);
    rep.per_bit_success = stats::frequency(bits_ok, runs * m);
    if (guesses > 0) {
        rep.eve_guess_success = stats::frequency(guess_ok, guesses);
    }
    if (opts.check_bits) {
        rep.detection_rate = stats::frequency(aborts, runs);
    }
    return rep;
}

inline AttackReport run_intercept_resend(std::size_t n, std::size_t m, const std::optional<Secret> &secret,
                                         std::size_t runs, Rng &rng,
                                         PartyId target = PartyId::spymaster(),
                                         const AttackOptions &opts = {}) {
    return run_attack_experiment(InterceptResend{target}, n, m, secret, runs, rng, opts);
}

inline AttackReport run_classical_eavesdrop(std::size_t n, std::size_t m,
                                            const std::optional<Secret> &secret, std::size_t runs,
                                            Rng &rng, bool sees_all_shares = false,
                                            const AttackOptions &opts = {}) {
    return run_attack_experiment(ClassicalEavesdrop{sees_all_shares}, n, m, secret, runs, rng, opts);
}

inline AttackReport run_rogue_agent(std::size_t n, std::size_t m, const std::optional<Secret> &secret,
                                    RogueAgent rogue, std::size_t runs, Rng &rng,
                                    const AttackOptions &opts = {}) {
    return run_attack_experiment(rogue, n, m, secret, runs, rng, opts);
}

inline AttackReport run_honest(std::size_t n, std::size_t m, const std::optional<Secret> &secret,
                               std::size_t runs, Rng &rng, const AttackOptions &opts = {}) {
    return run_attack_experiment(NoAttack{}, n, m, secret, runs, rng, opts);
}

} // namespace seqss
