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
 * The secret-sharing protocol: a spymaster and n-1 agents share m GHZ tuples
 * from a neutral source, the spymaster applies her secret oracle, everyone
 * applies H to their register and measures. The outcomes satisfy
 *
 *     a ^ y_{n-2} ^ ... ^ y_0 == s
 *
 * on every run. Agents recover s only once the spymaster broadcasts a.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqss/backends.hpp"
#include "seqss/bits.hpp"
#include "seqss/channels.hpp"
#include "seqss/errors.hpp"
#include "seqss/rng.hpp"
#include "seqss/types.hpp"

namespace seqss {

/// The spymaster's function: s.x mod 2.
inline bool secret_function(const Secret &s, const BitString &x) { return s.bits.dot(x); }

struct PhaseCheckpoint {
    Phase phase = Phase::psi0;
    bool passed = false;
    std::uint64_t logical_time = 0;

    friend bool operator==(const PhaseCheckpoint &, const PhaseCheckpoint &) = default;
};

struct ExecuteOptions {
    /// Intercept-resend adversary on this party's qubits (computational basis).
    std::optional<PartyId> intercept;
    bool check_phases = true;
};

/// Full record of one execution.
struct ProtocolRun {
    std::size_t n = 0;
    std::size_t m = 0;
    Secret secret;
    BackendKind backend = BackendKind::factorized;
    std::uint64_t seed = 0;
    /// Ordered spymaster, agent n-2, ..., agent 0.
    std::vector<ShareOutcome> outcomes;
    std::vector<PhaseCheckpoint> phase_log;
    std::optional<BroadcastEvent> broadcast;
    Transcript transcript;

    /// Quantum part finished: all five checkpoints in order and n outcomes.
    bool complete() const {
        if (phase_log.size() != kAllPhases.size() || outcomes.size() != n) {
            return false;
        }
        for (std::size_t i = 0; i < kAllPhases.size(); ++i) {
            if (phase_log[i].phase != kAllPhases[i]) {
                return false;
            }
        }
        return true;
    }

    bool all_phases_passed() const {
        return std::all_of(phase_log.begin(), phase_log.end(),
                           [](const PhaseCheckpoint &c) { return c.passed; });
    }

    const ShareOutcome &outcome_of(PartyId p) const {
        for (const auto &o : outcomes) {
            if (o.party == p) {
                return o;
            }
        }
        throw ArgumentError("no outcome for " + p.to_string());
    }

    std::vector<ShareOutcome> agent_outcomes() const {
        std::vector<ShareOutcome> out;
        for (const auto &o : outcomes) {
            if (o.party.is_agent()) {
                out.push_back(o);
            }
        }
        return out;
    }

    friend bool operator==(const ProtocolRun &, const ProtocolRun &) = default;
};

inline ProtocolRun execute(std::size_t n, std::size_t m, const Secret &secret, BackendKind backend,
                           std::uint64_t seed, const ExecuteOptions &opts = {}) {
    require_players(n);
    if (m == 0) {
        throw ArgumentError("secret length m must be at least 1");
    }
    if (secret.size() != m) {
        throw LengthError("secret has " + std::to_string(secret.size()) + " bits, m = " +
                          std::to_string(m));
    }
    if (backend == BackendKind::joint) {
        require_joint_capacity(n, m);
    }
    if (opts.intercept) {
        slot_of(*opts.intercept, n);
    }

    ProtocolRun run;
    run.n = n;
    run.m = m;
    run.secret = secret;
    run.backend = backend;
    run.seed = seed;

    auto handles = distribute_shares(n, m, run.transcript);
    QuantumChannel channel(n, handles);

    const auto result =
        run_backend(backend, n, m, secret.bits, seed, BackendOptions{opts.intercept, opts.check_phases});

    for (const auto &h : handles) {
        if (opts.intercept && h.party == *opts.intercept) {
            channel.intercept(h);
            run.transcript.append(AttackPayload{"intercept-resend", h.party, h.tuple,
                                                BitString(1).set(0, result.intercepted->test(h.tuple))});
            channel.resend(h);
        } else {
            channel.deliver(h);
        }
    }
    if (!channel.all_delivered()) {
        throw InternalError("undelivered share handle");
    }

    auto checkpoint = [&](Phase p) {
        const bool ok = result.checks[p];
        const auto &ev = run.transcript.append(PhasePayload{p, ok});
        run.phase_log.push_back(PhaseCheckpoint{p, ok, ev.logical_time});
    };
    checkpoint(Phase::psi0);
    checkpoint(Phase::psi1);
    checkpoint(Phase::psi2);
    checkpoint(Phase::psi3);
    run.outcomes = shares_to_outcomes(result.shares);
    for (const auto &o : run.outcomes) {
        run.transcript.append(MeasurePayload{o.party, o.bits});
    }
    checkpoint(Phase::psi4);
    return run;
}

/// Bitwise XOR of all outcomes.
inline Secret reconstruct(std::span<const ShareOutcome> outcomes) {
    if (outcomes.empty()) {
        throw ArgumentError("reconstruct needs at least one outcome");
    }
    BitString acc(outcomes.front().bits.size());
    for (const auto &o : outcomes) {
        acc ^= o.bits;
    }
    return Secret(std::move(acc));
}

/// What the agents can compute by pooling their own outcomes; equals s only
/// when the spymaster's outcome is all-zero.
inline BitString agents_without_broadcast(std::span<const ShareOutcome> agent_outcomes) {
    if (agent_outcomes.empty()) {
        throw ArgumentError("no agent outcomes given");
    }
    BitString acc(agent_outcomes.front().bits.size());
    for (const auto &o : agent_outcomes) {
        if (o.party.is_spymaster()) {
            throw RoleError("spymaster outcome passed as an agent outcome");
        }
        acc ^= o.bits;
    }
    return acc;
}

/**
 * Spymaster releases her outcome to one agent over the public channel.
 *
 * `when` defaults to the next logical tick and must advance the transcript
 * clock. Every subscriber of `channel` observes the event.
 */
inline const BroadcastEvent &broadcast_share(ProtocolRun &run, PartyId recipient,
                                             std::optional<std::uint64_t> when = std::nullopt,
                                             const PublicChannel *channel = nullptr) {
    if (!run.complete()) {
        throw StateError("broadcast before the quantum part finished");
    }
    if (run.broadcast) {
        throw StateError("spymaster already broadcast her share");
    }
    if (!recipient.is_agent()) {
        throw RoleError("broadcast recipient must be an agent");
    }
    if (recipient.agent_index + 1 >= run.n) {
        throw RoleError("no agent " + recipient.to_string() + " in a game of " +
                        std::to_string(run.n));
    }
    const auto &a = run.outcome_of(PartyId::spymaster()).bits;
    const auto &ev =
        run.transcript.append_at(when.value_or(run.transcript.next_time()), BroadcastPayload{recipient, a});
    run.broadcast = BroadcastEvent{a, recipient, ev.logical_time};
    if (channel != nullptr) {
        channel->publish(*run.broadcast);
    }
    return *run.broadcast;
}

/// The agents' reconstruction at logical time `at`; needs the broadcast to
/// have happened at or before `at`.
inline Secret agents_reconstruct(const ProtocolRun &run, std::uint64_t at) {
    if (!run.broadcast || run.broadcast->logical_time > at) {
        throw MissingShareError("spymaster's share has not been broadcast by logical time " +
                                std::to_string(at));
    }
    auto shares = run.agent_outcomes();
    shares.push_back(ShareOutcome{run.broadcast->recipient, run.broadcast->payload});
    return reconstruct(shares);
}

inline Secret agents_reconstruct(const ProtocolRun &run) {
    return agents_reconstruct(run, run.transcript.next_time());
}

/// Seed of run `r` in a batch started from `seed`.
inline std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t r) { return derive_seed(seed, r); }

/// Fraction of runs where the agents' pooled outcomes alone equal s.
inline double agents_only_success_rate(std::size_t n, const Secret &secret, std::size_t runs,
                                       std::uint64_t seed,
                                       BackendKind backend = BackendKind::factorized) {
    std::size_t hits = 0;
    for (std::size_t r = 0; r < runs; ++r) {
        const auto run = execute(n, secret.size(), secret, backend, batch_seed(seed, r));
        const auto agents = run.agent_outcomes();
        hits += agents_without_broadcast(agents) == secret.bits ? 1 : 0;
    }
    return runs == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(runs);
}

} // namespace seqss
