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
 * Simulated channels and the append-only event log.
 *
 * The quantum channel is ideal (lossless, noiseless). All tuples are
 * distributed up front, tuple by tuple, each tuple's qubits going out in
 * slot order spymaster, agent n-2, ..., agent 0.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "seqss/bits.hpp"
#include "seqss/errors.hpp"
#include "seqss/types.hpp"

namespace seqss {

struct DistributePayload {
    std::size_t tuple = 0;
    PartyId party;

    friend bool operator==(const DistributePayload &, const DistributePayload &) = default;
};

struct PhasePayload {
    Phase phase = Phase::psi0;
    bool passed = false;

    friend bool operator==(const PhasePayload &, const PhasePayload &) = default;
};

struct MeasurePayload {
    PartyId party;
    BitString bits;

    friend bool operator==(const MeasurePayload &, const MeasurePayload &) = default;
};

struct BroadcastPayload {
    PartyId recipient;
    BitString payload;

    friend bool operator==(const BroadcastPayload &, const BroadcastPayload &) = default;
};

/// An adversary's action. `bits` carries what was observed or injected.
struct AttackPayload {
    std::string model;
    PartyId party;
    std::optional<std::size_t> tuple;
    BitString bits;

    friend bool operator==(const AttackPayload &, const AttackPayload &) = default;
};

using EventPayload =
    std::variant<DistributePayload, PhasePayload, MeasurePayload, BroadcastPayload, AttackPayload>;

enum class EventKind : std::uint8_t { distribute, phase, measure, broadcast, attack };

inline std::string_view to_string(EventKind k) {
    constexpr std::string_view names[] = {"distribute", "phase", "measure", "broadcast", "attack"};
    return names[static_cast<std::size_t>(k)];
}

struct TranscriptEvent {
    std::uint64_t logical_time = 0;
    EventPayload payload;

    EventKind kind() const noexcept { return static_cast<EventKind>(payload.index()); }

    friend bool operator==(const TranscriptEvent &, const TranscriptEvent &) = default;
};

/// Append-only log with strictly increasing logical time.
class Transcript {
  public:
    /// Appends at the next tick.
    const TranscriptEvent &append(EventPayload payload) {
        return append_at(next_time(), std::move(payload));
    }

    const TranscriptEvent &append_at(std::uint64_t time, EventPayload payload) {
        if (!events_.empty() && time <= events_.back().logical_time) {
            throw StateError("logical time " + std::to_string(time) +
                             " does not advance past " +
                             std::to_string(events_.back().logical_time));
        }
        events_.push_back(TranscriptEvent{time, std::move(payload)});
        return events_.back();
    }

    std::uint64_t next_time() const noexcept {
        return events_.empty() ? 0 : events_.back().logical_time + 1;
    }

    const std::vector<TranscriptEvent> &events() const noexcept { return events_; }

    std::size_t count(EventKind k) const {
        std::size_t c = 0;
        for (const auto &e : events_) {
            c += e.kind() == k ? 1 : 0;
        }
        return c;
    }

    friend bool operator==(const Transcript &, const Transcript &) = default;

  private:
    std::vector<TranscriptEvent> events_;
};

/// One party's qubit of tuple `tuple`.
struct QuantumShareHandle {
    std::size_t tuple = 0;
    PartyId party;

    friend bool operator==(const QuantumShareHandle &, const QuantumShareHandle &) = default;
};

/// Emits every (tuple, party) handle once and logs a Distribute event for each.
inline std::vector<QuantumShareHandle> distribute_shares(std::size_t n, std::size_t m,
                                                         Transcript &log) {
    require_players(n);
    if (m == 0) {
        throw ArgumentError("secret length m must be at least 1");
    }
    std::vector<QuantumShareHandle> handles;
    handles.reserve(n * m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t slot = n; slot-- > 0;) {
            QuantumShareHandle h{j, party_at_slot(slot, n)};
            log.append(DistributePayload{h.tuple, h.party});
            handles.push_back(h);
        }
    }
    return handles;
}

/**
 * Delivery bookkeeping for distributed handles.
 *
 * A handle is delivered exactly once. An intercepted handle can no longer be
 * delivered as-is; only the adversary's resent substitute reaches the party.
 */
class QuantumChannel {
  public:
    enum class Status : std::uint8_t { in_transit, intercepted, delivered };

    QuantumChannel(std::size_t n, std::vector<QuantumShareHandle> handles)
        : n_(n), handles_(std::move(handles)), status_(handles_.size(), Status::in_transit) {}

    void deliver(const QuantumShareHandle &h) {
        auto &st = status_.at(index_of(h));
        if (st != Status::in_transit) {
            throw StateError("handle for " + h.party.to_string() + " tuple " +
                             std::to_string(h.tuple) + " is not deliverable");
        }
        st = Status::delivered;
    }

    void intercept(const QuantumShareHandle &h) {
        auto &st = status_.at(index_of(h));
        if (st != Status::in_transit) {
            throw StateError("handle already left the channel");
        }
        st = Status::intercepted;
    }

    /// Delivers the adversary's replacement for an intercepted handle.
    void resend(const QuantumShareHandle &h) {
        auto &st = status_.at(index_of(h));
        if (st != Status::intercepted) {
            throw StateError("only an intercepted handle can be resent");
        }
        st = Status::delivered;
    }

    Status status(const QuantumShareHandle &h) const { return status_.at(index_of(h)); }

    bool all_delivered() const {
        for (auto st : status_) {
            if (st != Status::delivered) {
                return false;
            }
        }
        return true;
    }

    const std::vector<QuantumShareHandle> &handles() const noexcept { return handles_; }

  private:
    std::size_t index_of(const QuantumShareHandle &h) const {
        const std::size_t slot = slot_of(h.party, n_);
        const std::size_t idx = h.tuple * n_ + (n_ - 1 - slot);
        if (idx >= handles_.size() || !(handles_[idx] == h)) {
            throw ArgumentError("unknown share handle");
        }
        return idx;
    }

    std::size_t n_;
    std::vector<QuantumShareHandle> handles_;
    std::vector<Status> status_;
};

/// Classical broadcast medium; every observer sees every message.
class PublicChannel {
  public:
    using Observer = std::function<void(const BroadcastEvent &)>;

    void subscribe(Observer obs) { observers_.push_back(std::move(obs)); }

    void publish(const BroadcastEvent &ev) const {
        for (const auto &obs : observers_) {
            obs(ev);
        }
    }

  private:
    std::vector<Observer> observers_;
};

} // namespace seqss
