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

#pragma once

#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "seqss/bits.hpp"
#include "seqss/errors.hpp"

namespace seqss {

/// Smallest legal game: the spymaster plus two agents.
inline constexpr std::size_t kMinPlayers = 3;

inline void require_players(std::size_t n) {
    if (n < kMinPlayers) {
        throw ProtocolSizeError("the protocol needs n >= 3 players (a spymaster and at least two "
                                "agents), got n = " +
                                std::to_string(n));
    }
}

/// The m-bit message chosen by the spymaster.
struct Secret {
    BitString bits;

    Secret() = default;
    explicit Secret(BitString b) : bits(std::move(b)) {
        if (bits.empty()) {
            throw ArgumentError("secret must have at least one bit");
        }
    }

    std::size_t size() const noexcept { return bits.size(); }

    friend bool operator==(const Secret &, const Secret &) = default;
};

enum class Role : std::uint8_t { spymaster, agent };

struct PartyId {
    Role role = Role::spymaster;
    std::size_t agent_index = 0;

    static constexpr PartyId spymaster() noexcept { return PartyId{Role::spymaster, 0}; }
    static constexpr PartyId agent(std::size_t i) noexcept { return PartyId{Role::agent, i}; }

    constexpr bool is_spymaster() const noexcept { return role == Role::spymaster; }
    constexpr bool is_agent() const noexcept { return role == Role::agent; }

    std::string to_string() const {
        return is_spymaster() ? std::string("spymaster") : "agent" + std::to_string(agent_index);
    }

    static PartyId parse(std::string_view text) {
        if (text == "spymaster") {
            return spymaster();
        }
        constexpr std::string_view prefix = "agent";
        if (text.starts_with(prefix) && text.size() > prefix.size()) {
            std::size_t index = 0;
            const auto *first = text.data() + prefix.size();
            const auto *last = text.data() + text.size();
            auto [ptr, ec] = std::from_chars(first, last, index);
            if (ec == std::errc{} && ptr == last) {
                return agent(index);
            }
        }
        throw ArgumentError("unknown party '" + std::string(text) + "'");
    }

    friend constexpr bool operator==(const PartyId &, const PartyId &) = default;
};

/**
 * Position of a party inside one GHZ tuple and inside the joint register.
 *
 * Agent i owns slot i and the spymaster owns slot n-1, so the spymaster's
 * qubit is the most significant of each tuple.
 */
inline std::size_t slot_of(PartyId p, std::size_t n) {
    if (p.is_spymaster()) {
        return n - 1;
    }
    if (p.agent_index + 1 >= n) {
        throw ArgumentError("agent index " + std::to_string(p.agent_index) + " out of range for n = " +
                            std::to_string(n));
    }
    return p.agent_index;
}

inline PartyId party_at_slot(std::size_t slot, std::size_t n) {
    return slot + 1 == n ? PartyId::spymaster() : PartyId::agent(slot);
}

/// One party's m-bit measurement result.
struct ShareOutcome {
    PartyId party;
    BitString bits;

    friend bool operator==(const ShareOutcome &, const ShareOutcome &) = default;
};

/// Release of the spymaster's outcome over the public channel.
struct BroadcastEvent {
    BitString payload;
    PartyId recipient;
    std::uint64_t logical_time = 0;

    friend bool operator==(const BroadcastEvent &, const BroadcastEvent &) = default;
};

/// Protocol checkpoints, in barrier order.
enum class Phase : std::uint8_t { psi0, psi1, psi2, psi3, psi4 };

inline constexpr std::array<Phase, 5> kAllPhases = {Phase::psi0, Phase::psi1, Phase::psi2,
                                                     Phase::psi3, Phase::psi4};

inline std::string_view to_string(Phase p) {
    constexpr std::array<std::string_view, 5> names = {"psi0", "psi1", "psi2", "psi3", "psi4"};
    return names[static_cast<std::size_t>(p)];
}

inline Phase parse_phase(std::string_view text) {
    for (auto p : kAllPhases) {
        if (to_string(p) == text) {
            return p;
        }
    }
    throw ArgumentError("unknown phase '" + std::string(text) + "'");
}

} // namespace seqss
