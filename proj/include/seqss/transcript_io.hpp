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
 * Line-oriented transcript format, schema `seqss/1`.
 *
 * Header:
 *   seqss/1 rng=<algorithm> n=<n> m=<m> backend=<kind> seed=<u64> secret=<bits> distribution=upfront
 * Then one event per line, fields `key=value` separated by single spaces:
 *   t=<u64> kind=distribute tuple=<j> party=<party>
 *   t=<u64> kind=attack model=<name> party=<party> [tuple=<j>] bits=<bits>
 *   t=<u64> kind=phase label=psi<k> check=pass|fail
 *   t=<u64> kind=measure party=<party> bits=<bits>
 *   t=<u64> kind=broadcast to=<party> payload=<bits>
 * Bit-strings are written most-significant bit first. Lines end with '\n'.
 */

#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "seqss/errors.hpp"
#include "seqss/protocol.hpp"

namespace seqss {

inline constexpr std::string_view kSchema = "seqss/1";

namespace detail {

inline std::string fmt_event(const TranscriptEvent &ev) {
    std::ostringstream os;
    os << "t=" << ev.logical_time << " kind=" << to_string(ev.kind());
    std::visit(
        [&](const auto &p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, DistributePayload>) {
                os << " tuple=" << p.tuple << " party=" << p.party.to_string();
            } else if constexpr (std::is_same_v<P, PhasePayload>) {
                os << " label=" << to_string(p.phase) << " check=" << (p.passed ? "pass" : "fail");
            } else if constexpr (std::is_same_v<P, MeasurePayload>) {
                os << " party=" << p.party.to_string() << " bits=" << p.bits.to_string();
            } else if constexpr (std::is_same_v<P, BroadcastPayload>) {
                os << " to=" << p.recipient.to_string() << " payload=" << p.payload.to_string();
            } else {
                os << " model=" << p.model << " party=" << p.party.to_string();
                if (p.tuple) {
                    os << " tuple=" << *p.tuple;
                }
                os << " bits=" << p.bits.to_string();
            }
        },
        ev.payload);
    return os.str();
}

using Fields = std::vector<std::pair<std::string, std::string>>;

inline Fields split_fields(std::string_view line, std::size_t line_no) {
    Fields out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const std::size_t end = std::min(line.find(' ', pos), line.size());
        const std::string_view tok = line.substr(pos, end - pos);
        const std::size_t eq = tok.find('=');
        if (tok.empty() || eq == std::string_view::npos || eq == 0) {
            throw ParseError("line " + std::to_string(line_no) + ": malformed field '" +
                             std::string(tok) + "'");
        }
        out.emplace_back(std::string(tok.substr(0, eq)), std::string(tok.substr(eq + 1)));
        pos = end + 1;
    }
    return out;
}

/// Reads fields in exactly the listed order.
class FieldReader {
  public:
    FieldReader(Fields fields, std::size_t line_no) : fields_(std::move(fields)), line_(line_no) {}

    std::string take(std::string_view key) {
        if (next_ >= fields_.size() || fields_[next_].first != key) {
            fail("expected field '" + std::string(key) + "'");
        }
        return fields_[next_++].second;
    }

    bool peek(std::string_view key) const {
        return next_ < fields_.size() && fields_[next_].first == key;
    }

    std::uint64_t take_u64(std::string_view key) {
        const std::string v = take(key);
        std::uint64_t out = 0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
            fail("field '" + std::string(key) + "' is not an unsigned integer");
        }
        return out;
    }

    BitString take_bits(std::string_view key) {
        try {
            return BitString::parse(take(key));
        } catch (const ArgumentError &e) {
            fail(e.what());
        }
    }

    PartyId take_party(std::string_view key) {
        try {
            return PartyId::parse(take(key));
        } catch (const ArgumentError &e) {
            fail(e.what());
        }
    }

    void finish() const {
        if (next_ != fields_.size()) {
            fail("unexpected field '" + fields_[next_].first + "'");
        }
    }

    [[noreturn]] void fail(const std::string &msg) const {
        throw ParseError("line " + std::to_string(line_) + ": " + msg);
    }

  private:
    Fields fields_;
    std::size_t next_ = 0;
    std::size_t line_;
};

} // namespace detail

inline std::string emit_transcript(const ProtocolRun &run) {
    if (!run.complete()) {
        throw StateError("cannot emit the transcript of an incomplete run");
    }
    std::ostringstream os;
    os << kSchema << " rng=" << Rng::kAlgorithm << " n=" << run.n << " m=" << run.m
       << " backend=" << to_string(run.backend) << " seed=" << run.seed
       << " secret=" << run.secret.bits.to_string() << " distribution=upfront\n";
    for (const auto &ev : run.transcript.events()) {
        os << detail::fmt_event(ev) << '\n';
    }
    return os.str();
}

inline ProtocolRun parse_transcript(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.empty()) {
        throw ParseError("empty transcript");
    }

    ProtocolRun run;
    {
        const std::string_view head = lines[0];
        if (!head.starts_with(kSchema) || head.size() <= kSchema.size() ||
            head[kSchema.size()] != ' ') {
            throw ParseError("line 1: missing schema header '" + std::string(kSchema) + "'");
        }
        detail::FieldReader r(detail::split_fields(head.substr(kSchema.size() + 1), 1), 1);
        if (r.take("rng") != Rng::kAlgorithm) {
            r.fail("unsupported rng algorithm");
        }
        run.n = r.take_u64("n");
        run.m = r.take_u64("m");
        try {
            run.backend = parse_backend(r.take("backend"));
        } catch (const ArgumentError &e) {
            r.fail(e.what());
        }
        run.seed = r.take_u64("seed");
        auto secret_bits = r.take_bits("secret");
        if (secret_bits.size() != run.m || run.m == 0) {
            r.fail("secret length disagrees with m");
        }
        run.secret = Secret(std::move(secret_bits));
        if (r.take("distribution") != "upfront") {
            r.fail("unsupported distribution mode");
        }
        r.finish();
    }

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        detail::FieldReader r(detail::split_fields(lines[i], line_no), line_no);
        const std::uint64_t t = r.take_u64("t");
        const std::string kind = r.take("kind");
        EventPayload payload;
        if (kind == "distribute") {
            const std::size_t tuple = r.take_u64("tuple");
            payload = DistributePayload{tuple, r.take_party("party")};
        } else if (kind == "phase") {
            Phase p{};
            try {
                p = parse_phase(r.take("label"));
            } catch (const ArgumentError &e) {
                r.fail(e.what());
            }
            const std::string check = r.take("check");
            if (check != "pass" && check != "fail") {
                r.fail("check must be pass or fail");
            }
            payload = PhasePayload{p, check == "pass"};
        } else if (kind == "measure") {
            auto party = r.take_party("party");
            payload = MeasurePayload{party, r.take_bits("bits")};
        } else if (kind == "broadcast") {
            auto to = r.take_party("to");
            payload = BroadcastPayload{to, r.take_bits("payload")};
        } else if (kind == "attack") {
            AttackPayload a;
            a.model = r.take("model");
            a.party = r.take_party("party");
            if (r.peek("tuple")) {
                a.tuple = r.take_u64("tuple");
            }
            a.bits = r.take_bits("bits");
            payload = std::move(a);
        } else {
            r.fail("unknown event kind '" + kind + "'");
        }
        r.finish();

        try {
            run.transcript.append_at(t, payload);
        } catch (const StateError &e) {
            r.fail(e.what());
        }
        if (const auto *p = std::get_if<PhasePayload>(&payload)) {
            run.phase_log.push_back(PhaseCheckpoint{p->phase, p->passed, t});
        } else if (const auto *m = std::get_if<MeasurePayload>(&payload)) {
            run.outcomes.push_back(ShareOutcome{m->party, m->bits});
        } else if (const auto *b = std::get_if<BroadcastPayload>(&payload)) {
            if (run.broadcast) {
                r.fail("second broadcast");
            }
            run.broadcast = BroadcastEvent{b->payload, b->recipient, t};
        }
    }
    return run;
}

} // namespace seqss
