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
 * Execution strategies for the quantum part of a run.
 *
 * - factorized: one n-qubit GHZ tuple per secret bit, simulated exactly. The
 *   kickback phase (-1)^(s.x) is a product over bit positions, so tuples are
 *   independent and the spymaster's output qubit (a constant |->) is dropped.
 * - analytic: samples the closed-form post-Hadamard distribution, uniform over
 *   the n-bit strings whose parity is the secret bit.
 * - joint: the whole circuit on m*n+1 qubits, oracle included. This is the
 *   ground truth the other two are validated against.
 *
 * Qubit layout (joint): agent i owns qubits [i*m, (i+1)*m), the spymaster's
 * input register is [(n-1)*m, n*m) and her output qubit is n*m. Within a
 * tuple, qubit p is the party in slot p (see slot_of).
 *
 * Randomness: factorized and analytic draw tuple j from Rng::stream(seed, j);
 * joint draws from Rng::stream(seed, 0).
 */

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqss/bits.hpp"
#include "seqss/errors.hpp"
#include "seqss/qcore.hpp"
#include "seqss/rng.hpp"
#include "seqss/types.hpp"

namespace seqss {

enum class BackendKind : std::uint8_t { factorized, analytic, joint };

inline std::string_view to_string(BackendKind k) {
    switch (k) {
    case BackendKind::factorized:
        return "factorized";
    case BackendKind::analytic:
        return "analytic";
    case BackendKind::joint:
        return "joint";
    }
    return "?";
}

inline BackendKind parse_backend(std::string_view text) {
    for (auto k : {BackendKind::factorized, BackendKind::analytic, BackendKind::joint}) {
        if (to_string(k) == text) {
            return k;
        }
    }
    throw ArgumentError("unknown backend '" + std::string(text) + "'");
}

inline std::size_t joint_qubits(std::size_t n, std::size_t m) { return m * n + 1; }

inline bool joint_fits(std::size_t n, std::size_t m) {
    return m <= kMaxQubits && joint_qubits(n, m) <= kMaxQubits;
}

inline void require_joint_capacity(std::size_t n, std::size_t m) {
    if (!joint_fits(n, m)) {
        throw CapacityError("joint backend needs m*n+1 = " + std::to_string(m * n + 1) +
                            " qubits, ceiling is " + std::to_string(kMaxQubits));
    }
}

/// One bit per player for a single secret-bit position; bit p is slot p.
struct TupleOutcome {
    BitString bits;

    friend bool operator==(const TupleOutcome &, const TupleOutcome &) = default;
};

/// Which phase assertions held during a run.
struct PhaseChecks {
    std::array<bool, 5> passed{true, true, true, true, true};

    bool operator[](Phase p) const { return passed[static_cast<std::size_t>(p)]; }
    void record(Phase p, bool ok) { passed[static_cast<std::size_t>(p)] &= ok; }

    void merge(const PhaseChecks &other) {
        for (std::size_t i = 0; i < passed.size(); ++i) {
            passed[i] = passed[i] && other.passed[i];
        }
    }

    bool all() const {
        for (bool b : passed) {
            if (!b) {
                return false;
            }
        }
        return true;
    }
};

struct TupleOptions {
    /// Slot whose qubit an adversary measures and resends before phase 0.
    std::optional<std::size_t> intercept_slot;
};

struct TupleRun {
    TupleOutcome outcome;
    PhaseChecks checks;
    std::optional<bool> intercepted;
};

namespace detail {

inline bool near(Amplitude a, Amplitude b) { return std::abs(a - b) <= kTolerance; }

inline BitString single_bit(bool b) { return BitString(1).set(0, b); }

/// Measure qubit `q` and put the collapsed qubit back in place.
inline std::pair<StateVector, bool> intercept_resend(const StateVector &state, QubitIndex q,
                                                     Rng &rng) {
    const std::array<QubitIndex, 1> target{q};
    auto rec = measure(state, target, rng);
    const bool bit = rec.bits.test(0);
    if (!rec.collapsed) {
        return {basis_state(1, bit ? 1 : 0), bit};
    }
    return {insert_qubit(*rec.collapsed, q, bit), bit};
}

inline std::vector<QubitIndex> range_qubits(std::size_t first, std::size_t count) {
    std::vector<QubitIndex> out;
    out.reserve(count);
    for (std::size_t q = first; q < first + count; ++q) {
        out.emplace_back(q);
    }
    return out;
}

inline bool h_maps_one_to_minus() {
    const auto s = apply_hadamard(basis_state(1, 1), QubitIndex{0});
    return near(s[0], kInvSqrt2) && near(s[1], -kInvSqrt2);
}

} // namespace detail

inline TupleRun simulate_tuple_factorized(std::size_t n, bool secret_bit, Rng &rng,
                                          const TupleOptions &opts = {}) {
    require_players(n);
    TupleRun run;
    const std::size_t all_ones = (std::size_t{1} << n) - 1;
    const QubitIndex spymaster{n - 1};

    auto state = prepare_ghz(n);
    if (opts.intercept_slot) {
        auto [resent, bit] = detail::intercept_resend(state, QubitIndex{*opts.intercept_slot}, rng);
        state = std::move(resent);
        run.intercepted = bit;
    }
    run.checks.record(Phase::psi0,
                      detail::near(state[0], kInvSqrt2) && detail::near(state[all_ones], kInvSqrt2));

    run.checks.record(Phase::psi1, detail::h_maps_one_to_minus());

    const std::array<QubitIndex, 1> input{spymaster};
    state = apply_parity_phase(std::move(state), input, detail::single_bit(secret_bit));
    const double sign = secret_bit ? -1.0 : 1.0;
    run.checks.record(Phase::psi2, detail::near(state[0], kInvSqrt2) &&
                                       detail::near(state[all_ones], sign * kInvSqrt2));

    const auto all = detail::range_qubits(0, n);
    state = apply_hadamard_all(std::move(state), all);
    const double valid = std::pow(2.0, -static_cast<double>(n - 1) / 2.0);
    bool support_ok = true;
    for (std::size_t i = 0; i < state.size(); ++i) {
        const bool parity = (std::popcount(i) & 1) != 0;
        const Amplitude expected = parity == secret_bit ? Amplitude{valid} : Amplitude{0.0};
        support_ok = support_ok && detail::near(state[i], expected);
    }
    run.checks.record(Phase::psi3, support_ok);

    auto rec = measure(state, all, rng);
    run.checks.record(Phase::psi4, rec.bits.parity() == secret_bit);
    run.outcome.bits = std::move(rec.bits);
    return run;
}

inline TupleRun simulate_tuple_analytic(std::size_t n, bool secret_bit, Rng &rng,
                                        const TupleOptions &opts = {}) {
    require_players(n);
    TupleRun run;
    BitString bits(n);
    if (opts.intercept_slot) {
        // A computational-basis collapse leaves |z...z>; after H on every
        // qubit all 2^n strings are equally likely whatever z and s are.
        run.intercepted = rng.bit();
        for (std::size_t p = 0; p < n; ++p) {
            bits.set(p, rng.bit());
        }
        run.checks.record(Phase::psi0, false);
        run.checks.record(Phase::psi2, false);
        run.checks.record(Phase::psi3, false);
    } else {
        bool parity = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            const bool b = rng.bit();
            bits.set(p, b);
            parity ^= b;
        }
        bits.set(n - 1, parity != secret_bit);
    }
    run.checks.record(Phase::psi4, bits.parity() == secret_bit);
    run.outcome.bits = std::move(bits);
    return run;
}

inline TupleOutcome run_tuple_factorized(std::size_t n, bool secret_bit, Rng &rng) {
    return simulate_tuple_factorized(n, secret_bit, rng).outcome;
}

inline TupleOutcome run_tuple_analytic(std::size_t n, bool secret_bit, Rng &rng) {
    return simulate_tuple_analytic(n, secret_bit, rng).outcome;
}

struct JointRun {
    /// Measured register of each slot.
    std::vector<BitString> shares;
    PhaseChecks checks;
    /// Bits seen by the interceptor, bit j from tuple j.
    std::optional<BitString> intercepted;
    /// The output qubit was |-> (up to global phase) after measurement.
    bool output_minus = false;
};

namespace detail {

struct JointLayout {
    std::size_t n;
    std::size_t m;

    std::uint64_t reg_mask() const { return (std::uint64_t{1} << m) - 1; }
    std::uint64_t out_mask() const { return std::uint64_t{1} << (n * m); }
    std::uint64_t reg(std::uint64_t index, std::size_t slot) const {
        return (index >> (slot * m)) & reg_mask();
    }
    QubitIndex qubit(std::size_t slot, std::size_t j) const { return QubitIndex{slot * m + j}; }
    QubitIndex output() const { return QubitIndex{n * m}; }
};

/// The output qubit factors out as |->: amp(out=1) = -amp(out=0) everywhere.
inline bool output_is_minus(const StateVector &state, const JointLayout &lay) {
    const std::uint64_t out = lay.out_mask();
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        if ((i & out) == 0 && !near(state[i | out], -state[i])) {
            return false;
        }
    }
    return true;
}

/// Amplitude on |0>_out|registers all equal to x> is coef(x); all else is zero
/// (out=1 part is governed by output_is_minus).
template <class Coef>
bool matches_ghz_structure(const StateVector &state, const JointLayout &lay, std::uint64_t out_value,
                           Coef coef) {
    for (std::uint64_t i = 0; i < state.size(); ++i) {
        const bool out = (i & lay.out_mask()) != 0;
        if (out != (out_value != 0)) {
            continue;
        }
        const std::uint64_t x = lay.reg(i, 0);
        bool all_equal = true;
        for (std::size_t p = 1; p < lay.n && all_equal; ++p) {
            all_equal = lay.reg(i, p) == x;
        }
        const Amplitude expected = all_equal ? coef(x) : Amplitude{0.0};
        if (!near(state[i], expected)) {
            return false;
        }
    }
    return true;
}

} // namespace detail

inline JointRun simulate_joint(std::size_t n, std::size_t m, const BitString &secret, Rng &rng,
                               std::optional<std::size_t> intercept_slot = std::nullopt,
                               bool check_phases = true) {
    require_players(n);
    if (m == 0) {
        throw ArgumentError("secret length m must be at least 1");
    }
    require_joint_capacity(n, m);
    if (secret.size() != m) {
        throw LengthError("secret length does not match m");
    }
    const detail::JointLayout lay{n, m};
    const std::size_t k = joint_qubits(n, m);
    const double reg_amp = std::pow(2.0, -static_cast<double>(m) / 2.0);
    JointRun run;

    // Phase 0: output register |1>, one GHZ tuple per bit position. The chain
    // runs spymaster -> agent n-2 -> ... -> agent 0.
    auto state = basis_state(k, lay.out_mask());
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<QubitIndex> chain;
        for (std::size_t slot = n; slot-- > 0;) {
            chain.push_back(lay.qubit(slot, j));
        }
        state = entangle_ghz(std::move(state), chain);
    }
    if (intercept_slot) {
        if (*intercept_slot >= n) {
            throw ArgumentError("intercept slot out of range");
        }
        const auto targets = detail::range_qubits(*intercept_slot * m, m);
        auto rec = measure(state, targets, rng);
        // Remaining qubits come back in ascending order, so re-inserting in
        // ascending order restores every position.
        StateVector resent = std::move(*rec.collapsed);
        for (std::size_t j = 0; j < m; ++j) {
            resent = insert_qubit(resent, targets[j], rec.bits.test(j));
        }
        state = std::move(resent);
        run.intercepted = std::move(rec.bits);
    }
    if (check_phases) {
        run.checks.record(Phase::psi0,
                          detail::matches_ghz_structure(state, lay, 1, [&](std::uint64_t) {
                              return Amplitude{reg_amp};
                          }));
    }

    // Phase 1: H on the output register.
    state = apply_hadamard(std::move(state), lay.output());
    if (check_phases) {
        run.checks.record(Phase::psi1,
                          detail::output_is_minus(state, lay) &&
                              detail::matches_ghz_structure(state, lay, 0, [&](std::uint64_t) {
                                  return Amplitude{reg_amp * kInvSqrt2};
                              }));
    }

    // Phase 2: the oracle on (spymaster input register, output register).
    const auto spy_inputs = detail::range_qubits((n - 1) * m, m);
    state = apply_phase_oracle(std::move(state), spy_inputs, lay.output(), secret);
    if (check_phases) {
        const std::uint64_t s = secret.to_uint();
        run.checks.record(Phase::psi2,
                          detail::output_is_minus(state, lay) &&
                              detail::matches_ghz_structure(state, lay, 0, [&](std::uint64_t x) {
                                  const bool odd = (std::popcount(x & s) & 1) != 0;
                                  return Amplitude{(odd ? -1.0 : 1.0) * reg_amp * kInvSqrt2};
                              }));
    }

    // Phase 3: every party applies H to its whole input register.
    const auto inputs = detail::range_qubits(0, n * m);
    state = apply_hadamard_all(std::move(state), inputs);
    if (check_phases) {
        const std::uint64_t s = secret.to_uint();
        const double valid =
            std::pow(2.0, -static_cast<double>(m * (n - 1)) / 2.0) * kInvSqrt2;
        bool ok = detail::output_is_minus(state, lay);
        for (std::uint64_t i = 0; i < state.size() && ok; ++i) {
            if ((i & lay.out_mask()) != 0) {
                continue;
            }
            std::uint64_t x = 0;
            for (std::size_t p = 0; p < n; ++p) {
                x ^= lay.reg(i, p);
            }
            ok = detail::near(state[i], x == s ? Amplitude{valid} : Amplitude{0.0});
        }
        run.checks.record(Phase::psi3, ok);
    }

    // Phase 4: measure every input register; the output qubit is left alone.
    auto rec = measure(state, inputs, rng);
    run.shares.assign(n, BitString(m));
    BitString xor_all(m);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t j = 0; j < m; ++j) {
            run.shares[p].set(j, rec.bits.test(p * m + j));
        }
        xor_all ^= run.shares[p];
    }
    run.output_minus = rec.collapsed && equal_up_to_global_phase(*rec.collapsed, minus_state());
    run.checks.record(Phase::psi4, run.output_minus && xor_all == secret);
    return run;
}

/// Shares in (spymaster, agent n-2, ..., agent 0) order.
inline std::vector<ShareOutcome> shares_to_outcomes(const std::vector<BitString> &by_slot) {
    const std::size_t n = by_slot.size();
    std::vector<ShareOutcome> out;
    out.reserve(n);
    for (std::size_t slot = n; slot-- > 0;) {
        out.push_back(ShareOutcome{party_at_slot(slot, n), by_slot[slot]});
    }
    return out;
}

inline std::vector<ShareOutcome> run_joint_oracle(std::size_t n, std::size_t m, const Secret &s,
                                                  Rng &rng) {
    auto run = simulate_joint(n, m, s.bits, rng);
    if (!run.output_minus) {
        throw InternalError("output register left |->");
    }
    return shares_to_outcomes(run.shares);
}

struct BackendOptions {
    /// Party whose share of every tuple is measured and resent in transit.
    std::optional<PartyId> intercept;
    /// Evaluate the per-phase state assertions (joint only; the tuple
    /// backends always check, it is cheap there).
    bool check_phases = true;
};

struct BackendRun {
    std::vector<BitString> shares; // by slot
    PhaseChecks checks;
    std::optional<BitString> intercepted;
};

inline BackendRun run_backend(BackendKind kind, std::size_t n, std::size_t m, const BitString &secret,
                              std::uint64_t seed, const BackendOptions &opts = {}) {
    require_players(n);
    if (m == 0) {
        throw ArgumentError("secret length m must be at least 1");
    }
    if (secret.size() != m) {
        throw LengthError("secret length does not match m");
    }
    std::optional<std::size_t> slot;
    if (opts.intercept) {
        slot = slot_of(*opts.intercept, n);
    }

    BackendRun out;
    if (kind == BackendKind::joint) {
        Rng rng = Rng::stream(seed, 0);
        auto run = simulate_joint(n, m, secret, rng, slot, opts.check_phases);
        out.shares = std::move(run.shares);
        out.checks = run.checks;
        out.intercepted = std::move(run.intercepted);
        return out;
    }

    out.shares.assign(n, BitString(m));
    if (slot) {
        out.intercepted = BitString(m);
    }
    const TupleOptions topts{slot};
    for (std::size_t j = 0; j < m; ++j) {
        Rng rng = Rng::stream(seed, j);
        const bool bit = secret.test(j);
        auto t = kind == BackendKind::factorized ? simulate_tuple_factorized(n, bit, rng, topts)
                                                 : simulate_tuple_analytic(n, bit, rng, topts);
        for (std::size_t p = 0; p < n; ++p) {
            out.shares[p].set(j, t.outcome.bits.test(p));
        }
        if (t.intercepted) {
            out.intercepted->set(j, *t.intercepted);
        }
        out.checks.merge(t.checks);
    }
    return out;
}

} // namespace seqss
