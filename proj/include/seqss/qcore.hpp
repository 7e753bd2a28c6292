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
 * Exact complex-amplitude state-vector engine.
 *
 * Basis index bit j is qubit j, so qubit 0 is the least-significant bit and
 * the highest-numbered qubit is the most significant (Qiskit ordering). Gate
 * functions take the state by value and return it, so
 * `s = apply_hadamard(std::move(s), q)` runs in place without copying.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqss/bits.hpp"
#include "seqss/errors.hpp"
#include "seqss/rng.hpp"

namespace seqss {

using Amplitude = std::complex<double>;

/// Largest register any single StateVector may hold (2^26 amplitudes, 1 GiB).
inline constexpr std::size_t kMaxQubits = 26;

/// Absolute tolerance on amplitudes and norms.
inline constexpr double kTolerance = 1e-12;

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

struct QubitIndex {
    std::size_t value = 0;

    constexpr QubitIndex() = default;
    constexpr explicit QubitIndex(std::size_t v) : value(v) {}

    constexpr std::uint64_t mask() const noexcept { return std::uint64_t{1} << value; }

    friend constexpr auto operator<=>(QubitIndex, QubitIndex) = default;
};

class StateVector {
  public:
    /// |0...0> over `num_qubits` qubits.
    explicit StateVector(std::size_t num_qubits) : num_qubits_(checked_size(num_qubits)) {
        amps_.assign(std::size_t{1} << num_qubits_, Amplitude{0.0, 0.0});
        amps_[0] = 1.0;
    }

    /// Adopts `amps`; length must be 2^num_qubits and the norm 1 within kTolerance.
    StateVector(std::size_t num_qubits, std::vector<Amplitude> amps)
        : num_qubits_(checked_size(num_qubits)), amps_(std::move(amps)) {
        if (amps_.size() != (std::size_t{1} << num_qubits_)) {
            throw SizeError("amplitude array has " + std::to_string(amps_.size()) +
                            " entries, expected 2^" + std::to_string(num_qubits_));
        }
        for (const auto &a : amps_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                throw ArgumentError("amplitudes must be finite");
            }
        }
        if (std::abs(norm_squared() - 1.0) > kTolerance) {
            throw ArgumentError("state is not normalized");
        }
    }

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t size() const noexcept { return amps_.size(); }

    std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    std::span<Amplitude> amplitudes() noexcept { return amps_; }

    const Amplitude &operator[](std::size_t index) const { return amps_.at(index); }

    double norm_squared() const noexcept {
        double total = 0.0;
        for (const auto &a : amps_) {
            total += std::norm(a);
        }
        return total;
    }

    void check_qubit(QubitIndex q) const {
        if (q.value >= num_qubits_) {
            throw ArgumentError("qubit index " + std::to_string(q.value) + " out of range for " +
                                std::to_string(num_qubits_) + "-qubit state");
        }
    }

    static std::size_t checked_size(std::size_t k) {
        if (k < 1 || k > kMaxQubits) {
            throw SizeError("qubit count " + std::to_string(k) + " outside [1, " +
                            std::to_string(kMaxQubits) + "]");
        }
        return k;
    }

  private:
    std::size_t num_qubits_;
    std::vector<Amplitude> amps_;
};

struct MeasurementRecord {
    /// Bit i is the outcome on the i-th requested qubit.
    BitString bits;
    /// Remaining qubits in ascending original order; empty when all were measured.
    std::optional<StateVector> collapsed;
};

namespace detail {

inline void require_distinct(const StateVector &state, std::span<const QubitIndex> qubits) {
    std::vector<std::size_t> seen;
    seen.reserve(qubits.size());
    for (auto q : qubits) {
        state.check_qubit(q);
        seen.push_back(q.value);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw ArgumentError("duplicate qubit index");
    }
}

/// Sets bit `pos` of `index` to `value`, shifting higher bits up by one.
constexpr std::uint64_t insert_bit(std::uint64_t index, std::size_t pos, bool value) noexcept {
    const std::uint64_t low = index & ((std::uint64_t{1} << pos) - 1);
    const std::uint64_t high = (index >> pos) << (pos + 1);
    return high | (static_cast<std::uint64_t>(value) << pos) | low;
}

} // namespace detail

inline StateVector zero_state(std::size_t k) { return StateVector(k); }

inline StateVector basis_state(std::size_t k, std::uint64_t index) {
    StateVector s(k);
    if (index >= s.size()) {
        throw ArgumentError("basis index out of range");
    }
    auto amps = s.amplitudes();
    amps[0] = 0.0;
    amps[index] = 1.0;
    return s;
}

inline StateVector apply_hadamard(StateVector state, QubitIndex q) {
    state.check_qubit(q);
    auto amps = state.amplitudes();
    const std::uint64_t bit = q.mask();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) != 0) {
            continue;
        }
        const Amplitude a0 = amps[i];
        const Amplitude a1 = amps[i | bit];
        amps[i] = (a0 + a1) * kInvSqrt2;
        amps[i | bit] = (a0 - a1) * kInvSqrt2;
    }
    return state;
}

inline StateVector apply_cnot(StateVector state, QubitIndex control, QubitIndex target) {
    state.check_qubit(control);
    state.check_qubit(target);
    if (control == target) {
        throw ArgumentError("CNOT control and target must differ");
    }
    auto amps = state.amplitudes();
    const std::uint64_t c = control.mask();
    const std::uint64_t t = target.mask();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & c) != 0 && (i & t) == 0) {
            std::swap(amps[i], amps[i | t]);
        }
    }
    return state;
}

/// Pauli-X; used only to load basis values.
inline StateVector apply_x(StateVector state, QubitIndex q) {
    state.check_qubit(q);
    auto amps = state.amplitudes();
    const std::uint64_t bit = q.mask();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & bit) == 0) {
            std::swap(amps[i], amps[i | bit]);
        }
    }
    return state;
}

inline StateVector apply_hadamard_all(StateVector state, std::span<const QubitIndex> qubits) {
    detail::require_distinct(state, qubits);
    for (auto q : qubits) {
        state = apply_hadamard(std::move(state), q);
    }
    return state;
}

/// Entangles `qubits` (already |0...0>) into a GHZ state: H on the first,
/// then a CNOT chain along the list.
inline StateVector entangle_ghz(StateVector state, std::span<const QubitIndex> qubits) {
    detail::require_distinct(state, qubits);
    if (qubits.empty()) {
        throw ArgumentError("GHZ preparation needs at least one qubit");
    }
    state = apply_hadamard(std::move(state), qubits[0]);
    for (std::size_t i = 1; i < qubits.size(); ++i) {
        state = apply_cnot(std::move(state), qubits[i - 1], qubits[i]);
    }
    return state;
}

/// (|0...0> + |1...1>)/sqrt(2) over n qubits.
inline StateVector prepare_ghz(std::size_t n) {
    if (n == 0) {
        throw ArgumentError("GHZ preparation needs at least one qubit");
    }
    std::vector<QubitIndex> chain;
    for (std::size_t q = 0; q < n; ++q) {
        chain.emplace_back(q);
    }
    return entangle_ghz(zero_state(n), chain);
}

/// Basis mask whose bit input_qubits[j] is set iff s bit j is set.
inline std::uint64_t secret_mask(std::span<const QubitIndex> input_qubits, const BitString &s) {
    if (input_qubits.size() != s.size()) {
        throw LengthError("secret has " + std::to_string(s.size()) + " bits but " +
                          std::to_string(input_qubits.size()) + " input qubits were given");
    }
    std::uint64_t mask = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (s.test(j)) {
            mask |= input_qubits[j].mask();
        }
    }
    return mask;
}

/**
 * Bit-flip oracle |y, x> -> |y XOR (s.x mod 2), x>, with x_j read from
 * input_qubits[j] and y from output_qubit.
 *
 * With the output qubit in |->, this acts on the input register as the
 * diagonal phase (-1)^(s.x).
 */
inline StateVector apply_phase_oracle(StateVector state, std::span<const QubitIndex> input_qubits,
                                      QubitIndex output_qubit, const BitString &s) {
    std::vector<QubitIndex> all(input_qubits.begin(), input_qubits.end());
    all.push_back(output_qubit);
    detail::require_distinct(state, all);
    const std::uint64_t mask = secret_mask(input_qubits, s);
    const std::uint64_t out = output_qubit.mask();
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & out) == 0 && (std::popcount(i & mask) & 1) != 0) {
            std::swap(amps[i], amps[i | out]);
        }
    }
    return state;
}

/// Diagonal (-1)^(s.x) on the input register: the kicked-back form of the
/// oracle with its output qubit factored out.
inline StateVector apply_parity_phase(StateVector state, std::span<const QubitIndex> input_qubits,
                                      const BitString &s) {
    detail::require_distinct(state, input_qubits);
    const std::uint64_t mask = secret_mask(input_qubits, s);
    auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((std::popcount(i & mask) & 1) != 0) {
            amps[i] = -amps[i];
        }
    }
    return state;
}

/**
 * Born-rule measurement of `qubits` in the computational basis.
 *
 * A full basis index is drawn from |amp|^2 with a single uniform variate, and
 * the requested bits are read off it; this has the Born marginal on the
 * measured qubits without materializing the marginal table.
 */
inline MeasurementRecord measure(const StateVector &state, std::span<const QubitIndex> qubits,
                                 Rng &rng) {
    detail::require_distinct(state, qubits);
    const auto amps = state.amplitudes();

    const double total = state.norm_squared();
    const double target = rng.uniform() * total;
    double cumulative = 0.0;
    std::uint64_t chosen = amps.size();
    std::uint64_t last_nonzero = amps.size();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        // Amplitudes below kTolerance are cancellation residue, not support.
        if (p <= kTolerance * kTolerance) {
            continue;
        }
        last_nonzero = i;
        cumulative += p;
        if (target < cumulative) {
            chosen = i;
            break;
        }
    }
    if (chosen == amps.size()) {
        chosen = last_nonzero;
    }
    if (chosen == amps.size()) {
        throw InternalError("measurement on a zero state");
    }

    MeasurementRecord record{BitString(qubits.size()), std::nullopt};
    std::uint64_t measured_mask = 0;
    std::uint64_t outcome_pattern = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        const bool b = (chosen & qubits[k].mask()) != 0;
        record.bits.set(k, b);
        measured_mask |= qubits[k].mask();
        if (b) {
            outcome_pattern |= qubits[k].mask();
        }
    }

    const std::size_t remaining = state.num_qubits() - qubits.size();
    if (remaining == 0) {
        return record;
    }

    std::vector<std::size_t> kept;
    for (std::size_t q = 0; q < state.num_qubits(); ++q) {
        if ((measured_mask >> q & 1U) == 0) {
            kept.push_back(q);
        }
    }
    std::vector<Amplitude> sub(std::size_t{1} << remaining);
    double branch = 0.0;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & measured_mask) != outcome_pattern) {
            continue;
        }
        std::uint64_t j = 0;
        for (std::size_t r = 0; r < kept.size(); ++r) {
            j |= ((i >> kept[r]) & 1U) << r;
        }
        sub[j] = amps[i];
        branch += std::norm(amps[i]);
    }
    if (branch <= 0.0) {
        throw InternalError("measured branch has zero probability");
    }
    const double scale = 1.0 / std::sqrt(branch);
    for (auto &a : sub) {
        a *= scale;
    }
    record.collapsed.emplace(remaining, std::move(sub));
    return record;
}

/// state (x) |value>, with the new qubit placed at index `position` and
/// higher qubits shifted up by one.
inline StateVector insert_qubit(const StateVector &state, QubitIndex position, bool value) {
    if (position.value > state.num_qubits()) {
        throw ArgumentError("insert position out of range");
    }
    const std::size_t k = StateVector::checked_size(state.num_qubits() + 1);
    std::vector<Amplitude> out(std::size_t{1} << k);
    const auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        out[detail::insert_bit(i, position.value, value)] = amps[i];
    }
    return StateVector(k, std::move(out));
}

/// Tensor product `high (x) low`; `low` occupies the least-significant qubits.
inline StateVector tensor(const StateVector &high, const StateVector &low) {
    const std::size_t k = StateVector::checked_size(high.num_qubits() + low.num_qubits());
    std::vector<Amplitude> out(std::size_t{1} << k);
    const auto h = high.amplitudes();
    const auto l = low.amplitudes();
    for (std::uint64_t i = 0; i < h.size(); ++i) {
        for (std::uint64_t j = 0; j < l.size(); ++j) {
            out[(i << low.num_qubits()) | j] = h[i] * l[j];
        }
    }
    return StateVector(k, std::move(out));
}

inline bool approx_equal(const StateVector &a, const StateVector &b, double tol = kTolerance) {
    if (a.num_qubits() != b.num_qubits()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > tol) {
            return false;
        }
    }
    return true;
}

/// True when a = e^{i phi} b for some phi.
inline bool equal_up_to_global_phase(const StateVector &a, const StateVector &b,
                                     double tol = kTolerance) {
    if (a.num_qubits() != b.num_qubits()) {
        return false;
    }
    Amplitude overlap{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        overlap += std::conj(b[i]) * a[i];
    }
    if (std::abs(overlap) < 0.5) {
        return false;
    }
    const Amplitude phase = overlap / std::abs(overlap);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - phase * b[i]) > tol) {
            return false;
        }
    }
    return true;
}

/// (|0> - |1>)/sqrt(2).
inline StateVector minus_state() { return apply_hadamard(basis_state(1, 1), QubitIndex{0}); }

} // namespace seqss
