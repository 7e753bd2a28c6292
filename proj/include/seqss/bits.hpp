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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqss/errors.hpp"
#include "seqss/rng.hpp"

namespace seqss {

/**
 * Fixed-length bit-string packed into 64-bit words.
 *
 * Position 0 is the least-significant bit. The text form lists the highest
 * position first, so "110" has bits 2 and 1 set. Unused high bits of the
 * last word are kept at zero.
 */
class BitString {
  public:
    BitString() = default;

    explicit BitString(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    /// Parses an MSB-first string of '0'/'1'.
    static BitString parse(std::string_view text) {
        BitString out(text.size());
        for (std::size_t k = 0; k < text.size(); ++k) {
            const char c = text[k];
            if (c != '0' && c != '1') {
                throw ArgumentError("bit-string may only contain '0' and '1', got '" +
                                    std::string(text) + "'");
            }
            out.set(text.size() - 1 - k, c == '1');
        }
        return out;
    }

    /// Low `size` bits of `value`; size must be at most 64.
    static BitString from_uint(std::uint64_t value, std::size_t size) {
        if (size > 64) {
            throw ArgumentError("from_uint supports at most 64 bits");
        }
        BitString out(size);
        if (size > 0) {
            out.words_[0] = size == 64 ? value : value & ((std::uint64_t{1} << size) - 1);
        }
        return out;
    }

    static BitString random(std::size_t size, Rng &rng) {
        BitString out(size);
        for (auto &w : out.words_) {
            w = rng.next();
        }
        out.trim();
        return out;
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool test(std::size_t pos) const {
        check_pos(pos);
        return ((words_[pos / 64] >> (pos % 64)) & 1U) != 0;
    }

    BitString &set(std::size_t pos, bool value = true) {
        check_pos(pos);
        const std::uint64_t mask = std::uint64_t{1} << (pos % 64);
        if (value) {
            words_[pos / 64] |= mask;
        } else {
            words_[pos / 64] &= ~mask;
        }
        return *this;
    }

    BitString &flip(std::size_t pos) {
        check_pos(pos);
        words_[pos / 64] ^= std::uint64_t{1} << (pos % 64);
        return *this;
    }

    std::size_t popcount() const noexcept {
        std::size_t total = 0;
        for (auto w : words_) {
            total += static_cast<std::size_t>(std::popcount(w));
        }
        return total;
    }

    bool parity() const noexcept { return (popcount() & 1U) != 0; }

    bool is_zero() const noexcept {
        for (auto w : words_) {
            if (w != 0) {
                return false;
            }
        }
        return true;
    }

    /// Inner product modulo 2.
    bool dot(const BitString &other) const {
        require_same_size(other, "dot");
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            acc ^= words_[i] & other.words_[i];
        }
        return (std::popcount(acc) & 1) != 0;
    }

    BitString &operator^=(const BitString &other) {
        require_same_size(other, "xor");
        for (std::size_t i = 0; i < words_.size(); ++i) {
            words_[i] ^= other.words_[i];
        }
        return *this;
    }

    friend BitString operator^(BitString lhs, const BitString &rhs) {
        lhs ^= rhs;
        return lhs;
    }

    BitString operator~() const {
        BitString out = *this;
        for (auto &w : out.words_) {
            w = ~w;
        }
        out.trim();
        return out;
    }

    /// Value of a string of at most 64 bits.
    std::uint64_t to_uint() const {
        if (size_ > 64) {
            throw ArgumentError("to_uint supports at most 64 bits");
        }
        return words_.empty() ? 0 : words_[0];
    }

    std::string to_string() const {
        std::string out(size_, '0');
        for (std::size_t pos = 0; pos < size_; ++pos) {
            if (test(pos)) {
                out[size_ - 1 - pos] = '1';
            }
        }
        return out;
    }

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    friend bool operator==(const BitString &, const BitString &) = default;

  private:
    void check_pos(std::size_t pos) const {
        if (pos >= size_) {
            throw ArgumentError("bit position " + std::to_string(pos) + " out of range for length " +
                                std::to_string(size_));
        }
    }

    void require_same_size(const BitString &other, const char *what) const {
        if (size_ != other.size_) {
            throw LengthError(std::string(what) + ": length mismatch (" + std::to_string(size_) +
                              " vs " + std::to_string(other.size_) + ")");
        }
    }

    void trim() noexcept {
        if (size_ % 64 != 0 && !words_.empty()) {
            words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
        }
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace seqss
