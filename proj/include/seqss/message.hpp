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

#include <cstddef>
#include <string>
#include <string_view>

#include "seqss/bits.hpp"
#include "seqss/errors.hpp"

namespace seqss {

/// Text bytes as a bit-string: 8 bits per byte, first byte and each byte's
/// most-significant bit first in the text form.
inline BitString message_to_bits(std::string_view text) {
    if (text.empty()) {
        throw ArgumentError("message must not be empty");
    }
    const std::size_t total = text.size() * 8;
    BitString out(total);
    for (std::size_t b = 0; b < text.size(); ++b) {
        const auto byte = static_cast<unsigned char>(text[b]);
        const std::size_t base = (text.size() - 1 - b) * 8;
        for (std::size_t k = 0; k < 8; ++k) {
            out.set(base + k, ((byte >> k) & 1U) != 0);
        }
    }
    return out;
}

inline std::string bits_to_message(const BitString &bits) {
    if (bits.size() % 8 != 0) {
        throw LengthError("bit-string length " + std::to_string(bits.size()) +
                          " is not a whole number of bytes");
    }
    const std::size_t len = bits.size() / 8;
    std::string out(len, '\0');
    for (std::size_t b = 0; b < len; ++b) {
        const std::size_t base = (len - 1 - b) * 8;
        unsigned v = 0;
        for (std::size_t k = 0; k < 8; ++k) {
            v |= static_cast<unsigned>(bits.test(base + k)) << k;
        }
        out[b] = static_cast<char>(v);
    }
    return out;
}

} // namespace seqss
