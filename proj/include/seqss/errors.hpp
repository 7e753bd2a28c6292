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

#include <stdexcept>
#include <string>

namespace seqss {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Register size outside [1, kMaxQubits].
class SizeError : public Error {
  public:
    using Error::Error;
};

/// Malformed argument: bad index, duplicate qubit, bad bit-string text.
class ArgumentError : public Error {
  public:
    using Error::Error;
};

/// Bit-string length disagreement between operands.
class LengthError : public ArgumentError {
  public:
    using ArgumentError::ArgumentError;
};

/// Fewer than three players.
class ProtocolSizeError : public Error {
  public:
    using Error::Error;
};

/// Joint simulation would exceed the qubit ceiling.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// Operation not valid in the current lifecycle state (e.g. second broadcast).
class StateError : public Error {
  public:
    using Error::Error;
};

/// Operation attempted by or aimed at the wrong role.
class RoleError : public Error {
  public:
    using Error::Error;
};

/// Agents tried to reconstruct before the spymaster released her share.
class MissingShareError : public Error {
  public:
    using Error::Error;
};

/// Malformed transcript text.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// Engine invariant violated; indicates a simulator bug.
class InternalError : public Error {
  public:
    using Error::Error;
};

} // namespace seqss
