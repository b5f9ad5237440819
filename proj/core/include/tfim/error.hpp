// Copyright 2026 The tfim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace tfim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied parameters was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Dimension mismatch between operands (site counts, vector lengths).
class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A dense materialization would exceed the configured site cap.
class SizeLimitExceeded : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A numerical routine failed or produced a result violating its contract.
class ComputationError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] void throw_invalid(const std::string& what);
[[noreturn]] void throw_computation(const std::string& what);

}  // namespace tfim
