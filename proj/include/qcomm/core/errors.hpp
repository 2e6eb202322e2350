// Copyright 2026 The qcomm Authors.
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

namespace qcomm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A length or dimension is not acceptable (e.g. not a power of two).
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A scalar argument lies outside the domain of the operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// An input object violates its invariants (unnormalized pmf, bad POVM, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// An enumeration would exceed the supported size.
class CapacityError : public Error {
  public:
    using Error::Error;
};

class EncodingError : public Error {
  public:
    using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
  public:
    using Error::Error;
};

/// A command line or configuration is malformed (unknown command or key).
class UsageError : public Error {
  public:
    using Error::Error;
};

namespace detail {
template <class E> inline void require(bool cond, const std::string &msg) {
    if (!cond) {
        throw E(msg);
    }
}
} // namespace detail

} // namespace qcomm
