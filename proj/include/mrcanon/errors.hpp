// Copyright 2026 The mrcanon Authors
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

#ifndef MRCANON_ERRORS_HPP_
#define MRCANON_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mrcanon {

// Argument outside the valid range (vertex out of [n], mismatched degrees).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Operation called in a state its contract excludes, e.g. individualizing a
// vertex that already sits in a singleton cell.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A supposed automorphism failed verification.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Input exceeds a hard size cap (the brute-force oracle).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mrcanon

#endif  // MRCANON_ERRORS_HPP_
