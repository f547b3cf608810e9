// Copyright 2026 The DCRM Authors
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

#ifndef DCRM_ERROR_HPP
#define DCRM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dcrm {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter violates a type invariant (negative rate, bad horizon, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An argument lies outside a moment generating function's convergence
// region, or an order/time outside the supported range.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. The message carries the line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dcrm

#endif  // DCRM_ERROR_HPP
