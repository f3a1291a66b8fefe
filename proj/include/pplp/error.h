// Copyright 2026 The pplp Authors.
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

#ifndef PPLP_ERROR_H_
#define PPLP_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pplp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Plaintext outside [0, n).
class RangeError : public Error {
 public:
  using Error::Error;
};

// Encryption nonce outside (0, n) or sharing a factor with n.
class NonceError : public Error {
 public:
  using Error::Error;
};

// Combining or decrypting material that belongs to different key pairs.
class KeyMismatchError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// A value does not fit the signed fixed-point window of the plaintext group.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// A rational whose denominator does not divide the scale.
class RepresentationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Runtime failures: deadlock, kind mismatch, undelivered messages.
class SessionError : public Error {
 public:
  using Error::Error;
};

}  // namespace pplp

#endif  // PPLP_ERROR_H_
