// Copyright 2026 The fedxgb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FEDXGB_COMMON_ERRORS_H_
#define FEDXGB_COMMON_ERRORS_H_

#include <stdexcept>
#include <string>

namespace fedxgb {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or unsatisfiable parameters (including key
// generation that fails after its bounded retries).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A value cannot be represented in the plaintext space or fixed-point range.
class EncodingError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// A derived quantity violated a structural invariant (negative histogram
// counts after subtraction, mismatched shapes, ...).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Leaf weight requested for a node with zero curvature and no L2 term.
class DegenerateNodeError : public Error {
 public:
  using Error::Error;
};

// A multi-party protocol round could not complete. `position` is the index of
// the transcript entry at which the failure was detected.
class ProtocolError : public Error {
 public:
  ProtocolError(const std::string& what, long position = -1)
      : Error(position < 0 ? what
                           : what + " (transcript position " +
                                 std::to_string(position) + ")"),
        position_(position) {}

  long position() const { return position_; }

 private:
  long position_;
};

}  // namespace fedxgb

#endif  // FEDXGB_COMMON_ERRORS_H_
