// Copyright 2026 The securebio Authors.
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

#ifndef SECUREBIO_ERROR_H_
#define SECUREBIO_ERROR_H_

#include <stdexcept>
#include <string>

namespace securebio {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand lengths disagree (probe vs. code length, key vs. vector, ...).
class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// A parameter violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input (bit strings, JSON documents, matrices).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// The requested computation is not available for this configuration.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace securebio

#endif  // SECUREBIO_ERROR_H_
