// Copyright 2026 The th-rebase Authors
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

namespace threbase {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates a documented precondition (non-unitary matrix, bad arity, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Operands of mismatched dimension or qubit count.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (qubit count, net size) would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed circuit or net-cache document.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace threbase
