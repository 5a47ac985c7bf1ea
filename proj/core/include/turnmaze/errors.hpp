// Copyright 2026 The turnmaze Authors
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

namespace turnmaze {

// Conditions that are part of a result (invalid moves, unparseable answers,
// consistency violations) are returned as data. Exceptions are reserved for
// broken preconditions and for operations that cannot produce a result.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class UnsolvableError : public Error {
 public:
  using Error::Error;
};

class GuardExceededError : public Error {
 public:
  using Error::Error;
};

class OffOptimalPrefixError : public Error {
 public:
  using Error::Error;
};

class BudgetExhaustedError : public Error {
 public:
  using Error::Error;
};

class QuotaInfeasibleError : public Error {
 public:
  using Error::Error;
};

class UnsupportedStyleError : public Error {
 public:
  using Error::Error;
};

class InvalidTrajectoryError : public Error {
 public:
  using Error::Error;
};

class InfeasibleKindError : public Error {
 public:
  using Error::Error;
};

class EndpointUnreachableError : public Error {
 public:
  using Error::Error;
};

class QuotaExhaustedError : public Error {
 public:
  using Error::Error;
};

class UnsupportedCapabilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace turnmaze
