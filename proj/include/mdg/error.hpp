// Copyright 2026 The iRouting Authors
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

#ifndef MDG_ERROR_HPP_
#define MDG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mdg {

// Base of every error raised by the library. The CLI maps subclasses onto
// process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or security-profile data (exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Invalid numeric argument to an operation (exit code 2).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Inconsistent vector/matrix dimensions or an invalid distribution.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// No route between cluster-head and requestor under the discovery bounds
// (exit code 3).
class NoRouteError : public Error {
 public:
  using Error::Error;
};

// Topology generation gave up (exit code 3).
class GenerationError : public Error {
 public:
  using Error::Error;
};

// An LP was infeasible or unbounded. Game LPs never are, so this signals a
// bug upstream.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A theorem or oracle cross-check failed (exit code 4).
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace mdg

#endif  // MDG_ERROR_HPP_
