// Copyright 2026 The segqual Authors. All Rights Reserved.
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

namespace segqual {

// Caller handed us something that violates a documented precondition.
class InvalidInputError : public std::invalid_argument {
 public:
  explicit InvalidInputError(const std::string& what)
      : std::invalid_argument(what) {}
};

// File could not be read/written at the OS level.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// File exists but its content does not obey the expected format.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Training produced a non-finite loss or gradient.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(const std::string& what)
      : std::runtime_error(what) {}
};

// Model file and requested configuration disagree.
class ArtifactMismatchError : public std::runtime_error {
 public:
  explicit ArtifactMismatchError(const std::string& what)
      : std::runtime_error(what) {}
};

// A pixel-probe pair scored equal, so the probed value cannot be decided.
class AmbiguousOracleError : public std::runtime_error {
 public:
  explicit AmbiguousOracleError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace segqual
