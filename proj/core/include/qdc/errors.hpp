// Copyright 2026 The qdc authors.
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

namespace qdc {

/// Base class for all qdc errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad qubit indices, dimension mismatches,
/// malformed flags or grids. Maps to CLI exit code 2.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Parameter outside its mathematical domain (e.g. a probability not in
/// [0,1]). Maps to CLI exit code 2.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Degenerate physics condition: conditioning on a zero-probability
/// branch, or an analysis that is undefined at a degenerate setting.
/// Maps to CLI exit code 3.
class DegenerateError : public Error {
  public:
    using Error::Error;
};

} // namespace qdc
