// Copyright 2026 The mxl Authors
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

namespace mxl {

// Malformed arguments: non-Hermitian where Hermitian is required, dimension
// mismatches, out-of-range probabilities, bad config values.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the domain of a function, e.g. entropy at trace >= 1.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Matrix function needs a strictly positive spectrum.
class SingularMatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Non-finite values where finite values are required.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

}  // namespace mxl
