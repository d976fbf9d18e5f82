// Copyright 2026 The Bottleneck Lab Authors
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

namespace bottleneck {

// Input or state that violates a documented invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A constraint level that no channel can reach.
class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Problem size beyond what the dense desk-scale routines accept.
class ScaleError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace bottleneck
