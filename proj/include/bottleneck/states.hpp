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

#include <cstdint>
#include <vector>

#include "bottleneck/classical_types.hpp"
#include "bottleneck/quantum_core.hpp"

namespace bottleneck {

/// p |v><v| + (1 - p) |11><11| with |v> = (|00> + |11>)/sqrt 2, factors X, Y.
DensityOperator rho3(double p);

/// Uniform input through a binary symmetric channel, embedded as a diagonal state.
DensityOperator bsc_state(double delta);

/// X = Y uniform bit.
JointDistribution correlated_bits();

/// Haar-random pure state on two qubits as a density operator (X, Y).
DensityOperator random_pure_two_qubit(std::uint64_t seed);

/// Joint distribution with i.i.d. exponential weights (uniform on the simplex).
JointDistribution random_joint(std::uint64_t seed, int size_x, int size_y);

/// Normalized G G^dagger for a complex Gaussian G of the given total dimension.
DensityOperator random_density(std::uint64_t seed, const std::vector<int>& dims,
                               const std::vector<std::string>& labels);

/// Haar-random pure state.
PureState random_pure(std::uint64_t seed, const std::vector<int>& dims,
                      const std::vector<std::string>& labels);

/// rho_X (x) rho_Y from independent random single-factor states.
DensityOperator random_product_state(std::uint64_t seed, int d_x, int d_y);

/// p(x, y) of a state diagonal in the product basis; ValidationError otherwise.
JointDistribution diagonal_joint(const DensityOperator& rho_xy);

}  // namespace bottleneck
