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

#include <optional>
#include <span>
#include <vector>

namespace bottleneck {

enum class Sense { kMinimize, kMaximize };
enum class Bound { kAtLeast, kAtMost };

/// One achieved (constraint, objective) pair, e.g. (I(Y;W), I(YR;W)).
struct TradeoffPoint {
  double constraint = 0.0;
  double objective = 0.0;
};

struct EnvelopeValue {
  double value = 0.0;
  double achieved = 0.0;   // constraint level of the mixed witness
  std::size_t first = 0;   // indices into the input points
  std::size_t second = 0;
  double weight = 1.0;     // on `first`
};

/// Optimal value of "objective subject to constraint bound level" over the
/// convex hull of a finite point set. Hull points are attained by flagged
/// mixtures of two witnesses, so every value is achievable. The result is
/// convex for minimization and concave for maximization, and monotone in the
/// level.
class TradeoffEnvelope {
 public:
  TradeoffEnvelope(std::span<const TradeoffPoint> points, Sense sense, Bound bound);

  /// nullopt when the level lies beyond every point by more than `slack`;
  /// within the slack the extreme vertex is returned.
  std::optional<EnvelopeValue> at(double level, double slack = 0.0) const;

  /// Most demanding constraint level any point reaches.
  double reach() const;
  /// Input indices of the active hull vertices in increasing level order.
  const std::vector<std::size_t>& vertices() const { return vertices_; }

 private:
  double sense_sign_ = 1.0;
  double bound_sign_ = 1.0;
  std::vector<std::size_t> vertices_;
  std::vector<double> level_;  // canonical coordinates of the vertices
  std::vector<double> value_;
};

}  // namespace bottleneck
