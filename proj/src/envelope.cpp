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

#include "bottleneck/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bottleneck {
namespace {

double cross(double ox, double oy, double ax, double ay, double bx, double by) {
  return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
}

}  // namespace

TradeoffEnvelope::TradeoffEnvelope(std::span<const TradeoffPoint> points, Sense sense,
                                   Bound bound)
    : sense_sign_(sense == Sense::kMinimize ? 1.0 : -1.0),
      bound_sign_(bound == Bound::kAtLeast ? 1.0 : -1.0) {
  // Canonical form: minimize v subject to u >= s.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (std::isfinite(points[i].constraint) && std::isfinite(points[i].objective)) {
      order.push_back(i);
    }
  }
  auto u = [&](std::size_t i) { return bound_sign_ * points[i].constraint; };
  auto v = [&](std::size_t i) { return sense_sign_ * points[i].objective; };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return u(a) < u(b) || (u(a) == u(b) && v(a) < v(b));
  });

  std::vector<std::size_t> hull;  // lower hull, Andrew's monotone chain
  for (std::size_t i : order) {
    if (!hull.empty() && u(hull.back()) == u(i)) continue;  // same level, worse value
    while (hull.size() >= 2 &&
           cross(u(hull[hull.size() - 2]), v(hull[hull.size() - 2]), u(hull.back()),
                 v(hull.back()), u(i), v(i)) <= 0.0) {
      hull.pop_back();
    }
    hull.push_back(i);
  }
  if (hull.empty()) return;

  // Keep the nondecreasing branch starting at the rightmost minimum.
  std::size_t start = 0;
  for (std::size_t k = 1; k < hull.size(); ++k) {
    if (v(hull[k]) <= v(hull[start])) start = k;
  }
  for (std::size_t k = start; k < hull.size(); ++k) {
    vertices_.push_back(hull[k]);
    level_.push_back(u(hull[k]));
    value_.push_back(v(hull[k]));
  }
}

double TradeoffEnvelope::reach() const {
  return level_.empty() ? 0.0 : bound_sign_ * level_.back();
}

std::optional<EnvelopeValue> TradeoffEnvelope::at(double level, double slack) const {
  if (vertices_.empty()) return std::nullopt;
  const double s = bound_sign_ * level;
  EnvelopeValue out;
  auto finish = [&](double canonical_value, double canonical_level) {
    out.value = sense_sign_ * canonical_value;
    out.achieved = bound_sign_ * canonical_level;
    return out;
  };
  if (s <= level_.front()) {
    out.first = out.second = vertices_.front();
    return finish(value_.front(), level_.front());
  }
  if (s >= level_.back()) {
    if (s > level_.back() + slack) return std::nullopt;
    out.first = out.second = vertices_.back();
    return finish(value_.back(), level_.back());
  }
  const auto it = std::upper_bound(level_.begin(), level_.end(), s);
  const std::size_t hi = static_cast<std::size_t>(it - level_.begin());
  const std::size_t lo = hi - 1;
  const double w = (level_[hi] - s) / (level_[hi] - level_[lo]);
  out.first = vertices_[lo];
  out.second = vertices_[hi];
  out.weight = w;
  return finish(w * value_[lo] + (1.0 - w) * value_[hi], s);
}

}  // namespace bottleneck
