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

#include <vector>

#include "bottleneck/linalg.hpp"

namespace bottleneck {

/// Classical joint distribution p(x,y) stored as an |X| x |Y| table.
class JointDistribution {
 public:
  explicit JointDistribution(RMatrix table);

  const RMatrix& table() const { return table_; }
  int size_x() const { return static_cast<int>(table_.rows()); }
  int size_y() const { return static_cast<int>(table_.cols()); }

  RVector marginal_x() const { return table_.rowwise().sum(); }
  RVector marginal_y() const { return table_.colwise().sum().transpose(); }

  double entropy_x() const;
  double entropy_y() const;
  double mutual_information() const;
  double conditional_entropy_x_given_y() const;

  /// Copy with zero-probability x rows and y columns removed; the dropped
  /// indices are appended to the optional outputs.
  JointDistribution without_null_symbols(std::vector<int>* dropped_x = nullptr,
                                         std::vector<int>* dropped_y = nullptr) const;

  /// p^{(x) n} over the product alphabets, first copy most significant.
  JointDistribution power(int n) const;

 private:
  RMatrix table_;
};

/// Row-stochastic matrix p(w|x), |X| rows by |W| columns.
class ConditionalChannel {
 public:
  explicit ConditionalChannel(RMatrix rows);

  const RMatrix& rows() const { return rows_; }
  int size_x() const { return static_cast<int>(rows_.rows()); }
  int size_w() const { return static_cast<int>(rows_.cols()); }

 private:
  RMatrix rows_;
};

/// I(X;W) and I(Y;W) of the Markov chain W - X - Y in bits.
struct ChannelInformation {
  double compression = 0.0;  // I(X;W)
  double relevance = 0.0;    // I(Y;W)
};

ChannelInformation channel_information(const JointDistribution& p, const RMatrix& w_given_x);
inline ChannelInformation channel_information(const JointDistribution& p,
                                              const ConditionalChannel& c) {
  return channel_information(p, c.rows());
}

}  // namespace bottleneck
