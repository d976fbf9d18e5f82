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

#include <string>
#include <vector>

#include "bottleneck/linalg.hpp"

namespace bottleneck {

/// Named tensor factors of a finite-dimensional Hilbert space. Factor order
/// is significant: index 0 is the most significant digit of a basis index.
class Subsystems {
 public:
  Subsystems() = default;
  Subsystems(std::vector<int> dims, std::vector<std::string> labels);

  const std::vector<int>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t count() const { return dims_.size(); }
  int total() const;

  // Position of `label`; throws ValidationError if absent.
  std::size_t index_of(const std::string& label) const;
  bool contains(const std::string& label) const;
  int dim_of(const std::string& label) const { return dims_[index_of(label)]; }

  Subsystems select(const std::vector<std::size_t>& positions) const;

 private:
  std::vector<int> dims_;
  std::vector<std::string> labels_;
};

/// Numerical thresholds shared by every validity check.
struct Tolerance {
  static constexpr double kHermitian = 1e-10;
  static constexpr double kTrace = 1e-10;
  static constexpr double kNegativeEigenvalue = 1e-10;
  static constexpr double kPureNorm = 1e-12;
};

/// Complex PSD unit-trace matrix over named subsystems. Immutable after
/// construction; every constructor validates.
class DensityOperator {
 public:
  DensityOperator(CMatrix matrix, std::vector<int> dims, std::vector<std::string> labels);
  DensityOperator(CMatrix matrix, Subsystems systems);

  const CMatrix& matrix() const { return matrix_; }
  const Subsystems& systems() const { return systems_; }
  const std::vector<int>& dims() const { return systems_.dims(); }
  const std::vector<std::string>& labels() const { return systems_.labels(); }
  int dim() const { return static_cast<int>(matrix_.rows()); }

  /// Same matrix with new names; dims unchanged.
  DensityOperator relabeled(std::vector<std::string> labels) const;

 private:
  CMatrix matrix_;
  Subsystems systems_;
};

/// Unit vector over named subsystems.
class PureState {
 public:
  PureState(CVector vector, std::vector<int> dims, std::vector<std::string> labels);
  PureState(CVector vector, Subsystems systems);

  const CVector& vector() const { return vector_; }
  const Subsystems& systems() const { return systems_; }
  const std::vector<int>& dims() const { return systems_.dims(); }
  const std::vector<std::string>& labels() const { return systems_.labels(); }

  DensityOperator density() const;
  PureState relabeled(std::vector<std::string> labels) const;

 private:
  CVector vector_;
  Subsystems systems_;
};

struct EntropyReport {
  double value = 0.0;         // bits
  double clipped_mass = 0.0;  // negative eigenvalue mass set to zero
};

using Names = std::vector<std::string>;

EntropyReport von_neumann_entropy(const DensityOperator& rho);
/// Entropy of the spectrum of an arbitrary Hermitian PSD matrix (no trace check).
double spectral_entropy(const CMatrix& hermitian);

DensityOperator partial_trace(const DensityOperator& state, const Names& keep);
DensityOperator partial_trace(const PureState& state, const Names& keep);

enum class LabelPolicy {
  kStrict,  // colliding labels are an error
  kSuffix,  // on collision, append "1" to every label of a and "2" to b
};

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b,
                               LabelPolicy policy = LabelPolicy::kStrict);
PureState tensor_product(const PureState& a, const PureState& b,
                         LabelPolicy policy = LabelPolicy::kStrict);

/// Reorders tensor factors; `order` lists every label exactly once.
DensityOperator permute_subsystems(const DensityOperator& state, const Names& order);
PureState permute_subsystems(const PureState& state, const Names& order);

/// Purification sum_i sqrt(lambda_i) |i>_ref |e_i> over the eigenpairs with
/// lambda_i > kPurifyCutoff, eigenvalues descending, each eigenvector
/// rotated so its first nonzero component is real positive. The reference
/// factor is prepended and has dimension equal to the numerical rank.
inline constexpr double kPurifyCutoff = 1e-14;
PureState purify(const DensityOperator& rho, const std::string& ref_label);

/// S of the reduced state on `names` (0 for the empty set).
double entropy_of(const DensityOperator& state, const Names& names);
double entropy_of(const PureState& state, const Names& names);

struct InformationReport {
  double value = 0.0;  // clamped to >= 0
  double raw = 0.0;    // before clamping
};

InformationReport mutual_information_report(const DensityOperator& state, const Names& a,
                                            const Names& b);
double mutual_information(const DensityOperator& state, const Names& a, const Names& b);
double mutual_information(const PureState& state, const Names& a, const Names& b);

/// I(A;C|B) = S(AB) + S(BC) - S(B) - S(ABC).
double conditional_mutual_information(const DensityOperator& state, const Names& a,
                                      const Names& c, const Names& b);
double conditional_mutual_information(const PureState& state, const Names& a, const Names& c,
                                      const Names& b);

class JointDistribution;  // classical_types.hpp

/// sum_{x,y} p(x,y) |x><x| (x) |y><y| with labels `x_label`, `y_label`.
DensityOperator embed_classical_joint(const JointDistribution& p, const std::string& x_label = "X",
                                      const std::string& y_label = "Y");

/// Throws ValidationError naming the first violated invariant.
void validate_density_matrix(const CMatrix& m, const std::vector<int>& dims);

}  // namespace bottleneck
