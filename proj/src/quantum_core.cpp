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

#include "bottleneck/quantum_core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "bottleneck/classical_types.hpp"
#include "bottleneck/error.hpp"

namespace bottleneck {
namespace {

std::vector<std::size_t> positions_of(const Subsystems& s, const Names& names) {
  std::vector<std::size_t> pos;
  pos.reserve(names.size());
  for (const auto& n : names) pos.push_back(s.index_of(n));
  std::sort(pos.begin(), pos.end());
  if (std::adjacent_find(pos.begin(), pos.end()) != pos.end()) {
    throw ValidationError("subsystem listed twice");
  }
  return pos;
}

// For a split of the factors into `keep` (in original order) and the rest,
// returns the full basis index of every (kept index, traced index) pair,
// laid out as table[k * traced_dim + t].
struct SplitIndex {
  int kept_dim = 1;
  int traced_dim = 1;
  std::vector<int> table;
};

SplitIndex split_index(const std::vector<int>& dims, const std::vector<std::size_t>& keep) {
  const std::size_t n = dims.size();
  std::vector<bool> kept(n, false);
  for (auto p : keep) kept[p] = true;
  SplitIndex out;
  for (std::size_t i = 0; i < n; ++i) (kept[i] ? out.kept_dim : out.traced_dim) *= dims[i];
  const int total = out.kept_dim * out.traced_dim;
  out.table.assign(static_cast<std::size_t>(total), 0);
  std::vector<int> digit(n, 0);
  for (int f = 0; f < total; ++f) {
    int k = 0, t = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (kept[i]) {
        k = k * dims[i] + digit[i];
      } else {
        t = t * dims[i] + digit[i];
      }
    }
    out.table[static_cast<std::size_t>(k * out.traced_dim + t)] = f;
    for (std::size_t i = n; i-- > 0;) {
      if (++digit[i] < dims[i]) break;
      digit[i] = 0;
    }
  }
  return out;
}

// Basis-index map for reordering factors: result[new_index] = old_index.
std::vector<int> permutation_index(const std::vector<int>& dims,
                                   const std::vector<std::size_t>& order) {
  const std::size_t n = dims.size();
  std::vector<int> stride(n, 1);
  for (std::size_t i = n - 1; i-- > 0;) stride[i] = stride[i + 1] * dims[i + 1];
  int total = 1;
  for (int d : dims) total *= d;
  std::vector<int> out(static_cast<std::size_t>(total));
  std::vector<int> digit(n, 0);  // digits in the new order
  for (int f = 0; f < total; ++f) {
    int old = 0;
    for (std::size_t i = 0; i < n; ++i) old += digit[i] * stride[order[i]];
    out[static_cast<std::size_t>(f)] = old;
    for (std::size_t i = n; i-- > 0;) {
      if (++digit[i] < dims[order[i]]) break;
      digit[i] = 0;
    }
  }
  return out;
}

std::vector<std::size_t> order_positions(const Subsystems& s, const Names& order) {
  if (order.size() != s.count()) throw ValidationError("permutation must list every subsystem");
  std::vector<std::size_t> pos;
  for (const auto& n : order) pos.push_back(s.index_of(n));
  std::vector<std::size_t> sorted = pos;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("permutation lists a subsystem twice");
  }
  return pos;
}

Subsystems merged_systems(const Subsystems& a, const Subsystems& b, LabelPolicy policy) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  std::vector<std::string> la = a.labels();
  std::vector<std::string> lb = b.labels();
  bool collision = false;
  for (const auto& l : lb) collision |= a.contains(l);
  if (collision) {
    if (policy == LabelPolicy::kStrict) {
      throw ValidationError("tensor_product: label collision");
    }
    for (auto& l : la) l += "1";
    for (auto& l : lb) l += "2";
  }
  la.insert(la.end(), lb.begin(), lb.end());
  return Subsystems(std::move(dims), std::move(la));
}

}  // namespace

Subsystems::Subsystems(std::vector<int> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.size() != labels_.size()) {
    throw ValidationError("dims and labels must have equal length");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] < 1) throw ValidationError("subsystem dimensions must be positive");
    if (labels_[i].empty()) throw ValidationError("subsystem labels must be nonempty");
    if (!seen.insert(labels_[i]).second) {
      throw ValidationError("duplicate subsystem label '" + labels_[i] + "'");
    }
  }
}

int Subsystems::total() const {
  return std::accumulate(dims_.begin(), dims_.end(), 1, std::multiplies<>());
}

std::size_t Subsystems::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw ValidationError("unknown subsystem '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

bool Subsystems::contains(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

Subsystems Subsystems::select(const std::vector<std::size_t>& positions) const {
  std::vector<int> d;
  std::vector<std::string> l;
  for (auto p : positions) {
    d.push_back(dims_[p]);
    l.push_back(labels_[p]);
  }
  return Subsystems(std::move(d), std::move(l));
}

void validate_density_matrix(const CMatrix& m, const std::vector<int>& dims) {
  if (m.rows() != m.cols()) throw ValidationError("density operator: matrix not square");
  const int total = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
  if (m.rows() != total) {
    throw ValidationError("density operator: dims product does not match matrix side");
  }
  if (!m.allFinite()) throw ValidationError("density operator: non-finite entry");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > Tolerance::kHermitian) {
    throw ValidationError("density operator: not Hermitian");
  }
  if (std::abs(m.trace().real() - 1.0) > Tolerance::kTrace) {
    throw ValidationError("density operator: trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(m), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -Tolerance::kNegativeEigenvalue) {
    throw ValidationError("density operator: not positive semidefinite");
  }
}

DensityOperator::DensityOperator(CMatrix matrix, std::vector<int> dims,
                                 std::vector<std::string> labels)
    : DensityOperator(std::move(matrix), Subsystems(std::move(dims), std::move(labels))) {}

DensityOperator::DensityOperator(CMatrix matrix, Subsystems systems)
    : matrix_(std::move(matrix)), systems_(std::move(systems)) {
  validate_density_matrix(matrix_, systems_.dims());
}

DensityOperator DensityOperator::relabeled(std::vector<std::string> labels) const {
  return DensityOperator(matrix_, Subsystems(dims(), std::move(labels)));
}

PureState::PureState(CVector vector, std::vector<int> dims, std::vector<std::string> labels)
    : PureState(std::move(vector), Subsystems(std::move(dims), std::move(labels))) {}

PureState::PureState(CVector vector, Subsystems systems)
    : vector_(std::move(vector)), systems_(std::move(systems)) {
  if (vector_.size() != systems_.total()) {
    throw ValidationError("pure state: dims product does not match vector length");
  }
  if (!vector_.allFinite() || std::abs(vector_.norm() - 1.0) > Tolerance::kPureNorm) {
    throw ValidationError("pure state: norm differs from 1");
  }
}

DensityOperator PureState::density() const {
  return DensityOperator(vector_ * vector_.adjoint(), systems_);
}

PureState PureState::relabeled(std::vector<std::string> labels) const {
  return PureState(vector_, Subsystems(dims(), std::move(labels)));
}

double spectral_entropy(const CMatrix& hermitian) {
  if (hermitian.rows() == 1) return entropy_term(hermitian(0, 0).real());
  return shannon_entropy(clipped_spectrum(hermitian));
}

EntropyReport von_neumann_entropy(const DensityOperator& rho) {
  EntropyReport r;
  const auto ev = clipped_spectrum(rho.matrix(), &r.clipped_mass);
  r.value = std::max(0.0, shannon_entropy(ev));
  return r;
}

DensityOperator partial_trace(const DensityOperator& state, const Names& keep) {
  if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");
  const auto pos = positions_of(state.systems(), keep);
  const SplitIndex split = split_index(state.dims(), pos);
  const CMatrix& m = state.matrix();
  CMatrix out = CMatrix::Zero(split.kept_dim, split.kept_dim);
  for (int i = 0; i < split.kept_dim; ++i) {
    for (int j = 0; j < split.kept_dim; ++j) {
      Complex acc(0.0, 0.0);
      for (int t = 0; t < split.traced_dim; ++t) {
        acc += m(split.table[static_cast<std::size_t>(i * split.traced_dim + t)],
                 split.table[static_cast<std::size_t>(j * split.traced_dim + t)]);
      }
      out(i, j) = acc;
    }
  }
  return DensityOperator(std::move(out), state.systems().select(pos));
}

namespace {

CMatrix reduced_matrix(const PureState& state, const std::vector<std::size_t>& pos) {
  const SplitIndex split = split_index(state.dims(), pos);
  CMatrix amp(split.kept_dim, split.traced_dim);
  for (int k = 0; k < split.kept_dim; ++k) {
    for (int t = 0; t < split.traced_dim; ++t) {
      amp(k, t) = state.vector()(split.table[static_cast<std::size_t>(k * split.traced_dim + t)]);
    }
  }
  return amp * amp.adjoint();
}

}  // namespace

DensityOperator partial_trace(const PureState& state, const Names& keep) {
  if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");
  const auto pos = positions_of(state.systems(), keep);
  return DensityOperator(reduced_matrix(state, pos), state.systems().select(pos));
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b,
                               LabelPolicy policy) {
  Subsystems merged = merged_systems(a.systems(), b.systems(), policy);
  const CMatrix& ma = a.matrix();
  const CMatrix& mb = b.matrix();
  CMatrix out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
  for (Eigen::Index i = 0; i < ma.rows(); ++i) {
    for (Eigen::Index j = 0; j < ma.cols(); ++j) {
      out.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
    }
  }
  return DensityOperator(std::move(out), std::move(merged));
}

PureState tensor_product(const PureState& a, const PureState& b, LabelPolicy policy) {
  Subsystems merged = merged_systems(a.systems(), b.systems(), policy);
  const CVector& va = a.vector();
  const CVector& vb = b.vector();
  CVector out(va.size() * vb.size());
  for (Eigen::Index i = 0; i < va.size(); ++i) out.segment(i * vb.size(), vb.size()) = va(i) * vb;
  return PureState(std::move(out), std::move(merged));
}

DensityOperator permute_subsystems(const DensityOperator& state, const Names& order) {
  const auto pos = order_positions(state.systems(), order);
  const auto idx = permutation_index(state.dims(), pos);
  const CMatrix& m = state.matrix();
  CMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out(i, j) = m(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
  }
  return DensityOperator(std::move(out), state.systems().select(pos));
}

PureState permute_subsystems(const PureState& state, const Names& order) {
  const auto pos = order_positions(state.systems(), order);
  const auto idx = permutation_index(state.dims(), pos);
  CVector out(state.vector().size());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out(i) = state.vector()(idx[static_cast<std::size_t>(i)]);
  }
  return PureState(std::move(out), state.systems().select(pos));
}

PureState purify(const DensityOperator& rho, const std::string& ref_label) {
  if (rho.systems().contains(ref_label)) {
    throw ValidationError("purify: reference label '" + ref_label + "' already in use");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(rho.matrix()));
  const auto& ev = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = ev.size(); i-- > 0;) {  // descending
    if (ev(i) > kPurifyCutoff) support.push_back(i);
  }
  const int n = rho.dim();
  const int rank = static_cast<int>(support.size());
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(rank) * n);
  double norm2 = 0.0;
  for (int r = 0; r < rank; ++r) {
    CVector e = vecs.col(support[static_cast<std::size_t>(r)]);
    for (Eigen::Index k = 0; k < e.size(); ++k) {
      if (std::abs(e(k)) > 1e-12) {
        e *= std::conj(e(k)) / std::abs(e(k));
        break;
      }
    }
    const double lambda = ev(support[static_cast<std::size_t>(r)]);
    psi.segment(static_cast<Eigen::Index>(r) * n, n) = std::sqrt(lambda) * e;
    norm2 += lambda;
  }
  psi /= std::sqrt(norm2);  // absorbs the clipped tail of the spectrum
  std::vector<int> dims{rank};
  dims.insert(dims.end(), rho.dims().begin(), rho.dims().end());
  std::vector<std::string> labels{ref_label};
  labels.insert(labels.end(), rho.labels().begin(), rho.labels().end());
  return PureState(std::move(psi), std::move(dims), std::move(labels));
}

double entropy_of(const DensityOperator& state, const Names& names) {
  if (names.empty()) return 0.0;
  return von_neumann_entropy(partial_trace(state, names)).value;
}

double entropy_of(const PureState& state, const Names& names) {
  if (names.empty()) return 0.0;
  const auto pos = positions_of(state.systems(), names);
  if (pos.size() == state.systems().count()) return 0.0;
  return std::max(0.0, spectral_entropy(reduced_matrix(state, pos)));
}

namespace {

void require_disjoint(const Names& a, const Names& b) {
  for (const auto& x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) {
      throw ValidationError("subsystem sets overlap on '" + x + "'");
    }
  }
}

Names join(const Names& a, const Names& b) {
  Names out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

template <typename State>
double raw_mutual_information(const State& s, const Names& a, const Names& b) {
  if (a.empty() || b.empty()) throw ValidationError("mutual information needs nonempty sets");
  require_disjoint(a, b);
  return entropy_of(s, a) + entropy_of(s, b) - entropy_of(s, join(a, b));
}

template <typename State>
double raw_conditional_mi(const State& s, const Names& a, const Names& c, const Names& b) {
  if (a.empty() || c.empty()) throw ValidationError("conditional MI needs nonempty A and C");
  require_disjoint(a, c);
  require_disjoint(a, b);
  require_disjoint(c, b);
  return entropy_of(s, join(a, b)) + entropy_of(s, join(b, c)) - entropy_of(s, b) -
         entropy_of(s, join(join(a, b), c));
}

}  // namespace

InformationReport mutual_information_report(const DensityOperator& state, const Names& a,
                                            const Names& b) {
  InformationReport r;
  r.raw = raw_mutual_information(state, a, b);
  r.value = std::max(0.0, r.raw);
  return r;
}

double mutual_information(const DensityOperator& state, const Names& a, const Names& b) {
  return mutual_information_report(state, a, b).value;
}

double mutual_information(const PureState& state, const Names& a, const Names& b) {
  return std::max(0.0, raw_mutual_information(state, a, b));
}

double conditional_mutual_information(const DensityOperator& state, const Names& a,
                                      const Names& c, const Names& b) {
  return std::max(0.0, raw_conditional_mi(state, a, c, b));
}

double conditional_mutual_information(const PureState& state, const Names& a, const Names& c,
                                      const Names& b) {
  return std::max(0.0, raw_conditional_mi(state, a, c, b));
}

DensityOperator embed_classical_joint(const JointDistribution& p, const std::string& x_label,
                                      const std::string& y_label) {
  const int nx = p.size_x();
  const int ny = p.size_y();
  CMatrix m = CMatrix::Zero(nx * ny, nx * ny);
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < ny; ++y) m(x * ny + y, x * ny + y) = p.table()(x, y);
  }
  return DensityOperator(std::move(m), {nx, ny}, {x_label, y_label});
}

}  // namespace bottleneck
