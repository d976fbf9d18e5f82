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

#include "bottleneck/classical_ib.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "bottleneck/descent.hpp"
#include "bottleneck/envelope.hpp"
#include "bottleneck/error.hpp"
#include "bottleneck/parallel.hpp"

namespace bottleneck {

// ---------------------------------------------------------------------------
// Distributions

JointDistribution::JointDistribution(RMatrix table) : table_(std::move(table)) {
  if (table_.rows() < 1 || table_.cols() < 1) throw ValidationError("joint distribution is empty");
  if (!table_.allFinite() || table_.minCoeff() < 0.0) {
    throw ValidationError("joint distribution has a negative entry");
  }
  if (std::abs(table_.sum() - 1.0) > 1e-12) {
    throw ValidationError("joint distribution does not sum to 1");
  }
}

double JointDistribution::entropy_x() const { return shannon_entropy(marginal_x()); }
double JointDistribution::entropy_y() const { return shannon_entropy(marginal_y()); }

double JointDistribution::mutual_information() const {
  return std::max(0.0, entropy_x() + entropy_y() - shannon_entropy(table_.reshaped()));
}

double JointDistribution::conditional_entropy_x_given_y() const {
  return std::max(0.0, shannon_entropy(table_.reshaped()) - entropy_y());
}

JointDistribution JointDistribution::without_null_symbols(std::vector<int>* dropped_x,
                                                          std::vector<int>* dropped_y) const {
  const RVector px = marginal_x();
  const RVector py = marginal_y();
  std::vector<int> kx, ky;
  for (int x = 0; x < size_x(); ++x) {
    if (px(x) > 0.0) {
      kx.push_back(x);
    } else if (dropped_x) {
      dropped_x->push_back(x);
    }
  }
  for (int y = 0; y < size_y(); ++y) {
    if (py(y) > 0.0) {
      ky.push_back(y);
    } else if (dropped_y) {
      dropped_y->push_back(y);
    }
  }
  RMatrix t(static_cast<Eigen::Index>(kx.size()), static_cast<Eigen::Index>(ky.size()));
  for (std::size_t i = 0; i < kx.size(); ++i) {
    for (std::size_t j = 0; j < ky.size(); ++j) {
      t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = table_(kx[i], ky[j]);
    }
  }
  return JointDistribution(t / t.sum());
}

JointDistribution JointDistribution::power(int n) const {
  if (n < 1) throw ValidationError("power needs n >= 1");
  RMatrix t = table_;
  for (int k = 1; k < n; ++k) {
    RMatrix next(t.rows() * table_.rows(), t.cols() * table_.cols());
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) {
        next.block(i * table_.rows(), j * table_.cols(), table_.rows(), table_.cols()) =
            t(i, j) * table_;
      }
    }
    t = std::move(next);
  }
  t /= t.sum();
  return JointDistribution(std::move(t));
}

ConditionalChannel::ConditionalChannel(RMatrix rows) : rows_(std::move(rows)) {
  if (rows_.rows() < 1 || rows_.cols() < 1) throw ValidationError("channel is empty");
  if (!rows_.allFinite() || rows_.minCoeff() < 0.0) {
    throw ValidationError("channel has a negative entry");
  }
  for (Eigen::Index x = 0; x < rows_.rows(); ++x) {
    if (std::abs(rows_.row(x).sum() - 1.0) > 1e-12) {
      throw ValidationError("channel row does not sum to 1");
    }
  }
}

ChannelInformation channel_information(const JointDistribution& p, const RMatrix& q) {
  if (q.rows() != p.size_x()) throw ValidationError("channel rows differ from |X|");
  const RVector px = p.marginal_x();
  const RVector py = p.marginal_y();
  const RVector qw = q.transpose() * px;
  const RMatrix r = p.table().transpose() * q;  // r(y, w)
  ChannelInformation out;
  for (Eigen::Index x = 0; x < q.rows(); ++x) {
    for (Eigen::Index w = 0; w < q.cols(); ++w) {
      const double joint = px(x) * q(x, w);
      if (joint > 0.0) out.compression += joint * std::log2(q(x, w) / qw(w));
    }
  }
  for (Eigen::Index y = 0; y < r.rows(); ++y) {
    for (Eigen::Index w = 0; w < r.cols(); ++w) {
      if (r(y, w) > 0.0) out.relevance += r(y, w) * std::log2(r(y, w) / (py(y) * qw(w)));
    }
  }
  out.compression = std::max(0.0, out.compression);
  out.relevance = std::max(0.0, out.relevance);
  return out;
}

// ---------------------------------------------------------------------------
// Binary symmetric channel oracle

double binary_entropy(double x) { return entropy_term(x) + entropy_term(1.0 - x); }

double binary_entropy_inverse(double y) {
  if (!(y >= 0.0 && y <= 1.0)) throw ValidationError("binary_entropy_inverse: y outside [0,1]");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 0.5;
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (binary_entropy(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double binary_convolution(double a, double b) { return a * (1.0 - b) + b * (1.0 - a); }

namespace {

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(std::string(what) + " outside [0,1]");
}

}  // namespace

double bsc_ib_oracle(double a, double delta) {
  check_unit(a, "bsc_ib_oracle: a");
  check_unit(delta, "bsc_ib_oracle: delta");
  return binary_entropy(binary_convolution(binary_entropy_inverse(a), delta));
}

double bsc_relevant_information(double rate, double delta) {
  check_unit(rate, "bsc_relevant_information: rate");
  return std::max(0.0, 1.0 - bsc_ib_oracle(1.0 - rate, delta));
}

double bsc_ib_rate(double relevant, double delta) {
  check_unit(delta, "bsc_ib_rate: delta");
  const double capacity = 1.0 - binary_entropy(delta);
  if (relevant < 0.0 || relevant > capacity + 1e-12) {
    throw InfeasibleError("bsc_ib_rate: relevance target above I(X;Y)");
  }
  const double d = std::min(delta, 1.0 - delta);  // BSC(delta) and BSC(1-delta) share the curve
  if (d == 0.5) return 0.0;
  const double c = binary_entropy_inverse(std::clamp(1.0 - relevant, 0.0, 1.0));
  const double u = std::clamp((c - d) / (1.0 - 2.0 * d), 0.0, 0.5);
  return 1.0 - binary_entropy(u);
}

JointDistribution bsc_joint(double delta) {
  check_unit(delta, "bsc_joint: delta");
  RMatrix t(2, 2);
  t << 0.5 * (1.0 - delta), 0.5 * delta, 0.5 * delta, 0.5 * (1.0 - delta);
  return JointDistribution(t);
}

// ---------------------------------------------------------------------------
// Self-consistent IB iteration

FixedPointResult ib_fixed_point(const JointDistribution& p, double beta, RMatrix q,
                                int max_iters, double tol) {
  const Eigen::Index nx = p.size_x();
  const Eigen::Index ny = p.size_y();
  const Eigen::Index nw = q.cols();
  const RVector px = p.marginal_x();
  RMatrix py_x(nx, ny);  // p(y|x)
  for (Eigen::Index x = 0; x < nx; ++x) py_x.row(x) = p.table().row(x) / px(x);

  FixedPointResult out;
  double prev = std::numeric_limits<double>::infinity();
  int quiet = 0;
  RMatrix py_w(nw, ny);
  RVector qw(nw);
  RVector logits(nw);
  for (int it = 0; it < max_iters; ++it) {
    out.iterations = it + 1;
    qw = q.transpose() * px;
    const RMatrix r = p.table().transpose() * q;  // r(y, w)
    for (Eigen::Index w = 0; w < nw; ++w) {
      if (qw(w) > 0.0) py_w.row(w) = r.col(w).transpose() / qw(w);
    }
    for (Eigen::Index x = 0; x < nx; ++x) {
      double top = -std::numeric_limits<double>::infinity();
      for (Eigen::Index w = 0; w < nw; ++w) {
        if (qw(w) <= 0.0) {
          logits(w) = -std::numeric_limits<double>::infinity();
          continue;
        }
        double kl = 0.0;
        for (Eigen::Index y = 0; y < ny; ++y) {
          const double a = py_x(x, y);
          if (a > 0.0) {
            const double b = py_w(w, y);
            kl += b > 0.0 ? a * std::log(a / b) : std::numeric_limits<double>::infinity();
          }
        }
        logits(w) = std::log(qw(w)) - beta * kl;
        top = std::max(top, logits(w));
      }
      double z = 0.0;
      for (Eigen::Index w = 0; w < nw; ++w) {
        q(x, w) = std::isfinite(logits(w)) ? std::exp(logits(w) - top) : 0.0;
        z += q(x, w);
      }
      q.row(x) /= z;
    }
    const auto info = channel_information(p, q);
    const double lagrangian = info.compression - beta * info.relevance;
    const double change = std::abs(lagrangian - prev);
    quiet = change <= tol * std::max(1.0, std::abs(lagrangian)) ? quiet + 1 : 0;
    prev = lagrangian;
    if (quiet >= 3) {
      out.converged = true;
      break;
    }
  }
  out.channel = std::move(q);
  out.info = channel_information(p, out.channel);
  return out;
}

std::vector<RMatrix> partition_channels(int m, int blocks) {
  std::vector<RMatrix> out;
  if (m < 1 || blocks < 1) return out;
  std::vector<int> label(static_cast<std::size_t>(m), 0);
  // Restricted growth strings: label[i] <= 1 + max(label[0..i-1]).
  while (true) {
    RMatrix c = RMatrix::Zero(m, blocks);
    for (int i = 0; i < m; ++i) c(i, label[static_cast<std::size_t>(i)]) = 1.0;
    out.push_back(std::move(c));
    int i = m - 1;
    for (; i > 0; --i) {
      int prefix_max = 0;
      for (int k = 0; k < i; ++k) prefix_max = std::max(prefix_max, label[static_cast<std::size_t>(k)]);
      if (label[static_cast<std::size_t>(i)] <= prefix_max &&
          label[static_cast<std::size_t>(i)] + 1 < blocks) {
        ++label[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < m; ++k) label[static_cast<std::size_t>(k)] = 0;
        break;
      }
    }
    if (i == 0) break;
  }
  return out;
}

namespace {

constexpr int kMaxPartitionSymbols = 8;
constexpr double kFeasibilitySlack = 1e-6;
constexpr double kUnknownBeta = std::numeric_limits<double>::quiet_NaN();

RMatrix random_channel(std::mt19937_64& rng, Eigen::Index nx, Eigen::Index nw) {
  std::exponential_distribution<double> e(1.0);
  RMatrix q(nx, nw);
  for (Eigen::Index x = 0; x < nx; ++x) {
    for (Eigen::Index w = 0; w < nw; ++w) q(x, w) = e(rng) + 1e-12;
    q.row(x) /= q.row(x).sum();
  }
  return q;
}

// Reduced alphabet plus the bookkeeping to map witnesses back.
struct ReducedSource {
  JointDistribution joint;
  std::vector<int> dropped_x;
  std::vector<int> dropped_y;
  int full_x = 0;

  explicit ReducedSource(const JointDistribution& p)
      : joint(p.without_null_symbols(&dropped_x, &dropped_y)), full_x(p.size_x()) {}

  ConditionalChannel expand(const RMatrix& q) const {
    RMatrix full = RMatrix::Zero(full_x, q.cols());
    Eigen::Index k = 0;
    for (int x = 0; x < full_x; ++x) {
      if (std::find(dropped_x.begin(), dropped_x.end(), x) != dropped_x.end()) {
        full(x, 0) = 1.0;
      } else {
        full.row(x) = q.row(k++);
      }
    }
    return ConditionalChannel(std::move(full));
  }

  std::vector<std::string> diagnostics() const {
    std::vector<std::string> d;
    for (int x : dropped_x) d.push_back("dropped zero-probability x=" + std::to_string(x));
    for (int y : dropped_y) d.push_back("dropped zero-probability y=" + std::to_string(y));
    return d;
  }
};

void add_partitions(const JointDistribution& p, int d_w, std::vector<ClassicalCandidate>& out) {
  if (p.size_x() > kMaxPartitionSymbols) return;
  for (auto& c : partition_channels(p.size_x(), d_w)) {
    const auto info = channel_information(p, c);
    out.push_back({std::move(c), info, kUnknownBeta, true});
  }
}

ClassicalCandidate from_fixed_point(FixedPointResult r, double beta) {
  return {std::move(r.channel), r.info, beta, r.converged};
}

// Which coordinate a refinement pins down.
enum class Coordinate { kRelevance, kCompression };

double coordinate(const ChannelInformation& i, Coordinate c) {
  return c == Coordinate::kRelevance ? i.relevance : i.compression;
}

std::vector<ClassicalCandidate> ib_candidates(const JointDistribution& p, int d_w,
                                              const std::vector<double>& targets,
                                              Coordinate pinned, const SolverConfig& cfg) {
  std::vector<ClassicalCandidate> cands;
  {
    RMatrix constant = RMatrix::Zero(p.size_x(), d_w);
    constant.col(0).setOnes();
    cands.push_back({constant, channel_information(p, constant), 1.0, true});
  }
  add_partitions(p, d_w, cands);

  // Below beta = 1 the constant channel is optimal since I(X;W) >= I(Y;W).
  std::vector<double> betas;
  for (double b : cfg.betas()) {
    if (b > 1.0) betas.push_back(b);
  }
  std::sort(betas.begin(), betas.end());

  std::vector<std::vector<ClassicalCandidate>> per_beta(betas.size());
  parallel_for(betas.size(), [&](std::size_t i) {
    for (int r = 0; r < cfg.restarts; ++r) {
      std::mt19937_64 rng(task_seed(cfg.seed, i, static_cast<std::uint64_t>(r)));
      auto fp = ib_fixed_point(p, betas[i], random_channel(rng, p.size_x(), d_w),
                               cfg.classical_max_iters, cfg.tol);
      per_beta[i].push_back(from_fixed_point(std::move(fp), betas[i]));
    }
  });
  // Continuation in increasing beta, seeded by the best run of the previous multiplier.
  const ClassicalCandidate* carry = nullptr;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const double b = betas[i];
    auto lag = [b](const ClassicalCandidate& c) { return c.info.compression - b * c.info.relevance; };
    if (carry) {
      per_beta[i].push_back(from_fixed_point(
          ib_fixed_point(p, b, carry->channel, cfg.classical_max_iters, cfg.tol), b));
    }
    carry = &*std::min_element(per_beta[i].begin(), per_beta[i].end(),
                               [&](const auto& x, const auto& y) { return lag(x) < lag(y); });
  }
  for (auto& v : per_beta) {
    for (auto& c : v) cands.push_back(std::move(c));
  }

  // Tighten each target by bisecting the multiplier between the hull
  // vertices that bracket it.
  const double beta_cap = 1e3 * (betas.empty() ? 1e3 : betas.back());
  for (double target : targets) {
    std::vector<TradeoffPoint> pts;
    for (const auto& c : cands) pts.push_back({c.info.relevance, c.info.compression});
    TradeoffEnvelope env(pts, Sense::kMinimize, Bound::kAtLeast);
    // Work in (relevance, compression) for either pinned coordinate: the hull
    // vertex pair around the target along the pinned axis brackets it.
    std::size_t lo = 0, hi = 0;
    bool found = false;
    const auto& vs = env.vertices();
    for (std::size_t k = 0; k + 1 < vs.size(); ++k) {
      const double a = coordinate(cands[vs[k]].info, pinned);
      const double b = coordinate(cands[vs[k + 1]].info, pinned);
      if (a < target && target < b) {
        lo = vs[k];
        hi = vs[k + 1];
        found = true;
        break;
      }
    }
    if (!found) continue;
    double b_lo = std::isnan(cands[lo].beta) ? 1.0 : cands[lo].beta;
    double b_hi = std::isnan(cands[hi].beta) ? beta_cap : cands[hi].beta;
    if (!(b_hi > b_lo)) {
      b_lo = 1.0;
      b_hi = beta_cap;
    }
    RMatrix q_lo = cands[lo].channel;
    RMatrix q_hi = cands[hi].channel;
    for (int step = 0; step < 40; ++step) {
      const double mid = std::sqrt(b_lo * b_hi);
      auto a = ib_fixed_point(p, mid, q_lo, cfg.classical_max_iters, cfg.tol);
      auto b = ib_fixed_point(p, mid, q_hi, cfg.classical_max_iters, cfg.tol);
      auto lag = [mid](const FixedPointResult& r) {
        return r.info.compression - mid * r.info.relevance;
      };
      FixedPointResult best = lag(a) <= lag(b) ? std::move(a) : std::move(b);
      const double reached = coordinate(best.info, pinned);
      const bool below = reached < target;
      cands.push_back({best.channel, best.info, mid, best.converged});
      if (std::abs(reached - target) < 1e-9 || b_hi / b_lo < 1.0 + 1e-12) break;
      if (below) {
        b_lo = mid;
        q_lo = best.channel;
      } else {
        b_hi = mid;
        q_hi = best.channel;
      }
    }
  }
  return cands;
}

CurvePoint envelope_point(const std::vector<ClassicalCandidate>& cands, const TradeoffEnvelope& env,
                          double level, const ReducedSource& src) {
  const auto ev = env.at(level, kFeasibilitySlack);
  if (!ev) {
    std::ostringstream os;
    os << "constraint level " << level << " not reachable (best " << env.reach() << ")";
    throw InfeasibleError(os.str());
  }
  CurvePoint pt;
  pt.abscissa = level;
  pt.value = ev->value;
  pt.achieved_constraint = ev->achieved;
  const auto& a = cands[ev->first];
  const auto& b = cands[ev->second];
  pt.converged = a.converged && b.converged;
  if (ev->first == ev->second) {
    pt.witness = src.expand(a.channel);
  } else {
    RMatrix mix(a.channel.rows(), a.channel.cols() + b.channel.cols());
    mix << ev->weight * a.channel, (1.0 - ev->weight) * b.channel;
    pt.witness = src.expand(mix);
  }
  return pt;
}

std::string grid_spec(const std::vector<double>& grid) {
  std::ostringstream os;
  os.precision(17);
  os << grid.size() << " points";
  if (!grid.empty()) os << " in [" << grid.front() << ", " << grid.back() << "]";
  return os.str();
}

void check_grid(const std::vector<double>& grid, double upper, const char* what) {
  if (grid.empty()) throw ValidationError("grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0) throw ValidationError("grid entries must be >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("grid must be strictly increasing");
  }
  if (grid.back() > upper + 1e-12) {
    std::ostringstream os;
    os << what << ": target " << grid.back() << " exceeds " << upper;
    throw InfeasibleError(os.str());
  }
}

// ---------------------------------------------------------------------------
// Privacy funnel: descent on row-softmax logits.

// Objective F(I(X;W), I(Y;W)) with partial derivatives.
struct FunnelObjective {
  double beta = 0.0;       // Lagrangian I(Y;W) - beta I(X;W)
  bool penalized = false;  // otherwise Lagrangian
  bool dual = false;       // penalty pins I(Y;W) <= level instead of I(X;W) >= level
  double level = 0.0;
  double weight = 0.0;

  // Returns value; sets d/dI_X and d/dI_Y.
  double operator()(const ChannelInformation& i, double& dx, double& dy) const {
    if (!penalized) {
      dx = -beta;
      dy = 1.0;
      return i.relevance - beta * i.compression;
    }
    if (!dual) {
      const double gap = std::max(0.0, level - i.compression);
      dx = -2.0 * weight * gap;
      dy = 1.0;
      return i.relevance + weight * gap * gap;
    }
    const double gap = std::max(0.0, i.relevance - level);
    dx = -1.0;
    dy = 2.0 * weight * gap;
    return -i.compression + weight * gap * gap;
  }
};

RMatrix softmax_rows(const Eigen::VectorXd& z, Eigen::Index nx, Eigen::Index nw) {
  RMatrix q(nx, nw);
  for (Eigen::Index x = 0; x < nx; ++x) {
    double top = -std::numeric_limits<double>::infinity();
    for (Eigen::Index w = 0; w < nw; ++w) top = std::max(top, z(x * nw + w));
    double s = 0.0;
    for (Eigen::Index w = 0; w < nw; ++w) {
      q(x, w) = std::exp(z(x * nw + w) - top);
      s += q(x, w);
    }
    q.row(x) /= s;
  }
  return q;
}

Eigen::VectorXd logits_of(const RMatrix& q) {
  Eigen::VectorXd z(q.size());
  for (Eigen::Index x = 0; x < q.rows(); ++x) {
    for (Eigen::Index w = 0; w < q.cols(); ++w) z(x * q.cols() + w) = std::log(q(x, w) + 1e-9);
  }
  return z;
}

DescentResult funnel_descent(const JointDistribution& p, const FunnelObjective& obj,
                             Eigen::VectorXd z, Eigen::Index nw, int max_iters, double tol) {
  const Eigen::Index nx = p.size_x();
  const RVector px = p.marginal_x();
  const RVector py = p.marginal_y();
  auto f = [&](const Eigen::VectorXd& zz, Eigen::VectorXd& grad) {
    const RMatrix q = softmax_rows(zz, nx, nw);
    const auto info = channel_information(p, q);
    double dx = 0.0, dy = 0.0;
    const double value = obj(info, dx, dy);
    const RVector qw = q.transpose() * px;
    const RMatrix r = p.table().transpose() * q;
    RMatrix g(nx, nw);
    for (Eigen::Index x = 0; x < nx; ++x) {
      for (Eigen::Index w = 0; w < nw; ++w) {
        double gx = 0.0, gy = 0.0;
        if (q(x, w) > 0.0 && qw(w) > 0.0) gx = px(x) * std::log2(q(x, w) / qw(w));
        for (Eigen::Index y = 0; y < p.size_y(); ++y) {
          const double pxy = p.table()(x, y);
          if (pxy > 0.0 && r(y, w) > 0.0) gy += pxy * std::log2(r(y, w) / (py(y) * qw(w)));
        }
        g(x, w) = dx * gx + dy * gy;
      }
    }
    grad.resize(zz.size());
    for (Eigen::Index x = 0; x < nx; ++x) {
      const double mean = q.row(x).dot(g.row(x));
      for (Eigen::Index w = 0; w < nw; ++w) grad(x * nw + w) = q(x, w) * (g(x, w) - mean);
    }
    return value;
  };
  return descend(f, std::move(z), max_iters, tol);
}

ClassicalCandidate funnel_candidate(const JointDistribution& p, const DescentResult& r,
                                    Eigen::Index nw, double beta) {
  RMatrix q = softmax_rows(r.x, p.size_x(), nw);
  const auto info = channel_information(p, q);
  return {std::move(q), info, beta, r.converged};
}

constexpr int kFunnelIters = 2000;

std::vector<ClassicalCandidate> funnel_candidates(const JointDistribution& p, int d_w,
                                                  const std::vector<double>& targets, bool dual,
                                                  const SolverConfig& cfg) {
  std::vector<ClassicalCandidate> cands;
  add_partitions(p, d_w, cands);
  if (cands.empty()) {
    RMatrix constant = RMatrix::Zero(p.size_x(), d_w);
    constant.col(0).setOnes();
    cands.push_back({constant, channel_information(p, constant), 0.0, true});
  }
  // Erasure channels: W = X with probability 1 - e, otherwise a spare label.
  if (d_w > p.size_x()) {
    for (int k = 1; k < 20; ++k) {
      const double e = k / 20.0;
      RMatrix q = RMatrix::Zero(p.size_x(), d_w);
      for (int x = 0; x < p.size_x(); ++x) {
        q(x, x) = 1.0 - e;
        q(x, p.size_x()) = e;
      }
      cands.push_back({q, channel_information(p, q), kUnknownBeta, true});
    }
  }
  // For beta >= 1 the Lagrangian equals -I(X;W|Y) - (beta - 1) I(X;W), which is
  // concave in the channel, so its minimum sits on a deterministic map and the
  // partitions above already cover it.
  const bool partitions_cover = p.size_x() <= kMaxPartitionSymbols;
  std::vector<double> betas;
  for (double b : cfg.betas()) {
    if (!(partitions_cover && b >= 1.0)) betas.push_back(b);
  }
  std::sort(betas.begin(), betas.end());
  const Eigen::Index nx = p.size_x();
  std::vector<std::vector<ClassicalCandidate>> per_beta(betas.size());
  parallel_for(betas.size(), [&](std::size_t i) {
    FunnelObjective obj;
    obj.beta = betas[i];
    for (int r = 0; r < cfg.restarts; ++r) {
      std::mt19937_64 rng(task_seed(cfg.seed ^ 0x5046ULL, i, static_cast<std::uint64_t>(r)));
      std::normal_distribution<double> n(0.0, 2.0);
      Eigen::VectorXd z(nx * d_w);
      for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = n(rng);
      auto res = funnel_descent(p, obj, std::move(z), d_w, kFunnelIters, cfg.tol);
      per_beta[i].push_back(funnel_candidate(p, res, d_w, betas[i]));
    }
  });
  const ClassicalCandidate* carry = nullptr;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const double b = betas[i];
    auto lag = [b](const ClassicalCandidate& c) { return c.info.relevance - b * c.info.compression; };
    if (carry) {
      FunnelObjective obj;
      obj.beta = b;
      auto res = funnel_descent(p, obj, logits_of(carry->channel), d_w, kFunnelIters, cfg.tol);
      per_beta[i].push_back(funnel_candidate(p, res, d_w, b));
    }
    carry = &*std::min_element(per_beta[i].begin(), per_beta[i].end(),
                               [&](const auto& x, const auto& y) { return lag(x) < lag(y); });
  }
  for (auto& v : per_beta) {
    for (auto& c : v) cands.push_back(std::move(c));
  }

  // Quadratic-penalty refinement at each target, weight doubling to 1e6,
  // warm-started from the hull vertices around the target.
  for (double target : targets) {
    std::vector<TradeoffPoint> pts;
    for (const auto& c : cands) {
      pts.push_back(dual ? TradeoffPoint{c.info.relevance, c.info.compression}
                         : TradeoffPoint{c.info.compression, c.info.relevance});
    }
    TradeoffEnvelope env(pts, dual ? Sense::kMaximize : Sense::kMinimize,
                         dual ? Bound::kAtMost : Bound::kAtLeast);
    const auto ev = env.at(target, kFeasibilitySlack);
    if (!ev || ev->first == ev->second) continue;
    for (std::size_t start : {ev->first, ev->second}) {
      Eigen::VectorXd z = logits_of(cands[start].channel);
      FunnelObjective obj;
      obj.penalized = true;
      obj.dual = dual;
      obj.level = target;
      for (double weight = 1.0; weight <= 2e6; weight *= 2.0) {
        obj.weight = weight;
        auto res = funnel_descent(p, obj, std::move(z), d_w, 300, cfg.tol);
        z = res.x;
        cands.push_back(funnel_candidate(p, res, d_w, kUnknownBeta));
      }
    }
  }
  return cands;
}

void check_d_w(int d_w) {
  if (d_w < 1) throw ValidationError("d_W must be >= 1");
}

}  // namespace

Curve classical_ib_curve(const JointDistribution& p, int d_w, const std::vector<double>& grid,
                         const SolverConfig& cfg) {
  cfg.validate();
  check_d_w(d_w);
  const ReducedSource src(p);
  check_grid(grid, src.joint.mutual_information(), "classical_ib_curve");
  const auto cands = ib_candidates(src.joint, d_w, grid, Coordinate::kRelevance, cfg);
  std::vector<TradeoffPoint> pts;
  for (const auto& c : cands) pts.push_back({c.info.relevance, c.info.compression});
  const TradeoffEnvelope env(pts, Sense::kMinimize, Bound::kAtLeast);
  Curve curve;
  curve.kind = "classical-ib";
  curve.grid_spec = grid_spec(grid);
  curve.config_hash = cfg.hash();
  curve.diagnostics = src.diagnostics();
  for (double a : grid) curve.points.push_back(envelope_point(cands, env, a, src));
  return curve;
}

Curve classical_ib_dual_curve(const JointDistribution& p, int d_w, const std::vector<double>& grid,
                              const SolverConfig& cfg) {
  cfg.validate();
  check_d_w(d_w);
  const ReducedSource src(p);
  check_grid(grid, src.joint.entropy_x(), "classical_ib_dual_curve");
  SolverConfig dual_cfg = cfg;
  dual_cfg.beta_grid.clear();
  for (double b : cfg.betas()) dual_cfg.beta_grid.push_back(1.0 / b);
  const auto cands = ib_candidates(src.joint, d_w, grid, Coordinate::kCompression, dual_cfg);
  std::vector<TradeoffPoint> pts;
  for (const auto& c : cands) pts.push_back({c.info.compression, c.info.relevance});
  const TradeoffEnvelope env(pts, Sense::kMaximize, Bound::kAtMost);
  Curve curve;
  curve.kind = "classical-ib-dual";
  curve.grid_spec = grid_spec(grid);
  curve.config_hash = cfg.hash();
  curve.diagnostics = src.diagnostics();
  for (double r : grid) curve.points.push_back(envelope_point(cands, env, r, src));
  return curve;
}

std::vector<ClassicalCandidate> privacy_funnel_candidates(const JointDistribution& p, int d_w,
                                                          const std::vector<double>& targets,
                                                          const SolverConfig& cfg) {
  cfg.validate();
  check_d_w(d_w);
  return funnel_candidates(p.without_null_symbols(), d_w, targets, false, cfg);
}

Curve classical_pf_curve(const JointDistribution& p, int d_w, const std::vector<double>& grid,
                         const SolverConfig& cfg) {
  cfg.validate();
  check_d_w(d_w);
  const ReducedSource src(p);
  check_grid(grid, src.joint.entropy_x(), "classical_pf_curve");
  const auto cands = funnel_candidates(src.joint, d_w, grid, false, cfg);
  std::vector<TradeoffPoint> pts;
  for (const auto& c : cands) pts.push_back({c.info.compression, c.info.relevance});
  const TradeoffEnvelope env(pts, Sense::kMinimize, Bound::kAtLeast);
  const double equivocation = src.joint.conditional_entropy_x_given_y();
  Curve curve;
  curve.kind = "classical-pf";
  curve.grid_spec = grid_spec(grid);
  curve.config_hash = cfg.hash();
  curve.diagnostics = src.diagnostics();
  for (double t : grid) {
    auto pt = envelope_point(cands, env, t, src);
    pt.reference = std::max(0.0, t - equivocation);
    curve.points.push_back(std::move(pt));
  }
  return curve;
}

Curve classical_pf_dual_curve(const JointDistribution& p, int d_w, const std::vector<double>& grid,
                              const SolverConfig& cfg) {
  cfg.validate();
  check_d_w(d_w);
  const ReducedSource src(p);
  check_grid(grid, src.joint.mutual_information(), "classical_pf_dual_curve");
  const auto cands = funnel_candidates(src.joint, d_w, grid, true, cfg);
  std::vector<TradeoffPoint> pts;
  for (const auto& c : cands) pts.push_back({c.info.relevance, c.info.compression});
  const TradeoffEnvelope env(pts, Sense::kMaximize, Bound::kAtMost);
  Curve curve;
  curve.kind = "classical-pf-dual";
  curve.grid_spec = grid_spec(grid);
  curve.config_hash = cfg.hash();
  curve.diagnostics = src.diagnostics();
  for (double a : grid) curve.points.push_back(envelope_point(cands, env, a, src));
  return curve;
}

MultiLetterPoint multi_letter_pf_point(const JointDistribution& p, int n, double t, int d_w,
                                       const SolverConfig& cfg) {
  cfg.validate();
  check_d_w(d_w);
  if (n < 1 || n > 2) throw ScaleError("multi-letter privacy funnel supports n in {1, 2}");
  const JointDistribution single = p.without_null_symbols();
  if (std::pow(single.size_x(), n) > 8) throw ScaleError("multi-letter alphabet |X|^n exceeds 8");
  if (t < 0.0 || t > single.entropy_x() + 1e-12) {
    throw InfeasibleError("multi_letter_pf_point: t outside [0, H(X)]");
  }
  auto value_at = [](const std::vector<TradeoffPoint>& pts, double level) {
    const TradeoffEnvelope env(pts, Sense::kMinimize, Bound::kAtLeast);
    const auto ev = env.at(level, kFeasibilitySlack);
    if (!ev) throw InfeasibleError("multi_letter_pf_point: level not reachable");
    return ev->value;
  };
  const auto one = funnel_candidates(single, d_w, {t}, false, cfg);
  std::vector<TradeoffPoint> pts1;
  for (const auto& c : one) pts1.push_back({c.info.compression, c.info.relevance});
  MultiLetterPoint out;
  out.single_letter = value_at(pts1, t);
  if (n == 1) {
    out.multi_letter = out.single_letter;
    return out;
  }
  const JointDistribution pair = single.power(2);
  const auto two = funnel_candidates(pair, d_w, {2.0 * t}, false, cfg);
  std::vector<TradeoffPoint> pts2;
  for (const auto& c : two) pts2.push_back({c.info.compression, c.info.relevance});
  // Product witnesses: for independent copies the informations add.
  const TradeoffEnvelope env1(pts1, Sense::kMinimize, Bound::kAtLeast);
  const auto& vs = env1.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i; j < vs.size(); ++j) {
      pts2.push_back({pts1[vs[i]].constraint + pts1[vs[j]].constraint,
                      pts1[vs[i]].objective + pts1[vs[j]].objective});
    }
  }
  if (const auto ev = env1.at(t, kFeasibilitySlack)) {
    pts2.push_back({2.0 * ev->achieved, 2.0 * ev->value});  // mixed witness used twice
  }
  out.multi_letter = 0.5 * value_at(pts2, 2.0 * t);
  return out;
}

}  // namespace bottleneck
