// Copyright 2026 The schrolab Authors
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

// Dyadic decomposition of the causal triangle {0 <= s <= t < T} into squares
// J x I built from equal-mass time intervals of a step source, and the
// truncated sums of free waves that approximate the Duhamel integral
//
//   v(t) = int_0^t e^{i (t - s) Delta} f(s) ds.
//
// Level-q squares are cut from the level-(q+1) breakpoints: the square
// Q_{j,q} has s-side I = [t_{2j}, t_{2j+1}) and t-side J = [t_{2j+1}, t_{2j+2})
// on level q + 1. Squares at levels 0..k therefore need a partition of depth
// k + 1, and everything they miss is within one level-(k+1) cell of the
// diagonal, which gives
//
//   ||v(t) - v_k(t)|| <= 2^{-(k+1)} c <= 2^{-k} c,   c = ||f||_{L^1(L^2)}.

#ifndef SCHROLAB_CK_DECOMPOSITION_HPP
#define SCHROLAB_CK_DECOMPOSITION_HPP

#include <optional>
#include <span>
#include <vector>

#include "schrolab/propagator.hpp"

namespace schrolab {

/// G(t) = int_0^t ||f(s)|| ds, piecewise linear on the source breakpoints.
class MassProfile {
 public:
  MassProfile(std::vector<double> knots, std::vector<double> values);
  static MassProfile from_source(const StepSource& src);

  double operator()(double t) const;
  double total() const { return values_.back(); }
  double horizon() const { return knots_.back(); }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }

  /// Leftmost t with G(t) = y, for y in [0, total()].
  double leftmost_preimage(double y) const;

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
};

/// Nested breakpoints t_{p,q}, q = 0..depth, p = 0..2^q.
class DyadicPartition {
 public:
  /// Throws std::domain_error when the profile has zero total mass.
  static DyadicPartition build(const MassProfile& profile, int depth);

  int depth() const { return int(levels_.size()) - 1; }
  double horizon() const { return levels_.front().back(); }
  double total_mass() const { return total_mass_; }
  const std::vector<double>& level(int q) const { return levels_.at(std::size_t(q)); }
  double point(int q, long p) const { return levels_.at(std::size_t(q)).at(std::size_t(p)); }

 private:
  std::vector<std::vector<double>> levels_;
  double total_mass_ = 0.0;
};

struct SquareBlock {
  int level = 0;
  long index = 0;
  Interval s_side;  ///< I_{j,q}
  Interval t_side;  ///< J_{j,q}
  std::optional<FourierField> field;  ///< g_{j,q}, unset for geometry only

  bool contains(double t, double s) const { return t_side.contains(t) && s_side.contains(s); }
};

/// Square geometry for levels 0..max_level; needs partition depth >= max_level + 1.
std::vector<SquareBlock> squares(const DyadicPartition& partition, int max_level);

/// Fills g_{j,q} = int_{I_{j,q}} e^{-i s Delta} f(s) ds for every block.
std::vector<SquareBlock> block_fields(const StepSource& src, std::vector<SquareBlock> blocks,
                                      Execution exec = Execution::parallel);

/// Blocks grouped by level with sorted t-sides for O(k log 2^k) lookup.
class TruncatedSum {
 public:
  explicit TruncatedSum(std::span<const SquareBlock> blocks);

  int max_level() const { return int(levels_.size()) - 1; }

  /// sum of g_{j,q} over blocks with t in J_{j,q}, q <= k, before the free
  /// flow is applied (backward picture).
  void backward_into(int k, double t, std::span<Complex> out) const;

  /// v_k(t) = sum over the same blocks of e^{i t Delta} g_{j,q}.
  FourierField at(int k, double t) const;

 private:
  ModeLattice lattice_;
  std::vector<std::vector<const SquareBlock*>> levels_;
};

/// Convenience: truncated sum at level k using every supplied block.
FourierField truncated_sum(std::span<const SquareBlock> blocks, int k, double t);

struct CertificateReport {
  int k = 0;
  double mass = 0.0;     ///< c
  double horizon = 0.0;  ///< T
  long sample_count = 0;
  double max_pointwise_residual = 0.0;
  double l2_residual = 0.0;
  double pointwise_bound = 0.0;  ///< 2^{-k} c
  double l2_bound = 0.0;         ///< sqrt(T) c 2^{-k}
  double relative_slack = 1e-6;
  double riemann_tolerance = 0.0;
  bool pointwise_pass = false;
  bool l2_pass = false;
  bool pass = false;
};

/// Minimum number of uniform time samples certify accepts at level k.
inline long minimum_certificate_samples(int k) { return 1L << (k + 3); }

/// Compares v(t) with v_k(t) at `samples` midpoints of a uniform grid on
/// [0, T). The time-L^2 residual is the midpoint Riemann sum
/// (T / n sum_i r(t_i)^2)^{1/2}. Throws std::invalid_argument for fewer than
/// 2^{k+3} samples and std::domain_error for a zero-mass source.
CertificateReport certify(const StepSource& src, int k, long samples,
                          Execution exec = Execution::parallel);

/// certify for every level 0..max_k, sharing one partition.
std::vector<CertificateReport> certify_sweep(const StepSource& src, int max_k, long samples,
                                             Execution exec = Execution::parallel);

}  // namespace schrolab

#endif  // SCHROLAB_CK_DECOMPOSITION_HPP
