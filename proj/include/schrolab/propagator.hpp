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

#ifndef SCHROLAB_PROPAGATOR_HPP
#define SCHROLAB_PROPAGATOR_HPP

#include <span>
#include <vector>

#include "schrolab/kernels.hpp"
#include "schrolab/torus_field.hpp"

namespace schrolab {

/// Half-open interval [lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x < hi; }
  bool empty() const { return !(lo < hi); }
};

/// Source that is constant in time on each [s_i, s_{i+1}).
///
/// Breakpoints are strictly increasing and start at 0; every piece shares
/// the same mode lattice.
class StepSource {
 public:
  StepSource(std::vector<double> breakpoints, std::vector<FourierField> pieces);

  /// Identically zero source on [0, T].
  static StepSource zero(const ModeLattice& lattice, double horizon);
  /// One constant piece on [0, T].
  static StepSource constant(FourierField piece, double horizon);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<FourierField>& pieces() const { return pieces_; }
  const ModeLattice& lattice() const { return pieces_.front().lattice(); }
  std::size_t piece_count() const { return pieces_.size(); }
  double horizon() const { return breakpoints_.back(); }

  /// l2_norm of every piece.
  const std::vector<double>& piece_norms() const { return norms_; }
  /// sum_i (s_{i+1} - s_i) ||piece_i||, the L^1(L^2) norm.
  double l1_mass() const;
  /// Index of the piece active at t; t == T maps to the last piece.
  std::size_t piece_at(double t) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<FourierField> pieces_;
  std::vector<double> norms_;
};

/// Time-stamped states. Sample times are nondecreasing.
struct Trajectory {
  std::vector<double> times;
  std::vector<FourierField> states;

  std::size_t size() const { return times.size(); }
};

/// e^{i t Delta} f: mode k picks up e^{-4 pi^2 i |k|^2 t}.
FourierField free_evolve(const FourierField& f, double t,
                         Execution exec = Execution::parallel);

/// int_a^b e^{-i s Delta} f(s) ds, exact on each piece. An empty interval
/// gives the zero field; an interval leaving [0, T] throws std::out_of_range.
FourierField duhamel_source_transform(const StepSource& src, Interval interval,
                                      Execution exec = Execution::parallel);

/// e^{i t Delta} u0 + (1/i) int_0^t e^{i (t - s) Delta} f(s) ds.
FourierField duhamel_solution(const FourierField& u0, const StepSource& src, double t,
                              Execution exec = Execution::parallel);

/// duhamel_solution at each of the sorted times.
Trajectory sample_trajectory(const FourierField& u0, const StepSource& src,
                             std::span<const double> times,
                             Execution exec = Execution::parallel);

/// Prefix table of the backward transform at every breakpoint, so that
/// int_0^t e^{-i s Delta} f(s) ds costs one piece instead of all of them.
class SourceTransformTable {
 public:
  explicit SourceTransformTable(const StepSource& src);

  /// int_0^t e^{-i s Delta} f(s) ds for t in [0, T].
  FourierField prefix(double t) const;
  /// Same as prefix, written into `out` (size = lattice size).
  void prefix_into(double t, std::span<Complex> out) const;

 private:
  const StepSource* src_;
  std::vector<std::vector<Complex>> prefix_;
};

}  // namespace schrolab

#endif  // SCHROLAB_PROPAGATOR_HPP
