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

#ifndef SCHROLAB_POTENTIAL_EVOLUTION_HPP
#define SCHROLAB_POTENTIAL_EVOLUTION_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "schrolab/propagator.hpp"

namespace schrolab {

/// Bounded, piecewise-constant-in-time potential V(t) acting on band-N states,
/// either by pointwise multiplication with a band-N_V profile (projected back
/// onto band N) or as a dense operator on the coefficient vector.
class BoundedPotential {
 public:
  enum class Kind { multiplication, operator_matrix };

  static BoundedPotential multiplication(ModeLattice state, std::vector<double> breakpoints,
                                         std::vector<FourierField> profiles);
  static BoundedPotential operator_matrices(ModeLattice state, std::vector<double> breakpoints,
                                            std::vector<Eigen::MatrixXcd> matrices);
  /// V(t, x) = 0 on [0, T].
  static BoundedPotential zero(ModeLattice state, double horizon);
  /// V(t, x) = value on [0, T].
  static BoundedPotential scalar(ModeLattice state, Complex value, double horizon);

  Kind kind() const { return kind_; }
  const ModeLattice& state_lattice() const { return state_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  std::size_t piece_count() const { return breakpoints_.size() - 1; }
  double horizon() const { return breakpoints_.back(); }
  const std::vector<FourierField>& profiles() const { return profiles_; }
  const std::vector<Eigen::MatrixXcd>& matrices() const { return matrices_; }

  /// Upper bound on the operator norm of each piece on band N: the sup of
  /// |V| over the 2 (N + N_V) + 1 product grid, or the largest singular value.
  const std::vector<double>& norm_track() const { return norm_track_; }
  /// int_a^b ||V(s)|| ds from norm_track.
  double norm_integral(double a, double b) const;

  /// True when every piece is self-adjoint on band N (real profiles,
  /// Hermitian matrices), so the flow conserves mass.
  bool self_adjoint() const { return self_adjoint_; }

  std::size_t piece_at(double t) const;

  /// Band-N matrix of piece p: entry (k, l) is <e_k, V e_l>.
  const Eigen::MatrixXcd& piece_matrix(std::size_t p) const { return piece_matrices_[p]; }
  /// (1 / (b - a)) int_a^b V(s) ds as a band-N matrix.
  Eigen::MatrixXcd averaged_matrix(double a, double b) const;

 private:
  BoundedPotential() = default;
  void finish();

  Kind kind_ = Kind::multiplication;
  ModeLattice state_;
  std::vector<double> breakpoints_;
  std::vector<FourierField> profiles_;
  std::vector<Eigen::MatrixXcd> matrices_;
  std::vector<Eigen::MatrixXcd> piece_matrices_;
  std::vector<double> norm_track_;
  bool self_adjoint_ = false;
};

/// V(t) u. Multiplication potentials multiply on the 2 (N + N_V) + 1 grid and
/// keep band N; operators multiply the coefficient vector.
FourierField apply_potential(const BoundedPotential& potential, double t, const FourierField& u);

enum class PotentialScheme {
  /// u_{i+1} = exp(i h (Delta + Vbar_i)) u_i with Vbar_i the step average of V.
  /// Exact for time-independent potentials; unitary for self-adjoint V.
  frozen_generator,
  /// u_{i+1} = e^{i h Delta} u_i + (1/i) exact Duhamel of the frozen source
  /// -Vbar_i u_i over the step. First order.
  exponential_euler,
};

/// Solves (i d_t + Delta + V(t)) u = 0 on t_i = i T / m, i = 0..m.
Trajectory evolve_with_potential(const FourierField& u0, const BoundedPotential& potential,
                                 double horizon, int steps,
                                 PotentialScheme scheme = PotentialScheme::frozen_generator);

struct GronwallReport {
  /// max over samples of ||u(t)||^2 / (||u0||^2 exp(2 int_0^t ||V||)).
  double worst_ratio = 0.0;
  /// min over samples of 1 - ratio.
  double bound_margin_min = 0.0;
  /// max_i | ||u(t_i)|| - ||u0|| |, reported for self-adjoint potentials.
  double mass_drift_max = 0.0;
  bool mass_checked = false;
  double ratio_tolerance = 0.0;
  double drift_tolerance = 0.0;
  bool bound_pass = false;
  bool mass_pass = true;
  bool pass = false;
};

/// Checks the energy bound ||u(t)||^2 <= ||u0||^2 exp(2 int_0^t ||V(s)|| ds)
/// at every sample and, for self-adjoint V, mass conservation.
GronwallReport gronwall_certificate(const Trajectory& traj, const BoundedPotential& potential,
                                    double ratio_tolerance = 1e-6,
                                    double drift_tolerance = 1e-6);

/// Step source with piece i = -Vbar_i u_i on [t_i, t_{i+1}).
StepSource induced_source(const Trajectory& traj, const BoundedPotential& potential);

}  // namespace schrolab

#endif  // SCHROLAB_POTENTIAL_EVOLUTION_HPP
