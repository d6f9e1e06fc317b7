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

// Picard iteration for (i d_t + Delta) u + V(u, t) u = 0 with z -> V(z, t) z
// globally Lipschitz in z, modulus C(t). On an interval with int C <= 1/2 the
// Duhamel map
//
//   K(u)(t) = e^{i (t - a) Delta} u(a) + i int_a^t e^{i (t - s) Delta} V(u(s), s) u(s) ds
//
// contracts by int C in sup_t ||.||_{L^2}; longer horizons are cut into
// intervals of C-mass 1/2 and chained.

#ifndef SCHROLAB_NLS_SOLVER_HPP
#define SCHROLAB_NLS_SOLVER_HPP

#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "schrolab/propagator.hpp"

namespace schrolab {

/// Nonnegative piecewise-constant C(t): value i on [breakpoints_i, breakpoints_{i+1}),
/// the last value extending to +infinity.
class LipschitzProfile {
 public:
  LipschitzProfile(std::vector<double> breakpoints, std::vector<double> values);
  static LipschitzProfile constant(double value) { return LipschitzProfile({0.0}, {value}); }

  double at(double t) const;
  /// int_a^b C(s) ds.
  double integral(double a, double b) const;
  /// Leftmost t >= a with int_a^t C = mass; +infinity if never reached.
  double advance(double a, double mass) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// z -> V(z, t) z together with its declared Lipschitz modulus.
struct Nonlinearity {
  std::string label;
  std::function<Complex(Complex, double)> term;
  LipschitzProfile lipschitz;
  /// V(z, t) real for all z, t (mass-conserving).
  bool real_potential = true;

  static Nonlinearity zero();
  /// V = c, modulus |c|.
  static Nonlinearity scalar(double c);
  /// V(z) = |z|^2 / (1 + eps |z|^2), modulus 9 / (8 eps).
  static Nonlinearity saturated(double epsilon);
  /// Parses "zero", "scalar:<c>", "saturated:<eps>".
  static Nonlinearity from_registry(const std::string& spec);
};

class LipschitzViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Random-triple spot check of |F(z) - F(z')| <= C(t) |z - z'|. Throws
/// LipschitzViolation with the offending triple on failure.
void check_lipschitz(const Nonlinearity& nl, std::mt19937_64& rng, int trials, double horizon);

/// Consecutive intervals covering [0, T], each of C-mass 1/2 except the last,
/// which has C-mass <= 1/2.
std::vector<Interval> subdivide(const LipschitzProfile& profile, double horizon);

struct PicardLogEntry {
  int interval = 0;
  int iteration = 0;
  double distance = 0.0;
};

class PicardDivergence : public std::runtime_error {
 public:
  PicardDivergence(const std::string& what, std::vector<PicardLogEntry> log)
      : std::runtime_error(what), log_(std::move(log)) {}
  const std::vector<PicardLogEntry>& log() const { return log_; }

 private:
  std::vector<PicardLogEntry> log_;
};

struct PicardOptions {
  int steps = 1024;
  int max_iterations = 200;
  /// Stop when sup_t ||u^{n+1} - u^n|| < tolerance * max(1, ||u0||).
  double tolerance = 1e-12;
};

struct PicardResult {
  Trajectory trajectory;
  std::vector<PicardLogEntry> log;
  int iterations = 0;
  double lipschitz_mass = 0.0;  ///< int_interval C
};

/// Nodes per axis of the grid on which the nonlinearity is evaluated: 4N + 1,
/// alias-free for cubic terms.
inline int nonlinearity_grid(int bandwidth) { return 4 * bandwidth + 1; }

/// V(u, t) u evaluated on the nonlinearity grid and projected to band N.
FourierField nonlinear_term(const Nonlinearity& nl, const FourierField& u, double t);

/// Fixed point of K on `interval` from u(interval.lo) = u0. The time integral
/// uses the trapezoid rule on the interaction-picture integrand
/// e^{-i (s - a) Delta} V(u(s), s) u(s) over the uniform m-step grid.
/// Throws std::invalid_argument if int C > 1/2 on the interval and
/// PicardDivergence if max_iterations is reached.
PicardResult picard_solve(const FourierField& u0, const Nonlinearity& nl, Interval interval,
                          const PicardOptions& options = {}, int interval_index = 0);

struct GlobalSolution {
  Trajectory trajectory;
  std::vector<Interval> intervals;
  std::vector<PicardLogEntry> log;
  /// ||u|| at 0 and at every interval end.
  std::vector<double> endpoint_norms;
  double lipschitz_mass = 0.0;  ///< int_0^T C
  /// 2^{1 + 2 int_0^T C} ||u0||.
  double a_priori_bound = 0.0;
};

/// Chains picard_solve over subdivide(C, T).
GlobalSolution global_solve(const FourierField& u0, const Nonlinearity& nl, double horizon,
                            const PicardOptions& options = {});

/// Largest d_{i+1} / d_i over consecutive iterations of the same interval,
/// skipping pairs whose d_i is at or below `floor` (round-off territory).
/// Returns 0 when no pair qualifies.
double max_contraction_ratio(const std::vector<PicardLogEntry>& log, double floor);

/// Step source with pieces -V(u(t_i), t_i) u(t_i) on [t_i, t_{i+1}).
StepSource nls_source(const Trajectory& traj, const Nonlinearity& nl);

}  // namespace schrolab

#endif  // SCHROLAB_NLS_SOLVER_HPP
