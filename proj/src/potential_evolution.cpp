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

#include "schrolab/potential_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "schrolab/spectral.hpp"

namespace schrolab {
namespace {

void check_breakpoints(const std::vector<double>& bp, std::size_t pieces) {
  if (pieces == 0) throw std::invalid_argument("potential needs at least one piece");
  if (bp.size() != pieces + 1) {
    throw std::invalid_argument("potential needs one more breakpoint than pieces");
  }
  if (bp.front() != 0.0) throw std::invalid_argument("potential must start at t = 0");
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    if (!(bp[i] < bp[i + 1])) throw std::invalid_argument("potential breakpoints must increase");
  }
}

Eigen::VectorXcd to_vector(const FourierField& u) {
  auto c = u.coefficients();
  return Eigen::Map<const Eigen::VectorXcd>(c.data(), Eigen::Index(c.size()));
}

FourierField from_vector(const ModeLattice& lattice, const Eigen::VectorXcd& v) {
  return FourierField(lattice, std::vector<Complex>(v.data(), v.data() + v.size()));
}

// exp(i h (Delta + V)) for a band matrix V; diagonal V gets per-mode phases
// so that free and scalar flows are reproduced to rounding.
Eigen::MatrixXcd step_propagator(const ModeLattice& lattice, const Eigen::MatrixXcd& v, double h) {
  const auto n = v.rows();
  Eigen::MatrixXcd off = v;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() == 0.0) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      out(i, i) = kernels::free_phase(lattice.squared_norm(std::size_t(i)), h) *
                  std::exp(Complex(0.0, h) * v(i, i));
    }
    return out;
  }
  Eigen::MatrixXcd gen = Complex(0.0, h) * v;
  for (Eigen::Index i = 0; i < n; ++i) {
    gen(i, i) += Complex(0.0, -h * kFourPiSquared * double(lattice.squared_norm(std::size_t(i))));
  }
  return gen.exp();
}

}  // namespace

BoundedPotential BoundedPotential::multiplication(ModeLattice state,
                                                  std::vector<double> breakpoints,
                                                  std::vector<FourierField> profiles) {
  check_breakpoints(breakpoints, profiles.size());
  for (const FourierField& p : profiles) {
    if (p.dim() != state.dim() || p.bandwidth() != profiles.front().bandwidth()) {
      throw std::invalid_argument("potential profiles must share dimension and bandwidth");
    }
  }
  BoundedPotential v;
  v.kind_ = Kind::multiplication;
  v.state_ = state;
  v.breakpoints_ = std::move(breakpoints);
  v.profiles_ = std::move(profiles);
  v.finish();
  return v;
}

BoundedPotential BoundedPotential::operator_matrices(ModeLattice state,
                                                     std::vector<double> breakpoints,
                                                     std::vector<Eigen::MatrixXcd> matrices) {
  check_breakpoints(breakpoints, matrices.size());
  const auto n = Eigen::Index(state.size());
  for (const auto& m : matrices) {
    if (m.rows() != n || m.cols() != n) {
      throw std::invalid_argument("operator potential matrices must be square of side " +
                                  std::to_string(n));
    }
    if (!m.allFinite()) throw std::invalid_argument("operator potential has non-finite entries");
  }
  BoundedPotential v;
  v.kind_ = Kind::operator_matrix;
  v.state_ = state;
  v.breakpoints_ = std::move(breakpoints);
  v.matrices_ = std::move(matrices);
  v.finish();
  return v;
}

BoundedPotential BoundedPotential::zero(ModeLattice state, double horizon) {
  return multiplication(state, {0.0, horizon}, {FourierField::zero(state.dim(), 0)});
}

BoundedPotential BoundedPotential::scalar(ModeLattice state, Complex value, double horizon) {
  const ModeEntry entry{{0, 0}, value};
  return multiplication(state, {0.0, horizon},
                        {FourierField::from_coefficients(state.dim(), 0, {&entry, 1})});
}

void BoundedPotential::finish() {
  const auto n = Eigen::Index(state_.size());
  piece_matrices_.clear();
  norm_track_.clear();
  if (kind_ == Kind::multiplication) {
    const int nv = profiles_.front().bandwidth();
    const int grid = spectral::product_grid(state_.bandwidth(), nv);
    for (const FourierField& p : profiles_) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
      for (Eigen::Index r = 0; r < n; ++r) {
        const Mode k = state_.mode(std::size_t(r));
        for (Eigen::Index c = 0; c < n; ++c) {
          const Mode l = state_.mode(std::size_t(c));
          m(r, c) = p.coefficient({k[0] - l[0], k[1] - l[1]});
        }
      }
      piece_matrices_.push_back(std::move(m));
      double sup = 0.0;
      for (const Complex& x : evaluate_on_grid(p, grid).values) sup = std::max(sup, std::abs(x));
      norm_track_.push_back(sup);
    }
  } else {
    for (const auto& m : matrices_) {
      piece_matrices_.push_back(m);
      Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
      norm_track_.push_back(svd.singularValues().size() ? svd.singularValues()(0) : 0.0);
    }
  }
  self_adjoint_ = true;
  for (std::size_t p = 0; p < piece_matrices_.size(); ++p) {
    const auto& m = piece_matrices_[p];
    const double scale = std::max(1.0, norm_track_[p]);
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-13 * scale) self_adjoint_ = false;
  }
}

std::size_t BoundedPotential::piece_at(double t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const auto idx = std::size_t(std::max<std::ptrdiff_t>(it - breakpoints_.begin() - 1, 0));
  return std::min(idx, piece_count() - 1);
}

double BoundedPotential::norm_integral(double a, double b) const {
  double sum = 0.0;
  for (std::size_t p = 0; p < piece_count(); ++p) {
    const double lo = std::max(a, breakpoints_[p]);
    const double hi = std::min(b, breakpoints_[p + 1]);
    if (lo < hi) sum += (hi - lo) * norm_track_[p];
  }
  return sum;
}

Eigen::MatrixXcd BoundedPotential::averaged_matrix(double a, double b) const {
  if (!(a < b)) return piece_matrices_[piece_at(a)];
  const auto n = Eigen::Index(state_.size());
  Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t p = piece_at(a); p < piece_count(); ++p) {
    const double lo = std::max(a, breakpoints_[p]);
    const double hi = std::min(b, breakpoints_[p + 1]);
    if (lo >= b) break;
    if (lo < hi) avg += ((hi - lo) / (b - a)) * piece_matrices_[p];
  }
  return avg;
}

FourierField apply_potential(const BoundedPotential& potential, double t, const FourierField& u) {
  if (t < 0.0 || t > potential.horizon()) {
    throw std::out_of_range("time " + std::to_string(t) + " outside the potential's span");
  }
  if (u.lattice() != potential.state_lattice()) {
    throw std::invalid_argument("state does not live on the potential's lattice");
  }
  const std::size_t p = potential.piece_at(t);
  if (potential.kind() == BoundedPotential::Kind::operator_matrix) {
    return from_vector(u.lattice(), potential.matrices()[p] * to_vector(u));
  }
  const FourierField& profile = potential.profiles()[p];
  const int grid = spectral::product_grid(u.bandwidth(), profile.bandwidth());
  SpatialSamples values = evaluate_on_grid(u, grid);
  const SpatialSamples factor = evaluate_on_grid(profile, grid);
  for (std::size_t j = 0; j < values.size(); ++j) values.values[j] *= factor.values[j];
  return from_grid(values, u.bandwidth());
}

Trajectory evolve_with_potential(const FourierField& u0, const BoundedPotential& potential,
                                 double horizon, int steps, PotentialScheme scheme) {
  if (steps < 1) throw std::invalid_argument("evolve_with_potential needs at least one step");
  if (!(horizon > 0.0) || horizon > potential.horizon() * (1.0 + 1e-12)) {
    throw std::out_of_range("evolution horizon must lie in (0, potential span]");
  }
  const ModeLattice& lattice = potential.state_lattice();
  if (u0.lattice() != lattice) {
    throw std::invalid_argument("initial datum does not live on the potential's lattice");
  }
  const double h = horizon / steps;
  Trajectory traj;
  traj.times.reserve(std::size_t(steps) + 1);
  traj.states.reserve(std::size_t(steps) + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(u0);

  std::map<std::size_t, Eigen::MatrixXcd> propagators;  // by piece, for steps inside one piece
  Eigen::VectorXcd u = to_vector(u0);
  const auto& bp = potential.breakpoints();

  for (int i = 0; i < steps; ++i) {
    const double a = i * h;
    const double b = (i + 1 == steps) ? horizon : (i + 1) * h;
    const std::size_t p = potential.piece_at(a);
    const bool inside = b <= bp[p + 1];

    if (scheme == PotentialScheme::frozen_generator) {
      if (inside) {
        auto it = propagators.find(p);
        if (it == propagators.end()) {
          it = propagators.emplace(p, step_propagator(lattice, potential.piece_matrix(p), h)).first;
        }
        u = it->second * u;
      } else {
        u = step_propagator(lattice, potential.averaged_matrix(a, b), b - a) * u;
      }
    } else {
      const Eigen::VectorXcd f = inside ? Eigen::VectorXcd(-(potential.piece_matrix(p) * u))
                                        : Eigen::VectorXcd(-(potential.averaged_matrix(a, b) * u));
      for (Eigen::Index m = 0; m < u.size(); ++m) {
        const long q = lattice.squared_norm(std::size_t(m));
        const Complex g = kernels::backward_weight(q, 0.0, h) * f(m);
        u(m) = kernels::free_phase(q, h) * (u(m) - Complex(0.0, 1.0) * g);
      }
    }
    traj.times.push_back(b);
    traj.states.push_back(from_vector(lattice, u));
  }
  return traj;
}

GronwallReport gronwall_certificate(const Trajectory& traj, const BoundedPotential& potential,
                                    double ratio_tolerance, double drift_tolerance) {
  if (traj.size() == 0) throw std::invalid_argument("empty trajectory");
  GronwallReport report;
  report.ratio_tolerance = ratio_tolerance;
  report.drift_tolerance = drift_tolerance;
  report.bound_margin_min = 1.0;
  const double mass0 = traj.states.front().mass();
  const double norm0 = std::sqrt(mass0);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double mass = traj.states[i].mass();
    const double bound = mass0 * std::exp(2.0 * potential.norm_integral(0.0, traj.times[i]));
    double ratio = 0.0;
    if (bound > 0.0) {
      ratio = mass / bound;
    } else if (mass > 0.0) {
      ratio = std::numeric_limits<double>::infinity();
    }
    report.worst_ratio = std::max(report.worst_ratio, ratio);
    report.bound_margin_min = std::min(report.bound_margin_min, 1.0 - ratio);
    report.mass_drift_max = std::max(report.mass_drift_max, std::abs(std::sqrt(mass) - norm0));
  }
  report.bound_pass = report.worst_ratio <= 1.0 + ratio_tolerance;
  report.mass_checked = potential.self_adjoint();
  report.mass_pass = !report.mass_checked || report.mass_drift_max <= drift_tolerance;
  report.pass = report.bound_pass && report.mass_pass;
  return report;
}

StepSource induced_source(const Trajectory& traj, const BoundedPotential& potential) {
  if (traj.size() < 2) throw std::invalid_argument("induced source needs two or more samples");
  const ModeLattice& lattice = potential.state_lattice();
  std::vector<FourierField> pieces;
  pieces.reserve(traj.size() - 1);
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const Eigen::MatrixXcd v = potential.averaged_matrix(traj.times[i], traj.times[i + 1]);
    pieces.push_back(from_vector(lattice, -(v * to_vector(traj.states[i]))));
  }
  return StepSource(traj.times, std::move(pieces));
}

}  // namespace schrolab
