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

#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>
#include <random>

#include "schrolab/ck_decomposition.hpp"
#include "schrolab/potential_evolution.hpp"
#include "schrolab/random_fields.hpp"

using namespace schrolab;

namespace {

FourierField two_cos(int bandwidth = 1) {
  const ModeEntry e[2] = {{{-1, 0}, 1.0}, {{1, 0}, 1.0}};
  return FourierField::from_coefficients(1, bandwidth, e);
}

BoundedPotential cos_potential(const ModeLattice& state, double horizon) {
  return BoundedPotential::multiplication(state, {0.0, horizon}, {two_cos()});
}

double max_distance(const Trajectory& a, const Trajectory& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, max_coefficient_distance(a.states[i], b.states[i]));
  }
  return worst;
}

}  // namespace

TEST_CASE("apply_potential: zero and real constant") {
  std::mt19937_64 rng(1);
  const FourierField u = random_band_field(2, 3, 1.0, rng);
  CHECK(apply_potential(BoundedPotential::zero(u.lattice(), 1.0), 0.5, u).l2_norm() == 0.0);
  const FourierField cu = apply_potential(BoundedPotential::scalar(u.lattice(), 2.5, 1.0), 0.5, u);
  for (std::size_t i = 0; i < u.lattice().size(); ++i) {
    CHECK(std::abs(cu.coefficients()[i] - 2.5 * u.coefficients()[i]) < 1e-15);
  }
}

TEST_CASE("2 cos(2 pi x) times e^{2 pi i x} is modes 0 and 2") {
  const ModeEntry e{{1, 0}, 1.0};
  const FourierField u = FourierField::from_coefficients(1, 3, {&e, 1});
  const FourierField vu = apply_potential(cos_potential(u.lattice(), 1.0), 0.2, u);
  CHECK(std::abs(vu.coefficient({0, 0}) - 1.0) < 1e-14);
  CHECK(std::abs(vu.coefficient({2, 0}) - 1.0) < 1e-14);
  CHECK(std::abs(vu.l2_norm() - std::sqrt(2.0)) < 1e-14);
  CHECK_THROWS_AS(apply_potential(cos_potential(u.lattice(), 1.0), 1.5, u), std::out_of_range);
}

TEST_CASE("product is truncated back to the state band") {
  const ModeEntry e{{2, 0}, 1.0};
  const FourierField u = FourierField::from_coefficients(1, 2, {&e, 1});
  const FourierField vu = apply_potential(cos_potential(u.lattice(), 1.0), 0.0, u);
  CHECK(vu.bandwidth() == 2);
  CHECK(std::abs(vu.coefficient({1, 0}) - 1.0) < 1e-14);
  CHECK(std::abs(vu.l2_norm() - 1.0) < 1e-14);
}

TEST_CASE("operator potentials act by matrix-vector product") {
  std::mt19937_64 rng(2);
  const ModeLattice state(1, 2);
  RandomPotentialOptions options;
  options.kind = RandomPotentialKind::operator_matrix;
  options.pieces = 3;
  const BoundedPotential v = random_potential(state, options, rng);
  const FourierField u = random_band_field(1, 2, 1.0, rng);
  const FourierField vu = apply_potential(v, 0.5, u);
  const Eigen::MatrixXcd& m = v.matrices()[v.piece_at(0.5)];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Complex sum{};
    for (Eigen::Index c = 0; c < m.cols(); ++c) sum += m(r, c) * u.coefficients()[std::size_t(c)];
    CHECK(std::abs(vu.coefficients()[std::size_t(r)] - sum) < 1e-14);
  }
  for (std::size_t p = 0; p < v.piece_count(); ++p) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v.matrices()[p]);
    CHECK(v.norm_track()[p] == doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));
  }
  CHECK_FALSE(v.self_adjoint());
}

TEST_CASE("norm_track of multiplication potentials bounds the projected operator norm") {
  std::mt19937_64 rng(3);
  const ModeLattice state(1, 4);
  for (auto kind : {RandomPotentialKind::real_multiplication,
                    RandomPotentialKind::complex_multiplication}) {
    RandomPotentialOptions options;
    options.kind = kind;
    const BoundedPotential v = random_potential(state, options, rng);
    CHECK(v.self_adjoint() == (kind == RandomPotentialKind::real_multiplication));
    for (std::size_t p = 0; p < v.piece_count(); ++p) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v.piece_matrix(p));
      CHECK(svd.singularValues()(0) <= v.norm_track()[p] + 1e-12);
    }
  }
  const BoundedPotential c = BoundedPotential::scalar(state, Complex(0.0, -3.0), 1.0);
  CHECK(c.norm_track()[0] == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("V = 0 gives exact free flow for any m") {
  std::mt19937_64 rng(4);
  const FourierField u0 = random_band_field(1, 6, 1.0, rng);
  for (int m : {1, 7, 64}) {
    const Trajectory traj =
        evolve_with_potential(u0, BoundedPotential::zero(u0.lattice(), 1.0), 1.0, m);
    REQUIRE(traj.size() == std::size_t(m) + 1);
    CHECK(traj.times.back() == 1.0);
    for (std::size_t i = 0; i < traj.size(); ++i) {
      CHECK(max_coefficient_distance(traj.states[i], free_evolve(u0, traj.times[i])) < 1e-13);
    }
  }
}

TEST_CASE("scalar potential: e^{ict} times free flow, mass conserved") {
  std::mt19937_64 rng(5);
  const FourierField u0 = random_band_field(1, 6, 1.0, rng);
  const double c = 1.7;
  const int m = 1 << 12;
  for (auto scheme : {PotentialScheme::frozen_generator, PotentialScheme::exponential_euler}) {
    const Trajectory traj =
        evolve_with_potential(u0, BoundedPotential::scalar(u0.lattice(), c, 1.0), 1.0, m, scheme);
    const double t = traj.times.back();
    const FourierField expected =
        linear_combination(std::polar(1.0, c * t), free_evolve(u0, t), 0.0, u0);
    if (scheme == PotentialScheme::frozen_generator) {
      CHECK(max_coefficient_distance(traj.states.back(), expected) < 1e-8);
      for (const auto& s : traj.states) CHECK(std::abs(s.l2_norm() - 1.0) < 1e-10);
    } else {
      // Freezing u_i over a step ignores its own rotation e^{-i lambda s}, so the
      // first-order error constant is about c lambda_max T.
      const double lambda_max = kFourPiSquared * 36.0;
      CHECK(max_coefficient_distance(traj.states.back(), expected) < c * lambda_max / m);
    }
  }
}

TEST_CASE("exponential Euler self-convergence on a random step potential") {
  std::mt19937_64 rng(6);
  // Band 2 keeps lambda_max h below 1 from m = 2^8 on, the asymptotic regime.
  const ModeLattice state(1, 2);
  RandomPotentialOptions options;
  options.kind = RandomPotentialKind::complex_multiplication;
  options.pieces = 4;
  const BoundedPotential v = random_potential(state, options, rng);
  const FourierField u0 = random_band_field(1, 2, 1.0, rng);
  const FourierField reference =
      evolve_with_potential(u0, v, 1.0, 1 << 16, PotentialScheme::exponential_euler).states.back();
  double previous = 0.0;
  for (int m = 1 << 8; m <= 1 << 12; m *= 2) {
    const double err = max_coefficient_distance(
        evolve_with_potential(u0, v, 1.0, m, PotentialScheme::exponential_euler).states.back(),
        reference);
    if (previous > 0.0) {
      CHECK(err < previous);
      CHECK(previous / err >= 1.8);
    }
    previous = err;
  }
}

TEST_CASE("frozen generator and exponential Euler converge to the same solution") {
  std::mt19937_64 rng(7);
  const ModeLattice state(1, 3);
  RandomPotentialOptions options;
  options.kind = RandomPotentialKind::operator_matrix;
  const BoundedPotential v = random_potential(state, options, rng);
  const FourierField u0 = random_band_field(1, 3, 1.0, rng);
  const Trajectory a = evolve_with_potential(u0, v, 1.0, 1 << 14);
  const Trajectory b = evolve_with_potential(u0, v, 1.0, 1 << 14, PotentialScheme::exponential_euler);
  CHECK(max_distance(a, b) < 1e-3);
}

TEST_CASE("Gronwall: V = 0 holds with equality") {
  std::mt19937_64 rng(8);
  const FourierField u0 = random_band_field(1, 4, 1.0, rng);
  const BoundedPotential v = BoundedPotential::zero(u0.lattice(), 1.0);
  const GronwallReport r = gronwall_certificate(evolve_with_potential(u0, v, 1.0, 64), v);
  CHECK(r.worst_ratio == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.pass);
}

TEST_CASE("Gronwall: real 2 cos(2 pi x) conserves mass") {
  std::mt19937_64 rng(9);
  const FourierField u0 = random_band_field(1, 5, 1.0, rng);
  const BoundedPotential v = cos_potential(u0.lattice(), 1.0);
  const GronwallReport r = gronwall_certificate(evolve_with_potential(u0, v, 1.0, 1 << 12), v);
  CHECK(r.mass_checked);
  CHECK(r.mass_drift_max <= 1e-8);
  CHECK(r.pass);
}

TEST_CASE("Gronwall: V = i decays like e^{-t}") {
  std::mt19937_64 rng(10);
  const FourierField u0 = random_band_field(1, 4, 1.0, rng);
  const BoundedPotential v = BoundedPotential::scalar(u0.lattice(), Complex(0.0, 1.0), 1.0);
  const Trajectory traj = evolve_with_potential(u0, v, 1.0, 1 << 12);
  for (std::size_t i = 0; i < traj.size(); i += 256) {
    CHECK(std::abs(traj.states[i].l2_norm() - std::exp(-traj.times[i])) < 1e-10);
  }
  const GronwallReport r = gronwall_certificate(traj, v);
  CHECK_FALSE(r.mass_checked);
  CHECK(r.pass);
}

TEST_CASE("Gronwall: V = -i needs the factor 2 in the exponent") {
  // ||u(t)||^2 = e^{2t} ||u0||^2 with int ||V|| = t: the squared-norm bound
  // must read exp(2 int ||V||); exp(int ||V||) alone is exceeded.
  std::mt19937_64 rng(11);
  const FourierField u0 = random_band_field(1, 4, 1.0, rng);
  const BoundedPotential v = BoundedPotential::scalar(u0.lattice(), Complex(0.0, -1.0), 1.0);
  const Trajectory traj = evolve_with_potential(u0, v, 1.0, 1 << 10);
  const double mass = traj.states.back().mass();
  CHECK(mass == doctest::Approx(std::exp(2.0)).epsilon(1e-10));
  CHECK(mass > std::exp(1.0) * 1.5);
  const GronwallReport r = gronwall_certificate(traj, v);
  CHECK(r.worst_ratio == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.bound_pass);
}

TEST_CASE("Gronwall bound on random potentials of every kind") {
  std::mt19937_64 rng(12);
  const ModeLattice state(1, 4);
  for (auto kind : {RandomPotentialKind::real_multiplication,
                    RandomPotentialKind::complex_multiplication,
                    RandomPotentialKind::operator_matrix}) {
    RandomPotentialOptions options;
    options.kind = kind;
    const BoundedPotential v = random_potential(state, options, rng);
    const FourierField u0 = random_band_field(1, 4, 1.0, rng);
    const GronwallReport r = gronwall_certificate(evolve_with_potential(u0, v, 1.0, 1 << 10), v);
    CHECK(r.pass);
  }
}

TEST_CASE("induced source") {
  std::mt19937_64 rng(13);
  const FourierField u0 = random_band_field(1, 4, 1.0, rng);
  const BoundedPotential zero = BoundedPotential::zero(u0.lattice(), 1.0);
  CHECK(induced_source(evolve_with_potential(u0, zero, 1.0, 16), zero).l1_mass() == 0.0);

  const double c = -0.8;
  const BoundedPotential scalar = BoundedPotential::scalar(u0.lattice(), c, 1.0);
  const Trajectory traj = evolve_with_potential(u0, scalar, 1.0, 32);
  const StepSource src = induced_source(traj, scalar);
  for (std::size_t i = 0; i < src.piece_count(); ++i) {
    CHECK(src.piece_norms()[i] == doctest::Approx(std::abs(c) * traj.states[i].l2_norm()));
  }

  for (int trial = 0; trial < 10; ++trial) {
    RandomPotentialOptions options;
    options.kind = RandomPotentialKind(trial % 3);
    const BoundedPotential v = random_potential(u0.lattice(), options, rng);
    const Trajectory t2 = evolve_with_potential(u0, v, 1.0, 256);
    double sup = 0.0;
    for (const auto& s : t2.states) sup = std::max(sup, s.l2_norm());
    CHECK(induced_source(t2, v).l1_mass() <= v.norm_integral(0.0, 1.0) * sup + 1e-12);
  }
}

TEST_CASE("induced source feeds the dyadic certificate") {
  std::mt19937_64 rng(14);
  const FourierField u0 = random_band_field(1, 4, 1.0, rng);
  const BoundedPotential v = random_potential(u0.lattice(), {}, rng);
  const StepSource src = induced_source(evolve_with_potential(u0, v, 1.0, 512), v);
  for (const auto& r : certify_sweep(src, 6, minimum_certificate_samples(6))) CHECK(r.pass);
}
