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

#include <cmath>
#include <numbers>
#include <random>

#include "schrolab/propagator.hpp"
#include "schrolab/random_fields.hpp"

using namespace schrolab;

namespace {

constexpr double kLambda1 = 4.0 * std::numbers::pi * std::numbers::pi;

FourierField unit_constant(int bandwidth = 0) {
  const ModeEntry e{{0, 0}, 1.0};
  return FourierField::from_coefficients(1, bandwidth, {&e, 1});
}

}  // namespace

TEST_CASE("free_evolve at t = 0 is the identity") {
  std::mt19937_64 rng(1);
  const FourierField f = random_band_field(2, 4, 1.0, rng);
  CHECK(max_coefficient_distance(free_evolve(f, 0.0), f) == 0.0);
}

TEST_CASE("free_evolve on e^{2 pi i x} multiplies by e^{-4 pi^2 i t}") {
  const ModeEntry e{{1, 0}, 1.0};
  const FourierField f = FourierField::from_coefficients(1, 1, {&e, 1});
  for (double t : {0.1, 0.5, 2.3}) {
    const Complex c = free_evolve(f, t).coefficient({1, 0});
    CHECK(std::abs(c - std::polar(1.0, -kLambda1 * t)) < 1e-12);
    CHECK(std::abs(c) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("modes {0, 1, 2} at t = 0.3 pick up per-mode phases") {
  const ModeEntry e[3] = {{{0, 0}, 1.0}, {{1, 0}, Complex(0.5, -1.0)}, {{2, 0}, 2.0}};
  const FourierField f = FourierField::from_coefficients(1, 2, e);
  const FourierField g = free_evolve(f, 0.3);
  for (const ModeEntry& m : e) {
    const double k = m.k[0];
    const Complex expected = m.amplitude * std::polar(1.0, -kLambda1 * k * k * 0.3);
    CHECK(std::abs(g.coefficient(m.k) - expected) < 1e-12);
  }
  CHECK(std::abs(g.l2_norm() - f.l2_norm()) < 1e-12);
}

TEST_CASE("unitarity and group law on random fields and times") {
  // Rounding s + t moves the phase by about 4 pi^2 |k|^2 ulp(s + t), so the
  // 1e-12 group-law tolerance needs |k|^2 |t| well below 1e4.
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> time(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const FourierField f = random_band_field(1 + trial % 2, 1 + trial % 8, 1.0, rng);
    const double s = time(rng);
    const double t = time(rng);
    CHECK(std::abs(free_evolve(f, t).l2_norm() - f.l2_norm()) <= 1e-12 * f.l2_norm());
    const FourierField a = free_evolve(free_evolve(f, s), t);
    const FourierField b = free_evolve(f, s + t);
    CHECK(max_coefficient_distance(a, b) <= 1e-12);
  }
}

TEST_CASE("constant unit source on [0, 1) transforms to amplitude 1") {
  const StepSource src = StepSource::constant(unit_constant(), 1.0);
  const FourierField g = duhamel_source_transform(src, {0.0, 1.0});
  CHECK(std::abs(g.coefficient({0, 0}) - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("plane-wave source matches the closed form and a 1e6-point Riemann sum") {
  const ModeEntry e{{1, 0}, 1.0};
  const StepSource src = StepSource::constant(FourierField::from_coefficients(1, 1, {&e, 1}), 1.0);
  const Complex g = duhamel_source_transform(src, {0.0, 1.0}).coefficient({1, 0});
  const Complex i(0.0, 1.0);
  const Complex closed = (std::exp(i * kLambda1) - 1.0) / (i * kLambda1);
  CHECK(std::abs(g - closed) < 1e-14);
  CHECK(std::abs(g) <= 1.0);

  const int n = 1000000;
  Complex riemann{};
  for (int j = 0; j < n; ++j) riemann += std::exp(i * kLambda1 * ((j + 0.5) / n));
  riemann /= double(n);
  CHECK(std::abs(g - riemann) < 1e-9);
}

TEST_CASE("zero-length and out-of-span intervals") {
  std::mt19937_64 rng(3);
  RandomSourceOptions options;
  const StepSource src = random_step_source(options, rng);
  CHECK(duhamel_source_transform(src, {0.4, 0.4}).l2_norm() == 0.0);
  CHECK_THROWS_AS(duhamel_source_transform(src, {0.5, 1.5}), std::out_of_range);
  CHECK_THROWS_AS(duhamel_source_transform(src, {-0.1, 0.5}), std::out_of_range);
}

TEST_CASE("source-to-norm bound on random step sources") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    RandomSourceOptions options;
    options.dim = 1 + trial % 2;
    options.bandwidth = 1 + trial % 6;
    options.pieces = 1 + trial % 20;
    const StepSource src = random_step_source(options, rng);
    double a = unit(rng), b = unit(rng);
    if (a > b) std::swap(a, b);
    double integral = 0.0;
    const auto& bp = src.breakpoints();
    for (std::size_t p = 0; p < src.piece_count(); ++p) {
      const double lo = std::max(a, bp[p]), hi = std::min(b, bp[p + 1]);
      if (hi > lo) integral += (hi - lo) * src.piece_norms()[p];
    }
    CHECK(duhamel_source_transform(src, {a, b}).l2_norm() <= integral + 1e-12);
  }
}

TEST_CASE("zero source gives free flow") {
  std::mt19937_64 rng(5);
  const FourierField u0 = random_band_field(1, 6, 1.0, rng);
  const StepSource src = StepSource::zero(u0.lattice(), 1.0);
  for (double t : {0.0, 0.2, 1.0}) {
    CHECK(max_coefficient_distance(duhamel_solution(u0, src, t), free_evolve(u0, t)) < 1e-15);
  }
}

TEST_CASE("constant unit source from zero data: amplitude -i t, norm t") {
  const StepSource src = StepSource::constant(unit_constant(), 1.0);
  const FourierField zero = FourierField::zero(1, 0);
  for (double t : {0.0, 0.25, 0.5, 0.9, 1.0}) {
    const FourierField u = duhamel_solution(zero, src, t);
    CHECK(std::abs(u.coefficient({0, 0}) - Complex(0.0, -t)) < 1e-15);
    CHECK(std::abs(u.l2_norm() - t) < 1e-12);
  }
  CHECK_THROWS_AS(duhamel_solution(zero, src, 1.5), std::out_of_range);
  CHECK_THROWS_AS(duhamel_solution(zero, src, -0.5), std::out_of_range);
}

TEST_CASE("triangle inequality ||u(t)|| <= ||u0|| + int ||f||") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    RandomSourceOptions options;
    options.bandwidth = 4;
    options.pieces = 16;
    const StepSource src = random_step_source(options, rng);
    const FourierField u0 = random_band_field(1, 4, unit(rng), rng);
    const double t = unit(rng);
    double integral = 0.0;
    const auto& bp = src.breakpoints();
    for (std::size_t p = 0; p < src.piece_count(); ++p) {
      const double hi = std::min(t, bp[p + 1]);
      if (hi > bp[p]) integral += (hi - bp[p]) * src.piece_norms()[p];
    }
    CHECK(duhamel_solution(u0, src, t).l2_norm() <= u0.l2_norm() + integral + 1e-12);
  }
}

TEST_CASE("single-piece source agrees with the per-mode ODE solution") {
  // i u' - lambda u = p  =>  u(t) = e^{-i lambda t} u0 + p (e^{-i lambda t} - 1) / lambda,
  // and u(t) = u0 - i p t for lambda = 0.
  std::mt19937_64 rng(7);
  const FourierField u0 = random_band_field(1, 5, 1.0, rng);
  const FourierField p = random_band_field(1, 5, 0.7, rng);
  const StepSource src = StepSource::constant(p, 2.0);
  for (double t : {0.13, 0.77, 1.91}) {
    const FourierField u = duhamel_solution(u0, src, t);
    for (int k = -5; k <= 5; ++k) {
      const double lambda = kLambda1 * k * k;
      const Complex a = u0.coefficient({k, 0});
      const Complex b = p.coefficient({k, 0});
      const Complex expected = k == 0 ? a - Complex(0.0, 1.0) * b * t
                                      : std::polar(1.0, -lambda * t) * a +
                                            b * (std::polar(1.0, -lambda * t) - 1.0) / lambda;
      CHECK(std::abs(u.coefficient({k, 0}) - expected) < 1e-12);
    }
  }
}

TEST_CASE("sample_trajectory") {
  const StepSource src = StepSource::constant(unit_constant(), 1.0);
  const FourierField zero = FourierField::zero(1, 0);
  const double one[1] = {0.0};
  const Trajectory single = sample_trajectory(unit_constant(), src, one);
  REQUIRE(single.size() == 1);
  CHECK(max_coefficient_distance(single.states[0], unit_constant()) == 0.0);

  const double times[3] = {0.0, 0.5, 1.0};
  const Trajectory traj = sample_trajectory(zero, src, times);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(traj.states[i].l2_norm() - times[i]) < 1e-12);

  const double unsorted[2] = {0.5, 0.2};
  CHECK_THROWS_AS(sample_trajectory(zero, src, unsorted), std::invalid_argument);

  std::mt19937_64 rng(8);
  const FourierField u0 = random_band_field(2, 3, 1.0, rng);
  const double many[4] = {0.0, 0.1, 0.6, 0.9};
  const Trajectory free = sample_trajectory(u0, StepSource::zero(u0.lattice(), 1.0), many);
  for (const auto& s : free.states) CHECK(std::abs(s.l2_norm() - 1.0) < 1e-12);
}

TEST_CASE("serial and parallel propagation agree") {
  std::mt19937_64 rng(9);
  RandomSourceOptions options;
  options.bandwidth = 12;
  const StepSource src = random_step_source(options, rng);
  const FourierField u0 = random_band_field(1, 12, 1.0, rng);
  const FourierField a = duhamel_solution(u0, src, 0.77, Execution::serial);
  const FourierField b = duhamel_solution(u0, src, 0.77, Execution::parallel);
  CHECK(max_coefficient_distance(a, b) == 0.0);
}

TEST_CASE("prefix table matches the direct transform") {
  std::mt19937_64 rng(10);
  RandomSourceOptions options;
  options.bandwidth = 3;
  const StepSource src = random_step_source(options, rng);
  const SourceTransformTable table(src);
  for (double t : {0.0, 0.01, 0.5, 0.999, 1.0}) {
    CHECK(max_coefficient_distance(table.prefix(t), duhamel_source_transform(src, {0.0, t})) <
          1e-13);
  }
}

TEST_CASE("StepSource validation") {
  const FourierField p = unit_constant();
  CHECK_THROWS_AS(StepSource({0.0, 0.5, 0.5, 1.0}, {p, p, p}), std::invalid_argument);
  CHECK_THROWS_AS(StepSource({0.1, 1.0}, {p}), std::invalid_argument);
  CHECK_THROWS_AS(StepSource({0.0, 1.0}, {p, p}), std::invalid_argument);
  CHECK_THROWS_AS(StepSource({0.0, 0.5, 1.0}, {p, unit_constant(2)}), std::invalid_argument);
  const StepSource ok({0.0, 0.25, 1.0}, {p, p});
  CHECK(ok.l1_mass() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ok.piece_at(1.0) == 1);
  CHECK(ok.piece_at(0.25) == 1);
  CHECK(ok.piece_at(0.2) == 0);
}
