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
#include <limits>
#include <random>

#include "schrolab/kernels.hpp"
#include "schrolab/random_fields.hpp"
#include "schrolab/torus_field.hpp"

using namespace schrolab;

TEST_CASE("from_coefficients builds the constant function") {
  const ModeEntry e{{0, 0}, 1.0};
  const FourierField f = FourierField::from_coefficients(1, 1, {&e, 1});
  CHECK(f.coefficient({0, 0}) == Complex(1.0, 0.0));
  CHECK(f.coefficient({1, 0}) == Complex(0.0, 0.0));
  CHECK(f.coefficient({-1, 0}) == Complex(0.0, 0.0));
  CHECK(f.l2_norm() == 1.0);
}

TEST_CASE("from_coefficients rejects an out-of-band mode and names it") {
  const ModeEntry e{{2, 0}, 1.0};
  try {
    (void)FourierField::from_coefficients(1, 1, {&e, 1});
    FAIL("expected OutOfBandError");
  } catch (const OutOfBandError& err) {
    CHECK(err.mode() == Mode{2, 0});
  }
}

TEST_CASE("from_coefficients rejects duplicates") {
  const ModeEntry e[2] = {{{1, 0}, 1.0}, {{1, 0}, 2.0}};
  CHECK_THROWS_AS(FourierField::from_coefficients(1, 1, e), std::invalid_argument);
}

TEST_CASE("two orthogonal modes in 2D have norm sqrt 2") {
  const ModeEntry e[2] = {{{1, 0}, 1.0}, {{0, 1}, Complex(0.0, 1.0)}};
  const FourierField f = FourierField::from_coefficients(2, 3, e);
  CHECK(f.l2_norm() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("non-finite amplitudes are rejected") {
  ModeLattice lattice(1, 1);
  std::vector<Complex> c(lattice.size());
  c[1] = {std::numeric_limits<double>::quiet_NaN(), 0.0};
  CHECK_THROWS_AS(FourierField(lattice, c), std::invalid_argument);
  c[1] = {0.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(FourierField(lattice, c), std::invalid_argument);
}

TEST_CASE("lattice indexing is a bijection") {
  for (int dim : {1, 2}) {
    ModeLattice lattice(dim, 3);
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      const Mode k = lattice.mode(i);
      CHECK(lattice.contains(k));
      CHECK(lattice.index(k) == i);
      CHECK(lattice.squared_norm(i) == long(k[0]) * k[0] + long(k[1]) * k[1]);
    }
    CHECK_THROWS_AS((void)lattice.index({4, 0}), OutOfBandError);
  }
}

TEST_CASE("Plancherel: l2_norm^2 is the coefficient sum and the grid mean") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> band(0, 9);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 1 + trial % 2;
    const int n = band(rng);
    const FourierField f = random_band_field(dim, n, 0.5 + trial, rng);
    double sum = 0.0;
    for (const Complex& c : f.coefficients()) sum += std::norm(c);
    CHECK(f.mass() == doctest::Approx(sum).epsilon(1e-14));
    const int m = 2 * n + 1 + trial % 5;
    CHECK(evaluate_on_grid(f, m).grid_mass() == doctest::Approx(sum).epsilon(1e-12));
  }
}

TEST_CASE("e^{2 pi i x} on four points is (1, i, -1, -i)") {
  const ModeEntry e{{1, 0}, 1.0};
  const FourierField f = FourierField::from_coefficients(1, 1, {&e, 1});
  const SpatialSamples s = evaluate_on_grid(f, 4);
  const Complex expected[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  REQUIRE(s.size() == 4);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(s.values[std::size_t(j)] - expected[j]) < 1e-15);
}

TEST_CASE("grid round trip is lossless for M >= 2N + 1") {
  std::mt19937_64 rng(5);
  for (int dim : {1, 2}) {
    for (int n : {0, 1, 4, 7}) {
      const FourierField f = random_band_field(dim, n, 1.0, rng);
      for (int m : {2 * n + 1, 2 * n + 2, 3 * n + 4}) {
        const FourierField g = from_grid(evaluate_on_grid(f, m), n);
        CHECK(max_coefficient_distance(f, g) < 1e-14);
      }
    }
  }
  const FourierField f = random_band_field(1, 4, 1.0, rng);
  CHECK_THROWS_AS(from_grid(evaluate_on_grid(f, 8), 4), std::invalid_argument);
}

TEST_CASE("FFT synthesis agrees with the direct trigonometric sum") {
  std::mt19937_64 rng(9);
  for (int dim : {1, 2}) {
    const FourierField f = random_band_field(dim, 5, 1.0, rng);
    for (int m : {4, 11, 16}) {  // includes folding (m < 2N + 1)
      const SpatialSamples fast = evaluate_on_grid(f, m);
      std::vector<Complex> direct(fast.size());
      kernels::serial::synthesize_direct(f.lattice(), f.coefficients(), m, direct);
      for (std::size_t j = 0; j < direct.size(); ++j) {
        CHECK(std::abs(fast.values[j] - direct[j]) < 1e-13);
      }
    }
  }
}

TEST_CASE("with_bandwidth pads and truncates") {
  const ModeEntry e[2] = {{{1, 0}, 2.0}, {{3, 0}, 5.0}};
  const FourierField f = FourierField::from_coefficients(1, 3, e);
  const FourierField small = f.with_bandwidth(1);
  CHECK(small.bandwidth() == 1);
  CHECK(small.coefficient({1, 0}) == Complex(2.0, 0.0));
  CHECK(small.l2_norm() == 2.0);
  const FourierField big = f.with_bandwidth(6);
  CHECK(max_coefficient_distance(big, f) == 0.0);
}

TEST_CASE("linear_combination works across bands") {
  const ModeEntry a{{1, 0}, 1.0};
  const ModeEntry b{{2, 0}, 1.0};
  const FourierField f = FourierField::from_coefficients(1, 1, {&a, 1});
  const FourierField g = FourierField::from_coefficients(1, 2, {&b, 1});
  const FourierField h = linear_combination(2.0, f, Complex(0.0, 1.0), g);
  CHECK(h.bandwidth() == 2);
  CHECK(h.coefficient({1, 0}) == Complex(2.0, 0.0));
  CHECK(h.coefficient({2, 0}) == Complex(0.0, 1.0));
}
