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

#include "schrolab/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace schrolab {
namespace {

double unit_interval_open_left(std::mt19937_64& rng) {
  // uniform on (0, 1]
  return 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

std::vector<Complex> gaussian_coefficients(std::size_t count, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> coeffs(count);
  for (Complex& c : coeffs) {
    const double re = normal(rng);
    const double im = normal(rng);
    c = {re, im};
  }
  return coeffs;
}

void rescale(std::vector<Complex>& coeffs, double norm) {
  double sum = 0.0;
  for (const Complex& c : coeffs) sum += std::norm(c);
  const double factor = sum > 0.0 ? norm / std::sqrt(sum) : 0.0;
  for (Complex& c : coeffs) c *= factor;
}

}  // namespace

FourierField random_band_field(int dim, int bandwidth, double norm, std::mt19937_64& rng) {
  ModeLattice lattice(dim, bandwidth);
  std::vector<Complex> coeffs = gaussian_coefficients(lattice.size(), rng);
  rescale(coeffs, norm);
  return FourierField(lattice, std::move(coeffs));
}

FourierField random_real_field(int dim, int bandwidth, double norm, std::mt19937_64& rng) {
  ModeLattice lattice(dim, bandwidth);
  std::vector<Complex> coeffs = gaussian_coefficients(lattice.size(), rng);
  // Index i and size - 1 - i hold k and -k.
  const std::size_t n = lattice.size();
  for (std::size_t i = 0; i < n / 2; ++i) coeffs[n - 1 - i] = std::conj(coeffs[i]);
  coeffs[n / 2] = coeffs[n / 2].real();
  rescale(coeffs, norm);
  return FourierField(lattice, std::move(coeffs));
}

StepSource random_step_source(const RandomSourceOptions& options, std::mt19937_64& rng) {
  if (options.pieces < 1 || !(options.horizon > 0.0)) {
    throw std::invalid_argument("random_step_source: need pieces >= 1 and T > 0");
  }
  const int m = options.pieces;
  std::vector<double> breakpoints(std::size_t(m) + 1);
  if (options.uniform_breakpoints) {
    for (int i = 0; i <= m; ++i) breakpoints[std::size_t(i)] = options.horizon * i / m;
  } else {
    // Sorted draws; redraw in the (measure-zero) event of a tie.
    std::uniform_real_distribution<double> draw(0.0, options.horizon);
    do {
      breakpoints.front() = 0.0;
      breakpoints.back() = options.horizon;
      for (int i = 1; i < m; ++i) breakpoints[std::size_t(i)] = draw(rng);
      std::sort(breakpoints.begin() + 1, breakpoints.end() - 1);
    } while (std::adjacent_find(breakpoints.begin(), breakpoints.end(),
                                [](double a, double b) { return !(a < b); }) != breakpoints.end());
  }
  std::vector<FourierField> pieces;
  pieces.reserve(std::size_t(m));
  for (int i = 0; i < m; ++i) {
    const double norm = unit_interval_open_left(rng);
    pieces.push_back(random_band_field(options.dim, options.bandwidth, norm, rng));
  }
  return StepSource(std::move(breakpoints), std::move(pieces));
}

BoundedPotential random_potential(const ModeLattice& state, const RandomPotentialOptions& options,
                                  std::mt19937_64& rng) {
  if (options.pieces < 1 || !(options.horizon > 0.0)) {
    throw std::invalid_argument("random_potential: need pieces >= 1 and T > 0");
  }
  std::vector<double> breakpoints(std::size_t(options.pieces) + 1);
  for (int i = 0; i <= options.pieces; ++i) {
    breakpoints[std::size_t(i)] = options.horizon * i / options.pieces;
  }
  switch (options.kind) {
    case RandomPotentialKind::real_multiplication:
    case RandomPotentialKind::complex_multiplication: {
      std::vector<FourierField> profiles;
      for (int i = 0; i < options.pieces; ++i) {
        const double norm = options.scale * unit_interval_open_left(rng);
        profiles.push_back(options.kind == RandomPotentialKind::real_multiplication
                               ? random_real_field(state.dim(), options.profile_bandwidth, norm, rng)
                               : random_band_field(state.dim(), options.profile_bandwidth, norm, rng));
      }
      return BoundedPotential::multiplication(state, std::move(breakpoints), std::move(profiles));
    }
    case RandomPotentialKind::operator_matrix: {
      const auto n = Eigen::Index(state.size());
      std::normal_distribution<double> normal(0.0, 1.0);
      std::vector<Eigen::MatrixXcd> matrices;
      for (int i = 0; i < options.pieces; ++i) {
        Eigen::MatrixXcd a(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
          for (Eigen::Index c = 0; c < n; ++c) {
            const double re = normal(rng);
            const double im = normal(rng);
            a(r, c) = {re, im};
          }
        }
        const double norm = options.scale * unit_interval_open_left(rng);
        a *= norm / a.norm();
        matrices.push_back(std::move(a));
      }
      return BoundedPotential::operator_matrices(state, std::move(breakpoints),
                                                 std::move(matrices));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace schrolab
