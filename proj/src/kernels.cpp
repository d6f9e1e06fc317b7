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

#include "schrolab/kernels.hpp"

#include <cmath>
#include <cstdint>

namespace schrolab::kernels {
namespace {

// Below this many iterations the OpenMP fork costs more than the loop.
constexpr std::int64_t kParallelThreshold = 2048;

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace

Complex free_phase(long squared_norm, double t) {
  if (squared_norm == 0) return {1.0, 0.0};
  // 4 pi^2 q t radians = 2 pi q t cycles.
  const double cycles = double(squared_norm) * (kTwoPi * t);
  const double angle = -kTwoPi * std::remainder(cycles, 1.0);
  return {std::cos(angle), std::sin(angle)};
}

Complex backward_weight(long squared_norm, double a, double b) {
  const double length = b - a;
  if (squared_norm == 0) return {length, 0.0};
  const double lambda = kFourPiSquared * double(squared_norm);
  const Complex centre = std::conj(free_phase(squared_norm, 0.5 * (a + b)));
  return centre * (length * sinc(0.5 * lambda * length));
}

namespace serial {

void free_evolve(const ModeLattice& lattice, std::span<const Complex> in, double t,
                 std::span<Complex> out) {
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    out[i] = free_phase(lattice.squared_norm(i), t) * in[i];
  }
}

void accumulate_backward_integral(const ModeLattice& lattice,
                                  std::span<const Complex> piece, double a, double b,
                                  std::span<Complex> acc) {
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    acc[i] += piece[i] * backward_weight(lattice.squared_norm(i), a, b);
  }
}

void synthesize_direct(const ModeLattice& lattice, std::span<const Complex> coeffs,
                       int resolution, std::span<Complex> out) {
  const std::size_t points = out.size();
  for (std::size_t j = 0; j < points; ++j) {
    const double x0 = lattice.dim() == 1 ? double(j) / resolution
                                         : double(j / std::size_t(resolution)) / resolution;
    const double x1 = lattice.dim() == 1 ? 0.0 : double(j % std::size_t(resolution)) / resolution;
    Complex sum{};
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      const Mode k = lattice.mode(i);
      const double angle = kTwoPi * (k[0] * x0 + k[1] * x1);
      sum += coeffs[i] * Complex(std::cos(angle), std::sin(angle));
    }
    out[j] = sum;
  }
}

void squared_modulus(std::span<const Complex> in, std::span<double> out) {
  for (std::size_t j = 0; j < in.size(); ++j) out[j] = std::norm(in[j]);
}

}  // namespace serial

namespace parallel {

void free_evolve(const ModeLattice& lattice, std::span<const Complex> in, double t,
                 std::span<Complex> out) {
  const auto n = std::int64_t(lattice.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = free_phase(lattice.squared_norm(std::size_t(i)), t) * in[i];
  }
}

void accumulate_backward_integral(const ModeLattice& lattice,
                                  std::span<const Complex> piece, double a, double b,
                                  std::span<Complex> acc) {
  const auto n = std::int64_t(lattice.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::int64_t i = 0; i < n; ++i) {
    acc[i] += piece[i] * backward_weight(lattice.squared_norm(std::size_t(i)), a, b);
  }
}

void synthesize_direct(const ModeLattice& lattice, std::span<const Complex> coeffs,
                       int resolution, std::span<Complex> out) {
  const auto points = std::int64_t(out.size());
  const auto modes = lattice.size();
#pragma omp parallel for schedule(static) if (points * std::int64_t(modes) >= kParallelThreshold)
  for (std::int64_t j = 0; j < points; ++j) {
    const auto uj = std::size_t(j);
    const double x0 = lattice.dim() == 1 ? double(uj) / resolution
                                         : double(uj / std::size_t(resolution)) / resolution;
    const double x1 = lattice.dim() == 1 ? 0.0 : double(uj % std::size_t(resolution)) / resolution;
    Complex sum{};
    for (std::size_t i = 0; i < modes; ++i) {
      const Mode k = lattice.mode(i);
      const double angle = kTwoPi * (k[0] * x0 + k[1] * x1);
      sum += coeffs[i] * Complex(std::cos(angle), std::sin(angle));
    }
    out[uj] = sum;
  }
}

void squared_modulus(std::span<const Complex> in, std::span<double> out) {
  const auto n = std::int64_t(in.size());
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (std::int64_t j = 0; j < n; ++j) out[j] = std::norm(in[j]);
}

}  // namespace parallel
}  // namespace schrolab::kernels
