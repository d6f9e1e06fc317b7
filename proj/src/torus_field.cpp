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

#include "schrolab/torus_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "schrolab/spectral.hpp"

namespace schrolab {
namespace {

std::string mode_string(Mode k) {
  return "(" + std::to_string(k[0]) + ", " + std::to_string(k[1]) + ")";
}

}  // namespace

OutOfBandError::OutOfBandError(Mode mode, int bandwidth)
    : std::invalid_argument("mode " + mode_string(mode) + " outside bandwidth " +
                            std::to_string(bandwidth)),
      mode_(mode) {}

ModeLattice::ModeLattice(int dim, int bandwidth) : dim_(dim), bandwidth_(bandwidth) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("dimension must be 1 or 2");
  if (bandwidth < 0) throw std::invalid_argument("bandwidth must be >= 0");
  const auto w = std::size_t(width());
  size_ = dim == 1 ? w : w * w;
}

bool ModeLattice::contains(Mode k) const {
  if (dim_ == 1 && k[1] != 0) return false;
  return std::abs(k[0]) <= bandwidth_ && std::abs(k[1]) <= bandwidth_;
}

std::size_t ModeLattice::index(Mode k) const {
  if (!contains(k)) throw OutOfBandError(k, bandwidth_);
  if (dim_ == 1) return std::size_t(k[0] + bandwidth_);
  return std::size_t(k[0] + bandwidth_) * std::size_t(width()) +
         std::size_t(k[1] + bandwidth_);
}

Mode ModeLattice::mode(std::size_t index) const {
  if (dim_ == 1) return {int(index) - bandwidth_, 0};
  const auto w = std::size_t(width());
  return {int(index / w) - bandwidth_, int(index % w) - bandwidth_};
}

long ModeLattice::squared_norm(std::size_t index) const {
  const Mode k = mode(index);
  return long(k[0]) * k[0] + long(k[1]) * k[1];
}

FourierField::FourierField(ModeLattice lattice)
    : lattice_(lattice), coeffs_(lattice.size()) {}

FourierField::FourierField(ModeLattice lattice, std::vector<Complex> coeffs)
    : lattice_(lattice), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != lattice_.size()) {
    throw std::invalid_argument("coefficient count does not match the mode lattice");
  }
  for (const Complex& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw std::invalid_argument("non-finite Fourier coefficient");
    }
  }
}

FourierField FourierField::from_coefficients(int dim, int bandwidth,
                                             std::span<const ModeEntry> entries) {
  ModeLattice lattice(dim, bandwidth);
  std::vector<Complex> coeffs(lattice.size());
  std::vector<bool> seen(lattice.size(), false);
  for (const ModeEntry& e : entries) {
    const std::size_t i = lattice.index(e.k);
    if (seen[i]) {
      throw std::invalid_argument("duplicate mode " + mode_string(e.k));
    }
    seen[i] = true;
    coeffs[i] = e.amplitude;
  }
  return FourierField(lattice, std::move(coeffs));
}

Complex FourierField::coefficient(Mode k) const {
  return lattice_.contains(k) ? coeffs_[lattice_.index(k)] : Complex{};
}

double FourierField::mass() const {
  double sum = 0.0;
  for (const Complex& c : coeffs_) sum += std::norm(c);
  return sum;
}

double FourierField::l2_norm() const { return std::sqrt(mass()); }

FourierField FourierField::with_bandwidth(int bandwidth) const {
  if (bandwidth == this->bandwidth()) return *this;
  ModeLattice target(dim(), bandwidth);
  std::vector<Complex> coeffs(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) coeffs[i] = coefficient(target.mode(i));
  return FourierField(target, std::move(coeffs));
}

FourierField linear_combination(Complex alpha, const FourierField& f, Complex beta,
                                const FourierField& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("linear_combination: dimension mismatch");
  const int bandwidth = std::max(f.bandwidth(), g.bandwidth());
  ModeLattice lattice(f.dim(), bandwidth);
  std::vector<Complex> coeffs(lattice.size());
  if (f.bandwidth() == g.bandwidth()) {
    auto fc = f.coefficients();
    auto gc = g.coefficients();
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = alpha * fc[i] + beta * gc[i];
  } else {
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const Mode k = lattice.mode(i);
      coeffs[i] = alpha * f.coefficient(k) + beta * g.coefficient(k);
    }
  }
  return FourierField(lattice, std::move(coeffs));
}

double max_coefficient_distance(const FourierField& f, const FourierField& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("dimension mismatch");
  ModeLattice lattice(f.dim(), std::max(f.bandwidth(), g.bandwidth()));
  double worst = 0.0;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const Mode k = lattice.mode(i);
    worst = std::max(worst, std::abs(f.coefficient(k) - g.coefficient(k)));
  }
  return worst;
}

double SpatialSamples::grid_mass() const {
  double sum = 0.0;
  for (const Complex& v : values) sum += std::norm(v);
  return values.empty() ? 0.0 : sum / double(values.size());
}

SpatialSamples evaluate_on_grid(const FourierField& f, int resolution) {
  if (resolution < 1) throw std::invalid_argument("grid resolution must be >= 1");
  return {f.dim(), resolution,
          spectral::synthesize(f.lattice(), f.coefficients(), resolution)};
}

FourierField from_grid(const SpatialSamples& samples, int bandwidth) {
  ModeLattice lattice(samples.dim, bandwidth);
  return FourierField(lattice, spectral::analyze(samples.dim, samples.values,
                                                 samples.resolution, lattice));
}

}  // namespace schrolab
