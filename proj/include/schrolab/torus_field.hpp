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

#ifndef SCHROLAB_TORUS_FIELD_HPP
#define SCHROLAB_TORUS_FIELD_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace schrolab {

using Complex = std::complex<double>;

/// Lattice vector k in Z^d. For d = 1 the second component must be 0.
using Mode = std::array<int, 2>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kFourPiSquared = 4.0 * std::numbers::pi * std::numbers::pi;

/// Thrown when a mode lies outside the band {k : |k|_inf <= N}.
class OutOfBandError : public std::invalid_argument {
 public:
  OutOfBandError(Mode mode, int bandwidth);
  Mode mode() const { return mode_; }

 private:
  Mode mode_;
};

/// Index set {k in Z^d : |k|_inf <= N}, stored row-major with the first
/// axis slowest. Index 0 is k = (-N, ..., -N).
class ModeLattice {
 public:
  ModeLattice() = default;
  ModeLattice(int dim, int bandwidth);

  int dim() const { return dim_; }
  int bandwidth() const { return bandwidth_; }
  int width() const { return 2 * bandwidth_ + 1; }
  std::size_t size() const { return size_; }

  bool contains(Mode k) const;
  std::size_t index(Mode k) const;
  Mode mode(std::size_t index) const;

  /// |k|^2 as an integer; the Laplacian eigenvalue is -4 pi^2 |k|^2.
  long squared_norm(std::size_t index) const;

  friend bool operator==(const ModeLattice&, const ModeLattice&) = default;

 private:
  int dim_ = 1;
  int bandwidth_ = 0;
  std::size_t size_ = 1;
};

struct ModeEntry {
  Mode k;
  Complex amplitude;
};

/// Band-limited function on the torus R^d / Z^d in the basis e^{2 pi i k.x}.
/// Immutable value type; every operation returns a new field.
class FourierField {
 public:
  FourierField() : FourierField(ModeLattice{1, 0}) {}
  explicit FourierField(ModeLattice lattice);
  FourierField(ModeLattice lattice, std::vector<Complex> coeffs);

  static FourierField zero(int dim, int bandwidth) {
    return FourierField(ModeLattice{dim, bandwidth});
  }
  static FourierField from_coefficients(int dim, int bandwidth,
                                        std::span<const ModeEntry> entries);

  int dim() const { return lattice_.dim(); }
  int bandwidth() const { return lattice_.bandwidth(); }
  const ModeLattice& lattice() const { return lattice_; }
  std::span<const Complex> coefficients() const { return coeffs_; }

  /// Coefficient of mode k, zero when k is out of band.
  Complex coefficient(Mode k) const;

  /// Sum of |c_k|^2.
  double mass() const;
  double l2_norm() const;

  /// Zero-pads or truncates to a new bandwidth.
  FourierField with_bandwidth(int bandwidth) const;

 private:
  ModeLattice lattice_;
  std::vector<Complex> coeffs_;
};

inline double l2_norm(const FourierField& f) { return f.l2_norm(); }

/// alpha f + beta g on the larger of the two bands.
FourierField linear_combination(Complex alpha, const FourierField& f, Complex beta,
                                const FourierField& g);

/// Largest coefficient-wise |f_k - g_k| over the union of both bands.
double max_coefficient_distance(const FourierField& f, const FourierField& g);

/// Values on the uniform grid x_j = j / M, row-major with the first axis slowest.
struct SpatialSamples {
  int dim = 1;
  int resolution = 0;
  std::vector<Complex> values;

  std::size_t size() const { return values.size(); }
  /// (1 / M^d) sum_j |values_j|^2.
  double grid_mass() const;
};

/// Evaluates f at every point of the M^d grid. Modes are folded mod M, so any
/// M >= 1 is valid; quadrature is exact when M >= 2N + 1.
SpatialSamples evaluate_on_grid(const FourierField& f, int resolution);

/// Inverse of evaluate_on_grid on band N. Requires M >= 2N + 1.
FourierField from_grid(const SpatialSamples& samples, int bandwidth);

}  // namespace schrolab

#endif  // SCHROLAB_TORUS_FIELD_HPP
