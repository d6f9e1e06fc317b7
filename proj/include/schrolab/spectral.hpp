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

#ifndef SCHROLAB_SPECTRAL_HPP
#define SCHROLAB_SPECTRAL_HPP

#include <span>
#include <vector>

#include "schrolab/torus_field.hpp"

/// FFT-backed transforms between band coefficients and uniform grids.
/// Plans are cached process-wide; all functions are thread-safe.
namespace schrolab::spectral {

/// Grid values sum_k c_k e^{2 pi i k.x_j} at x_j = j / M (modes folded mod M).
std::vector<Complex> synthesize(const ModeLattice& lattice,
                                std::span<const Complex> coeffs, int resolution);

/// Discrete Fourier coefficients (1 / M^d) sum_j v_j e^{-2 pi i k.x_j} for every
/// k in `target`. Throws std::invalid_argument unless M >= 2N + 1.
std::vector<Complex> analyze(int dim, std::span<const Complex> values, int resolution,
                             const ModeLattice& target);

/// Smallest grid on which a product of bands N1 and N2 has exact coefficients
/// on band N1: 2 (N1 + N2) + 1.
inline int product_grid(int state_bandwidth, int factor_bandwidth) {
  return 2 * (state_bandwidth + factor_bandwidth) + 1;
}

}  // namespace schrolab::spectral

#endif  // SCHROLAB_SPECTRAL_HPP
