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

// Seeded random inputs shared by the tests, the acceptance suite and the CLI.
// Every draw goes through a caller-owned std::mt19937_64.

#ifndef SCHROLAB_RANDOM_FIELDS_HPP
#define SCHROLAB_RANDOM_FIELDS_HPP

#include <random>

#include "schrolab/potential_evolution.hpp"
#include "schrolab/propagator.hpp"

namespace schrolab {

/// Gaussian coefficients on the full band, rescaled to l2_norm == norm.
FourierField random_band_field(int dim, int bandwidth, double norm, std::mt19937_64& rng);

/// Same, but with the Hermitian symmetry c_{-k} = conj(c_k) of a real function.
FourierField random_real_field(int dim, int bandwidth, double norm, std::mt19937_64& rng);

struct RandomSourceOptions {
  int dim = 1;
  int bandwidth = 8;
  int pieces = 64;
  double horizon = 1.0;
  /// Uniform breakpoints k T / m instead of sorted uniform draws.
  bool uniform_breakpoints = false;
};

/// Piece norms uniform in (0, 1], piece fields random band data.
StepSource random_step_source(const RandomSourceOptions& options, std::mt19937_64& rng);

enum class RandomPotentialKind { real_multiplication, complex_multiplication, operator_matrix };

struct RandomPotentialOptions {
  RandomPotentialKind kind = RandomPotentialKind::real_multiplication;
  int pieces = 8;
  int profile_bandwidth = 2;
  double horizon = 1.0;
  /// Profiles are scaled so their coefficient l2 norm is drawn from (0, scale].
  double scale = 1.0;
};

BoundedPotential random_potential(const ModeLattice& state, const RandomPotentialOptions& options,
                                  std::mt19937_64& rng);

}  // namespace schrolab

#endif  // SCHROLAB_RANDOM_FIELDS_HPP
