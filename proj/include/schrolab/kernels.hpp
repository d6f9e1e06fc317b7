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

// Mode-wise and grid-wise inner loops. Each kernel exists twice: a plain
// serial reference and an OpenMP version with the same signature. Callers
// pick one through Execution; tests hold the two against each other.

#ifndef SCHROLAB_KERNELS_HPP
#define SCHROLAB_KERNELS_HPP

#include <span>

#include "schrolab/torus_field.hpp"

namespace schrolab {

enum class Execution { serial, parallel };

namespace kernels {

/// e^{-i 4 pi^2 q t} with the phase reduced modulo 2 pi in cycles first, so
/// large |k|^2 t keeps full relative accuracy.
Complex free_phase(long squared_norm, double t);

/// int_a^b e^{i 4 pi^2 q s} ds, written as e^{i lambda m} (b - a) sinc(lambda (b - a) / 2)
/// with m the midpoint; reduces to b - a for q = 0.
Complex backward_weight(long squared_norm, double a, double b);

namespace serial {

/// out_k = e^{-i 4 pi^2 |k|^2 t} in_k.
void free_evolve(const ModeLattice& lattice, std::span<const Complex> in, double t,
                 std::span<Complex> out);

/// acc_k += piece_k * int_a^b e^{i 4 pi^2 |k|^2 s} ds.
void accumulate_backward_integral(const ModeLattice& lattice,
                                  std::span<const Complex> piece, double a, double b,
                                  std::span<Complex> acc);

/// Direct trigonometric sum at the M^d grid points; O(M^d (2N+1)^d).
void synthesize_direct(const ModeLattice& lattice, std::span<const Complex> coeffs,
                       int resolution, std::span<Complex> out);

/// out_j = |in_j|^2.
void squared_modulus(std::span<const Complex> in, std::span<double> out);

}  // namespace serial

namespace parallel {

void free_evolve(const ModeLattice& lattice, std::span<const Complex> in, double t,
                 std::span<Complex> out);

void accumulate_backward_integral(const ModeLattice& lattice,
                                  std::span<const Complex> piece, double a, double b,
                                  std::span<Complex> acc);

void synthesize_direct(const ModeLattice& lattice, std::span<const Complex> coeffs,
                       int resolution, std::span<Complex> out);

void squared_modulus(std::span<const Complex> in, std::span<double> out);

}  // namespace parallel

inline void free_evolve(Execution exec, const ModeLattice& lattice,
                        std::span<const Complex> in, double t, std::span<Complex> out) {
  exec == Execution::serial ? serial::free_evolve(lattice, in, t, out)
                            : parallel::free_evolve(lattice, in, t, out);
}

inline void accumulate_backward_integral(Execution exec, const ModeLattice& lattice,
                                         std::span<const Complex> piece, double a,
                                         double b, std::span<Complex> acc) {
  exec == Execution::serial
      ? serial::accumulate_backward_integral(lattice, piece, a, b, acc)
      : parallel::accumulate_backward_integral(lattice, piece, a, b, acc);
}

}  // namespace kernels
}  // namespace schrolab

#endif  // SCHROLAB_KERNELS_HPP
