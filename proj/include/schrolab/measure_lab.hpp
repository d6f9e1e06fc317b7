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

// Space-time densities |u|^2 dt dx on (0, T) x T^d and the box-ratio
// diagnostics used to watch for concentration at finite n. Nothing here
// asserts absolute continuity; the reports only record trends.

#ifndef SCHROLAB_MEASURE_LAB_HPP
#define SCHROLAB_MEASURE_LAB_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "schrolab/propagator.hpp"

namespace schrolab {

/// Cell-average density on r time cells x M^d space cells.
class SpaceTimeMeasure {
 public:
  SpaceTimeMeasure(int dim, double horizon, int time_cells, int space_cells,
                   std::vector<double> density);

  int dim() const { return dim_; }
  double horizon() const { return horizon_; }
  int time_cells() const { return time_cells_; }
  int space_cells() const { return space_cells_; }
  std::size_t space_cell_count() const { return space_count_; }
  std::size_t cell_count() const { return density_.size(); }
  double cell_volume() const;

  /// Density of time cell a, space cell j (row-major over the space axes).
  double density(int time_cell, std::size_t space_cell) const {
    return density_[std::size_t(time_cell) * space_count_ + space_cell];
  }
  const std::vector<double>& densities() const { return density_; }
  /// sum density * cell_volume.
  double total_mass() const;

 private:
  int dim_;
  double horizon_;
  int time_cells_;
  int space_cells_;
  std::size_t space_count_;
  std::vector<double> density_;
};

/// Exact averages of |u|^2 over the M^d cells [j/M, (j+1)/M)^d.
std::vector<double> cell_averages(const FourierField& u, int space_cells);

/// Time cell a = [a T / r, (a + 1) T / r) gets the mean of the exact spatial
/// cell averages over the trajectory samples inside it (t = T joins the last
/// cell). Throws std::invalid_argument if a cell has no sample or M < 2N + 1.
SpaceTimeMeasure concentration_density(const Trajectory& traj, double horizon, int space_cells,
                                       int time_cells, Execution exec = Execution::parallel);

/// sum_a (T / r) mean_{t_i in cell a} ||u(t_i)||^2, the time quadrature that
/// concentration_density's total mass reproduces.
double energy_quadrature(const Trajectory& traj, double horizon, int time_cells);

/// sum density * test * cell_volume. `test` has one value per cell, same layout.
double weak_star_pairing(const SpaceTimeMeasure& mu, std::span<const double> test);

/// A sequence of initial data indexed by n.
struct DataFamily {
  std::string label;
  int dim = 1;
  std::function<FourierField(int n)> generate;

  /// u = 1.
  static DataFamily constant(int dim);
  /// u = e^{2 pi i n x_1}.
  static DataFamily plane_wave(int dim);
  /// Normalized Dirichlet kernel of order n centred at x0 (tensor product in 2D).
  static DataFamily dirichlet(int dim, double x0);
  /// (e^{0} + e^{2 pi i n x_1}) / sqrt 2.
  static DataFamily two_mode(int dim);
  /// Unit-norm random phases on band n.
  static DataFamily random_phase(int dim, std::uint64_t seed);
  /// Parses constant | plane-wave | dirichlet | two-mode | random-phase.
  static DataFamily from_label(const std::string& label, int dim, std::uint64_t seed);
};

struct AcProxyOptions {
  double horizon = 1.0;
  int space_cells = 256;
  int time_cells = 64;
  int samples_per_cell = 4;
  int stages = 8;
  double centre_time = 0.5;  ///< as a fraction of T
  double centre_space = 0.5;
};

struct BoxRecord {
  int stage = 0;
  double centre_t = 0.0;
  std::vector<double> centre_x;
  double side_t = 0.0;
  double side_x = 0.0;
  double mass = 0.0;
  double lebesgue = 0.0;
  double ratio = 0.0;
  /// Ratio of |u0|^2 over the spatial box alone, i.e. the t = 0 slice.
  double slice_ratio = 0.0;
};

struct AcProxyEntry {
  int n = 0;
  double initial_norm = 0.0;
  double total_mass = 0.0;
  std::vector<BoxRecord> boxes;
  double max_ratio = 0.0;
  double max_slice_ratio = 0.0;
  /// max_ratio / max_slice_ratio.
  double contrast = 0.0;
};

struct AcProxyReport {
  std::string family;
  AcProxyOptions options;
  std::vector<AcProxyEntry> entries;
  double max_initial_norm = 0.0;
};

/// For each n: free-evolve u_{0,n}, build nu_n, and record mass(B) / Leb(B)
/// over boxes around (centre_time T, centre_space) whose sides halve per stage.
AcProxyReport ac_proxy_report(const DataFamily& family, std::span<const int> ns,
                              const AcProxyOptions& options = {});

}  // namespace schrolab

#endif  // SCHROLAB_MEASURE_LAB_HPP
