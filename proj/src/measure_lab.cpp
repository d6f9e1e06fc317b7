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

#include "schrolab/measure_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "schrolab/spectral.hpp"

namespace schrolab {
namespace {

// (e^{i theta} - 1) / (i theta) with theta = 2 pi k / M: the average of
// e^{2 pi i k x} over one cell, relative to its value at the left edge.
Complex cell_factor(int k, int cells) {
  if (k == 0) return {1.0, 0.0};
  const double half = std::numbers::pi * k / cells;
  return std::polar(std::sin(half) / half, half);
}

std::size_t space_count(int dim, int cells) {
  return dim == 1 ? std::size_t(cells) : std::size_t(cells) * std::size_t(cells);
}

std::vector<std::vector<std::size_t>> group_by_time_cell(const Trajectory& traj, double horizon,
                                                         int time_cells) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (time_cells < 1) throw std::invalid_argument("need at least one time cell");
  std::vector<std::vector<std::size_t>> groups(static_cast<std::size_t>(time_cells));
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    if (t < 0.0 || t > horizon) throw std::invalid_argument("trajectory sample outside [0, T]");
    const auto a = std::min(time_cells - 1, int(std::floor(t / horizon * time_cells)));
    groups[std::size_t(a)].push_back(i);
  }
  for (int a = 0; a < time_cells; ++a) {
    if (groups[std::size_t(a)].empty()) {
      throw std::invalid_argument("undersampled trajectory: time cell " + std::to_string(a) +
                                  " has no sample");
    }
  }
  return groups;
}

}  // namespace

SpaceTimeMeasure::SpaceTimeMeasure(int dim, double horizon, int time_cells, int space_cells,
                                   std::vector<double> density)
    : dim_(dim),
      horizon_(horizon),
      time_cells_(time_cells),
      space_cells_(space_cells),
      space_count_(space_count(dim, space_cells)),
      density_(std::move(density)) {
  if (density_.size() != std::size_t(time_cells) * space_count_) {
    throw std::invalid_argument("density size does not match the grid");
  }
  for (double d : density_) {
    if (!(d >= 0.0)) throw std::invalid_argument("density must be nonnegative");
  }
}

double SpaceTimeMeasure::cell_volume() const {
  return horizon_ / time_cells_ / double(space_count_);
}

double SpaceTimeMeasure::total_mass() const {
  double sum = 0.0;
  for (double d : density_) sum += d;
  return sum * cell_volume();
}

std::vector<double> cell_averages(const FourierField& u, int space_cells) {
  if (space_cells < 1) throw std::invalid_argument("need at least one space cell");
  const int n = u.bandwidth();
  // |u|^2 lives on band 2N; a 4N + 1 grid gives its coefficients exactly.
  const ModeLattice square(u.dim(), 2 * n);
  const int grid = 4 * n + 1;
  std::vector<Complex> values = spectral::synthesize(u.lattice(), u.coefficients(), grid);
  for (Complex& v : values) v = std::norm(v);
  std::vector<Complex> coeffs = spectral::analyze(u.dim(), values, grid, square);
  for (std::size_t i = 0; i < square.size(); ++i) {
    const Mode k = square.mode(i);
    coeffs[i] *= cell_factor(k[0], space_cells);
    if (u.dim() == 2) coeffs[i] *= cell_factor(k[1], space_cells);
  }
  const std::vector<Complex> averages = spectral::synthesize(square, coeffs, space_cells);
  std::vector<double> out(averages.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = std::max(0.0, averages[j].real());
  return out;
}

SpaceTimeMeasure concentration_density(const Trajectory& traj, double horizon, int space_cells,
                                       int time_cells, Execution exec) {
  if (traj.size() == 0) throw std::invalid_argument("empty trajectory");
  const int dim = traj.states.front().dim();
  const int n = traj.states.front().bandwidth();
  if (space_cells < 2 * n + 1) {
    throw std::invalid_argument("space grid of " + std::to_string(space_cells) +
                                " cells is below 2N + 1 = " + std::to_string(2 * n + 1));
  }
  const auto groups = group_by_time_cell(traj, horizon, time_cells);
  const std::size_t per_slice = space_count(dim, space_cells);
  std::vector<double> density(std::size_t(time_cells) * per_slice, 0.0);

  auto one_cell = [&](std::int64_t a) {
    const auto& members = groups[std::size_t(a)];
    double* slice = density.data() + std::size_t(a) * per_slice;
    for (std::size_t i : members) {
      const std::vector<double> avg = cell_averages(traj.states[i], space_cells);
      for (std::size_t j = 0; j < per_slice; ++j) slice[j] += avg[j];
    }
    const double scale = 1.0 / double(members.size());
    for (std::size_t j = 0; j < per_slice; ++j) slice[j] *= scale;
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t a = 0; a < time_cells; ++a) one_cell(a);
  } else {
    for (std::int64_t a = 0; a < time_cells; ++a) one_cell(a);
  }
  return SpaceTimeMeasure(dim, horizon, time_cells, space_cells, std::move(density));
}

double energy_quadrature(const Trajectory& traj, double horizon, int time_cells) {
  const auto groups = group_by_time_cell(traj, horizon, time_cells);
  double sum = 0.0;
  for (const auto& members : groups) {
    double cell = 0.0;
    for (std::size_t i : members) cell += traj.states[i].mass();
    sum += cell / double(members.size());
  }
  return sum * horizon / time_cells;
}

double weak_star_pairing(const SpaceTimeMeasure& mu, std::span<const double> test) {
  if (test.size() != mu.cell_count()) {
    throw std::invalid_argument("test table has " + std::to_string(test.size()) +
                                " cells, measure has " + std::to_string(mu.cell_count()));
  }
  double sum = 0.0;
  const auto& density = mu.densities();
  for (std::size_t i = 0; i < test.size(); ++i) sum += density[i] * test[i];
  return sum * mu.cell_volume();
}

DataFamily DataFamily::constant(int dim) {
  return {"constant", dim, [dim](int) {
            const ModeEntry e{{0, 0}, 1.0};
            return FourierField::from_coefficients(dim, 0, {&e, 1});
          }};
}

DataFamily DataFamily::plane_wave(int dim) {
  return {"plane-wave", dim, [dim](int n) {
            const ModeEntry e{{n, 0}, 1.0};
            return FourierField::from_coefficients(dim, std::abs(n), {&e, 1});
          }};
}

DataFamily DataFamily::dirichlet(int dim, double x0) {
  return {"dirichlet", dim, [dim, x0](int n) {
            ModeLattice lattice(dim, n);
            std::vector<Complex> coeffs(lattice.size());
            const double scale = 1.0 / std::pow(2.0 * n + 1.0, 0.5 * dim);
            for (std::size_t i = 0; i < lattice.size(); ++i) {
              const Mode k = lattice.mode(i);
              coeffs[i] = std::polar(scale, -kTwoPi * (k[0] + k[1]) * x0);
            }
            return FourierField(lattice, std::move(coeffs));
          }};
}

DataFamily DataFamily::two_mode(int dim) {
  return {"two-mode", dim, [dim](int n) {
            if (n == 0) return DataFamily::constant(dim).generate(0);
            const ModeEntry e[2] = {{{0, 0}, std::sqrt(0.5)}, {{n, 0}, std::sqrt(0.5)}};
            return FourierField::from_coefficients(dim, std::abs(n), e);
          }};
}

DataFamily DataFamily::random_phase(int dim, std::uint64_t seed) {
  return {"random-phase", dim, [dim, seed](int n) {
            std::mt19937_64 rng(seed * 1000003ULL + std::uint64_t(n));
            std::uniform_real_distribution<double> angle(0.0, kTwoPi);
            ModeLattice lattice(dim, n);
            const double scale = 1.0 / std::sqrt(double(lattice.size()));
            std::vector<Complex> coeffs(lattice.size());
            for (Complex& c : coeffs) c = std::polar(scale, angle(rng));
            return FourierField(lattice, std::move(coeffs));
          }};
}

DataFamily DataFamily::from_label(const std::string& label, int dim, std::uint64_t seed) {
  if (label == "constant") return constant(dim);
  if (label == "plane-wave") return plane_wave(dim);
  if (label == "dirichlet") return dirichlet(dim, 0.5);
  if (label == "two-mode") return two_mode(dim);
  if (label == "random-phase") return random_phase(dim, seed);
  throw std::invalid_argument("unknown data family '" + label + "'");
}

AcProxyReport ac_proxy_report(const DataFamily& family, std::span<const int> ns,
                              const AcProxyOptions& options) {
  if (options.time_cells < 1 || options.samples_per_cell < 1 || options.stages < 1 ||
      options.space_cells < 1 || !(options.horizon > 0.0)) {
    throw std::invalid_argument("ac_proxy_report: grid parameters must be positive");
  }
  AcProxyReport report;
  report.family = family.label;
  report.options = options;
  const double T = options.horizon;
  const int r = options.time_cells;

  for (int n : ns) {
    const FourierField u0 = family.generate(n);
    const int dim = u0.dim();
    const int cells = std::max(options.space_cells, 2 * u0.bandwidth() + 1);

    std::vector<double> times;
    times.reserve(std::size_t(r) * std::size_t(options.samples_per_cell));
    for (int a = 0; a < r; ++a) {
      for (int s = 0; s < options.samples_per_cell; ++s) {
        times.push_back((a + (s + 0.5) / options.samples_per_cell) * T / r);
      }
    }
    const Trajectory traj =
        sample_trajectory(u0, StepSource::zero(u0.lattice(), T), times);
    const SpaceTimeMeasure mu = concentration_density(traj, T, cells, r);
    const std::vector<double> slice = cell_averages(u0, cells);

    AcProxyEntry entry;
    entry.n = n;
    entry.initial_norm = u0.l2_norm();
    entry.total_mass = mu.total_mass();
    report.max_initial_norm = std::max(report.max_initial_norm, entry.initial_norm);

    const int ct = std::min(r - 1, int(std::floor(options.centre_time * r)));
    const int cx = std::min(cells - 1, int(std::floor(options.centre_space * cells)));
    for (int stage = 0; stage < options.stages; ++stage) {
      const int wt = int(std::floor(0.5 * r / std::ldexp(1.0, stage)));
      const int t_lo = std::max(0, ct - wt);
      const int t_hi = std::min(r - 1, ct + wt);
      const int ws = int(std::floor(0.5 * cells / std::ldexp(1.0, stage)));
      const int width = std::min(cells, 2 * ws + 1);
      std::vector<int> xs;
      for (int o = 0; o < width; ++o) xs.push_back(((cx - ws + o) % cells + cells) % cells);

      std::vector<std::size_t> space_cells;
      if (dim == 1) {
        for (int x : xs) space_cells.push_back(std::size_t(x));
      } else {
        for (int x : xs) {
          for (int y : xs) space_cells.push_back(std::size_t(x) * std::size_t(cells) + std::size_t(y));
        }
      }
      double mass = 0.0;
      for (int a = t_lo; a <= t_hi; ++a) {
        for (std::size_t j : space_cells) mass += mu.density(a, j);
      }
      mass *= mu.cell_volume();
      double slice_mass = 0.0;
      for (std::size_t j : space_cells) slice_mass += slice[j];

      BoxRecord box;
      box.stage = stage;
      box.centre_t = (ct + 0.5) * T / r;
      box.centre_x.assign(std::size_t(dim), (cx + 0.5) / cells);
      box.side_t = (t_hi - t_lo + 1) * T / r;
      box.side_x = double(width) / cells;
      box.mass = mass;
      box.lebesgue = double(t_hi - t_lo + 1) * double(space_cells.size()) * mu.cell_volume();
      box.ratio = mass / box.lebesgue;
      box.slice_ratio = slice_mass / double(space_cells.size());
      entry.max_ratio = std::max(entry.max_ratio, box.ratio);
      entry.max_slice_ratio = std::max(entry.max_slice_ratio, box.slice_ratio);
      entry.boxes.push_back(std::move(box));
    }
    entry.contrast = entry.max_slice_ratio > 0.0 ? entry.max_ratio / entry.max_slice_ratio : 0.0;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace schrolab
