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

#include "schrolab/propagator.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace schrolab {

StepSource::StepSource(std::vector<double> breakpoints, std::vector<FourierField> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw std::invalid_argument("StepSource needs at least one piece");
  if (breakpoints_.size() != pieces_.size() + 1) {
    throw std::invalid_argument("StepSource needs one more breakpoint than pieces");
  }
  if (breakpoints_.front() != 0.0) throw std::invalid_argument("StepSource must start at t = 0");
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1])) {
      throw std::invalid_argument("StepSource breakpoints must be strictly increasing");
    }
  }
  const ModeLattice& lattice = pieces_.front().lattice();
  norms_.reserve(pieces_.size());
  for (const FourierField& p : pieces_) {
    if (p.lattice() != lattice) {
      throw std::invalid_argument("StepSource pieces must share dimension and bandwidth");
    }
    norms_.push_back(p.l2_norm());
  }
}

StepSource StepSource::zero(const ModeLattice& lattice, double horizon) {
  return StepSource({0.0, horizon}, {FourierField(lattice)});
}

StepSource StepSource::constant(FourierField piece, double horizon) {
  return StepSource({0.0, horizon}, {std::move(piece)});
}

double StepSource::l1_mass() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    sum += (breakpoints_[i + 1] - breakpoints_[i]) * norms_[i];
  }
  return sum;
}

std::size_t StepSource::piece_at(double t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const auto idx = std::size_t(std::max<std::ptrdiff_t>(it - breakpoints_.begin() - 1, 0));
  return std::min(idx, pieces_.size() - 1);
}

FourierField free_evolve(const FourierField& f, double t, Execution exec) {
  std::vector<Complex> out(f.lattice().size());
  kernels::free_evolve(exec, f.lattice(), f.coefficients(), t, out);
  return FourierField(f.lattice(), std::move(out));
}

FourierField duhamel_source_transform(const StepSource& src, Interval interval,
                                      Execution exec) {
  if (interval.lo < 0.0 || interval.hi > src.horizon()) {
    throw std::out_of_range("interval [" + std::to_string(interval.lo) + ", " +
                            std::to_string(interval.hi) + ") leaves the source span");
  }
  std::vector<Complex> acc(src.lattice().size());
  if (interval.empty()) return FourierField(src.lattice(), std::move(acc));

  const auto& bp = src.breakpoints();
  for (std::size_t i = src.piece_at(interval.lo); i < src.piece_count(); ++i) {
    const double alpha = std::max(interval.lo, bp[i]);
    const double beta = std::min(interval.hi, bp[i + 1]);
    if (alpha >= interval.hi) break;
    if (alpha < beta && src.piece_norms()[i] > 0.0) {
      kernels::accumulate_backward_integral(exec, src.lattice(),
                                            src.pieces()[i].coefficients(), alpha, beta, acc);
    }
  }
  return FourierField(src.lattice(), std::move(acc));
}

FourierField duhamel_solution(const FourierField& u0, const StepSource& src, double t,
                              Execution exec) {
  if (t < 0.0 || t > src.horizon()) {
    throw std::out_of_range("time " + std::to_string(t) + " outside [0, T]");
  }
  if (u0.lattice() != src.lattice()) {
    throw std::invalid_argument("initial datum and source live on different lattices");
  }
  const FourierField g = duhamel_source_transform(src, {0.0, t}, exec);
  // e^{itD} u0 + (1/i) e^{itD} g = e^{itD} (u0 - i g)
  return free_evolve(linear_combination(1.0, u0, Complex(0.0, -1.0), g), t, exec);
}

Trajectory sample_trajectory(const FourierField& u0, const StepSource& src,
                             std::span<const double> times, Execution exec) {
  if (!std::is_sorted(times.begin(), times.end())) {
    throw std::invalid_argument("sample times must be sorted");
  }
  if (!times.empty() && (times.front() < 0.0 || times.back() > src.horizon())) {
    throw std::out_of_range("sample times outside [0, T]");
  }
  if (u0.lattice() != src.lattice()) {
    throw std::invalid_argument("initial datum and source live on different lattices");
  }
  SourceTransformTable table(src);
  Trajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.states.resize(times.size(), FourierField(src.lattice()));

  const auto n = std::int64_t(times.size());
  const ModeLattice& lattice = src.lattice();
  auto one_sample = [&](std::int64_t i) {
    std::vector<Complex> g(lattice.size());
    table.prefix_into(times[i], g);
    auto u = u0.coefficients();
    for (std::size_t m = 0; m < g.size(); ++m) g[m] = u[m] - Complex(0.0, 1.0) * g[m];
    std::vector<Complex> out(lattice.size());
    kernels::serial::free_evolve(lattice, g, times[i], out);
    traj.states[std::size_t(i)] = FourierField(lattice, std::move(out));
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) one_sample(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) one_sample(i);
  }
  return traj;
}

SourceTransformTable::SourceTransformTable(const StepSource& src) : src_(&src) {
  const auto& bp = src.breakpoints();
  const std::size_t modes = src.lattice().size();
  prefix_.reserve(bp.size());
  prefix_.emplace_back(modes);
  for (std::size_t i = 0; i < src.piece_count(); ++i) {
    std::vector<Complex> next = prefix_.back();
    if (src.piece_norms()[i] > 0.0) {
      kernels::serial::accumulate_backward_integral(
          src.lattice(), src.pieces()[i].coefficients(), bp[i], bp[i + 1], next);
    }
    prefix_.push_back(std::move(next));
  }
}

void SourceTransformTable::prefix_into(double t, std::span<Complex> out) const {
  const StepSource& src = *src_;
  if (t < 0.0 || t > src.horizon()) throw std::out_of_range("prefix time outside [0, T]");
  const std::size_t i = src.piece_at(t);
  const auto& base = prefix_[i];
  std::copy(base.begin(), base.end(), out.begin());
  const double start = src.breakpoints()[i];
  if (t > start && src.piece_norms()[i] > 0.0) {
    kernels::serial::accumulate_backward_integral(src.lattice(),
                                                  src.pieces()[i].coefficients(), start, t, out);
  }
}

FourierField SourceTransformTable::prefix(double t) const {
  std::vector<Complex> out(src_->lattice().size());
  prefix_into(t, out);
  return FourierField(src_->lattice(), std::move(out));
}

}  // namespace schrolab
