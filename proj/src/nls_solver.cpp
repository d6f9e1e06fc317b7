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

#include "schrolab/nls_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "schrolab/spectral.hpp"

namespace schrolab {

LipschitzProfile::LipschitzProfile(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.empty() || breakpoints_.size() != values_.size()) {
    throw std::invalid_argument("Lipschitz profile needs one value per breakpoint");
  }
  if (breakpoints_.front() != 0.0) throw std::invalid_argument("Lipschitz profile must start at 0");
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1])) {
      throw std::invalid_argument("Lipschitz profile breakpoints must increase");
    }
  }
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("Lipschitz modulus must be finite and nonnegative");
    }
  }
}

double LipschitzProfile::at(double t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.begin()) return values_.front();
  return values_[std::size_t(it - breakpoints_.begin()) - 1];
}

double LipschitzProfile::integral(double a, double b) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double lo = std::max(a, breakpoints_[i]);
    const double hi = std::min(
        b, i + 1 < breakpoints_.size() ? breakpoints_[i + 1] : std::numeric_limits<double>::infinity());
    if (lo < hi) sum += (hi - lo) * values_[i];
  }
  return sum;
}

double LipschitzProfile::advance(double a, double mass) const {
  if (mass <= 0.0) return a;
  double remaining = mass;
  double cursor = a;
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), a);
  std::size_t i = it == breakpoints_.begin() ? 0 : std::size_t(it - breakpoints_.begin()) - 1;
  for (; i < values_.size(); ++i) {
    const double end = i + 1 < breakpoints_.size() ? breakpoints_[i + 1]
                                                   : std::numeric_limits<double>::infinity();
    const double c = values_[i];
    if (c > 0.0) {
      if (remaining <= c * (end - cursor)) return cursor + remaining / c;
      remaining -= c * (end - cursor);
    }
    cursor = end;
  }
  return std::numeric_limits<double>::infinity();
}

Nonlinearity Nonlinearity::zero() {
  return {"zero", [](Complex, double) { return Complex{}; }, LipschitzProfile::constant(0.0), true};
}

Nonlinearity Nonlinearity::scalar(double c) {
  std::ostringstream label;
  label << "scalar:" << c;
  return {label.str(), [c](Complex z, double) { return c * z; },
          LipschitzProfile::constant(std::abs(c)), true};
}

Nonlinearity Nonlinearity::saturated(double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("saturation parameter must be positive");
  std::ostringstream label;
  label << "saturated:" << epsilon;
  // z -> r^3 / (1 + eps r^2) e^{i arg z}: radial slope peaks at r^2 = 3 / eps
  // with value 9 / (8 eps); the tangential factor r^2 / (1 + eps r^2) stays below 1 / eps.
  return {label.str(),
          [epsilon](Complex z, double) {
            const double s = std::norm(z);
            return z * (s / (1.0 + epsilon * s));
          },
          LipschitzProfile::constant(9.0 / (8.0 * epsilon)), true};
}

Nonlinearity Nonlinearity::from_registry(const std::string& spec) {
  if (spec == "zero") return zero();
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  if (colon == std::string::npos) throw std::invalid_argument("unknown nonlinearity '" + spec + "'");
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(spec.substr(colon + 1), &used);
    if (used != spec.size() - colon - 1) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad parameter in nonlinearity '" + spec + "'");
  }
  if (name == "scalar") return scalar(value);
  if (name == "saturated") return saturated(value);
  throw std::invalid_argument("unknown nonlinearity '" + spec + "'");
}

void check_lipschitz(const Nonlinearity& nl, std::mt19937_64& rng, int trials, double horizon) {
  std::uniform_real_distribution<double> log_radius(-3.0, 3.0);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> time(0.0, horizon);
  std::uniform_real_distribution<double> nudge(-1e-3, 1e-3);
  for (int i = 0; i < trials; ++i) {
    const Complex z = std::polar(std::pow(10.0, log_radius(rng)), angle(rng));
    // alternate far pairs and near pairs so both slope regimes are probed
    const Complex w = (i % 2 == 0) ? std::polar(std::pow(10.0, log_radius(rng)), angle(rng))
                                   : z * Complex(1.0 + nudge(rng), nudge(rng));
    const double t = time(rng);
    const double lhs = std::abs(nl.term(z, t) - nl.term(w, t));
    const double rhs = nl.lipschitz.at(t) * std::abs(z - w);
    if (lhs > rhs * (1.0 + 1e-9) + 1e-300) {
      std::ostringstream msg;
      msg << "nonlinearity " << nl.label << " violates its Lipschitz modulus at z = " << z
          << ", z' = " << w << ", t = " << t << ": " << lhs << " > " << rhs;
      throw LipschitzViolation(msg.str());
    }
  }
}

std::vector<Interval> subdivide(const LipschitzProfile& profile, double horizon) {
  if (!(horizon > 0.0)) throw std::invalid_argument("subdivide needs a positive horizon");
  std::vector<Interval> out;
  double a = 0.0;
  while (true) {
    if (profile.integral(a, horizon) <= 0.5 * (1.0 + 1e-12)) {
      out.push_back({a, horizon});
      break;
    }
    const double b = profile.advance(a, 0.5);
    out.push_back({a, b});
    a = b;
  }
  return out;
}

FourierField nonlinear_term(const Nonlinearity& nl, const FourierField& u, double t) {
  const int grid = nonlinearity_grid(u.bandwidth());
  std::vector<Complex> values = spectral::synthesize(u.lattice(), u.coefficients(), grid);
  for (Complex& v : values) v = nl.term(v, t);
  return FourierField(u.lattice(), spectral::analyze(u.dim(), values, grid, u.lattice()));
}

PicardResult picard_solve(const FourierField& u0, const Nonlinearity& nl, Interval interval,
                          const PicardOptions& options, int interval_index) {
  if (options.steps < 1) throw std::invalid_argument("picard_solve needs at least one step");
  if (!(interval.lo < interval.hi)) throw std::invalid_argument("picard_solve needs a nonempty interval");
  const double lipschitz_mass = nl.lipschitz.integral(interval.lo, interval.hi);
  if (lipschitz_mass > 0.5 * (1.0 + 1e-12)) {
    throw std::invalid_argument("Lipschitz mass " + std::to_string(lipschitz_mass) +
                                " exceeds 1/2 on the interval; subdivide first");
  }

  const ModeLattice& lattice = u0.lattice();
  const std::size_t modes = lattice.size();
  const int m = options.steps;
  const double h = interval.length() / m;
  const std::size_t nodes = std::size_t(m) + 1;
  std::vector<double> times(nodes);
  for (std::size_t i = 0; i < nodes; ++i) times[i] = interval.lo + double(i) * h;
  times.back() = interval.hi;

  // forward[i * modes + k] = e^{-4 pi^2 i |k|^2 (t_i - a)}
  std::vector<Complex> forward(nodes * modes);
  for (std::size_t i = 0; i < nodes; ++i) {
    for (std::size_t k = 0; k < modes; ++k) {
      forward[i * modes + k] = kernels::free_phase(lattice.squared_norm(k), times[i] - interval.lo);
    }
  }

  auto u0c = u0.coefficients();
  std::vector<Complex> current(nodes * modes);
  for (std::size_t i = 0; i < nodes; ++i) {
    for (std::size_t k = 0; k < modes; ++k) current[i * modes + k] = forward[i * modes + k] * u0c[k];
  }

  PicardResult result;
  result.lipschitz_mass = lipschitz_mass;
  const double threshold = options.tolerance * std::max(1.0, u0.l2_norm());
  std::vector<Complex> backward(nodes * modes);
  std::vector<Complex> next(nodes * modes);

  for (int iteration = 1; iteration <= options.max_iterations; ++iteration) {
    const auto n = std::int64_t(nodes);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      const auto ui = std::size_t(i);
      const FourierField state(lattice, std::vector<Complex>(current.begin() + ui * modes,
                                                             current.begin() + (ui + 1) * modes));
      const FourierField term = nonlinear_term(nl, state, times[ui]);
      auto tc = term.coefficients();
      for (std::size_t k = 0; k < modes; ++k) {
        backward[ui * modes + k] = std::conj(forward[ui * modes + k]) * tc[k];
      }
    }

    std::vector<Complex> integral(modes);
    double distance = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
      if (i > 0) {
        for (std::size_t k = 0; k < modes; ++k) {
          integral[k] += 0.5 * (times[i] - times[i - 1]) *
                         (backward[(i - 1) * modes + k] + backward[i * modes + k]);
        }
      }
      double sq = 0.0;
      for (std::size_t k = 0; k < modes; ++k) {
        const Complex v = forward[i * modes + k] * (u0c[k] + Complex(0.0, 1.0) * integral[k]);
        sq += std::norm(v - current[i * modes + k]);
        next[i * modes + k] = v;
      }
      distance = std::max(distance, std::sqrt(sq));
    }
    current.swap(next);
    result.log.push_back({interval_index, iteration, distance});
    result.iterations = iteration;
    if (distance < threshold) {
      result.trajectory.times = times;
      result.trajectory.states.reserve(nodes);
      for (std::size_t i = 0; i < nodes; ++i) {
        result.trajectory.states.emplace_back(
            lattice, std::vector<Complex>(current.begin() + i * modes,
                                          current.begin() + (i + 1) * modes));
      }
      return result;
    }
  }
  throw PicardDivergence("Picard iteration did not reach tolerance in " +
                             std::to_string(options.max_iterations) + " iterations",
                         result.log);
}

GlobalSolution global_solve(const FourierField& u0, const Nonlinearity& nl, double horizon,
                            const PicardOptions& options) {
  GlobalSolution out;
  out.intervals = subdivide(nl.lipschitz, horizon);
  out.lipschitz_mass = nl.lipschitz.integral(0.0, horizon);
  out.a_priori_bound = std::exp2(1.0 + 2.0 * out.lipschitz_mass) * u0.l2_norm();
  out.endpoint_norms.push_back(u0.l2_norm());

  FourierField start = u0;
  for (std::size_t j = 0; j < out.intervals.size(); ++j) {
    PicardResult piece = picard_solve(start, nl, out.intervals[j], options, int(j));
    out.log.insert(out.log.end(), piece.log.begin(), piece.log.end());
    auto& traj = piece.trajectory;
    const std::size_t skip = out.trajectory.size() == 0 ? 0 : 1;
    out.trajectory.times.insert(out.trajectory.times.end(), traj.times.begin() + long(skip),
                                traj.times.end());
    out.trajectory.states.insert(out.trajectory.states.end(), traj.states.begin() + long(skip),
                                 traj.states.end());
    start = traj.states.back();
    out.endpoint_norms.push_back(start.l2_norm());
  }
  return out;
}

double max_contraction_ratio(const std::vector<PicardLogEntry>& log, double floor) {
  double worst = 0.0;
  for (std::size_t i = 1; i < log.size(); ++i) {
    const PicardLogEntry& prev = log[i - 1];
    const PicardLogEntry& next = log[i];
    if (prev.interval != next.interval || prev.distance <= floor) continue;
    worst = std::max(worst, next.distance / prev.distance);
  }
  return worst;
}

StepSource nls_source(const Trajectory& traj, const Nonlinearity& nl) {
  if (traj.size() < 2) throw std::invalid_argument("nls_source needs two or more samples");
  std::vector<FourierField> pieces;
  pieces.reserve(traj.size() - 1);
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    pieces.push_back(linear_combination(-1.0, nonlinear_term(nl, traj.states[i], traj.times[i]),
                                        0.0, traj.states[i]));
  }
  return StepSource(traj.times, std::move(pieces));
}

}  // namespace schrolab
