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

#include "schrolab/ck_decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace schrolab {

MassProfile::MassProfile(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  if (knots_.size() < 2 || knots_.size() != values_.size()) {
    throw std::invalid_argument("mass profile needs matching knots and values");
  }
  if (values_.front() != 0.0) throw std::invalid_argument("mass profile must start at 0");
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    if (!(knots_[i] < knots_[i + 1])) throw std::invalid_argument("knots must increase");
    if (values_[i + 1] < values_[i]) throw std::invalid_argument("mass profile must be nondecreasing");
  }
}

MassProfile MassProfile::from_source(const StepSource& src) {
  const auto& bp = src.breakpoints();
  std::vector<double> values(bp.size(), 0.0);
  for (std::size_t i = 0; i < src.piece_count(); ++i) {
    values[i + 1] = values[i] + (bp[i + 1] - bp[i]) * src.piece_norms()[i];
  }
  return MassProfile(bp, std::move(values));
}

double MassProfile::operator()(double t) const {
  if (t <= knots_.front()) return 0.0;
  if (t >= knots_.back()) return values_.back();
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  const std::size_t i = std::size_t(it - knots_.begin()) - 1;
  const double w = (t - knots_[i]) / (knots_[i + 1] - knots_[i]);
  return values_[i] + w * (values_[i + 1] - values_[i]);
}

double MassProfile::leftmost_preimage(double y) const {
  if (y <= 0.0) return knots_.front();
  if (y >= values_.back()) {
    // first knot reaching the total
    const auto it = std::lower_bound(values_.begin(), values_.end(), values_.back());
    return knots_[std::size_t(it - values_.begin())];
  }
  const auto it = std::lower_bound(values_.begin() + 1, values_.end(), y);
  const std::size_t i = std::size_t(it - values_.begin()) - 1;
  // values_[i] < y <= values_[i + 1], so the slope on piece i is positive
  const double w = (y - values_[i]) / (values_[i + 1] - values_[i]);
  return std::min(knots_[i] + w * (knots_[i + 1] - knots_[i]), knots_[i + 1]);
}

DyadicPartition DyadicPartition::build(const MassProfile& profile, int depth) {
  if (depth < 0 || depth > 30) throw std::invalid_argument("partition depth must be in [0, 30]");
  const double c = profile.total();
  if (!(c > 0.0)) {
    throw std::domain_error("zero-mass source: dyadic partition undefined (v is identically 0)");
  }
  DyadicPartition out;
  out.total_mass_ = c;
  out.levels_.push_back({0.0, profile.horizon()});
  for (int q = 1; q <= depth; ++q) {
    const auto& coarse = out.levels_.back();
    const long count = 1L << q;
    std::vector<double> level(std::size_t(count) + 1);
    for (long p = 0; p <= count; ++p) {
      level[std::size_t(p)] = (p % 2 == 0)
                                  ? coarse[std::size_t(p / 2)]
                                  : profile.leftmost_preimage(std::ldexp(double(p), -q) * c);
    }
    out.levels_.push_back(std::move(level));
  }
  return out;
}

std::vector<SquareBlock> squares(const DyadicPartition& partition, int max_level) {
  if (max_level < 0) throw std::invalid_argument("square level must be >= 0");
  if (partition.depth() < max_level + 1) {
    throw std::invalid_argument("squares up to level " + std::to_string(max_level) +
                                " need partition depth " + std::to_string(max_level + 1));
  }
  std::vector<SquareBlock> blocks;
  blocks.reserve((std::size_t(1) << (max_level + 1)) - 1);
  for (int q = 0; q <= max_level; ++q) {
    const auto& pts = partition.level(q + 1);
    for (long j = 0; j < (1L << q); ++j) {
      const auto b = std::size_t(2 * j);
      blocks.push_back(SquareBlock{q, j, {pts[b], pts[b + 1]}, {pts[b + 1], pts[b + 2]}, {}});
    }
  }
  return blocks;
}

std::vector<SquareBlock> block_fields(const StepSource& src, std::vector<SquareBlock> blocks,
                                      Execution exec) {
  const auto n = std::int64_t(blocks.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) {
      blocks[std::size_t(i)].field =
          duhamel_source_transform(src, blocks[std::size_t(i)].s_side, Execution::serial);
    }
  } else {
    for (auto& b : blocks) b.field = duhamel_source_transform(src, b.s_side, Execution::serial);
  }
  return blocks;
}

TruncatedSum::TruncatedSum(std::span<const SquareBlock> blocks) {
  int top = -1;
  for (const SquareBlock& b : blocks) {
    if (!b.field) throw std::invalid_argument("truncated sum needs filled block fields");
    top = std::max(top, b.level);
  }
  if (top < 0) throw std::invalid_argument("truncated sum needs at least one block");
  lattice_ = blocks.front().field->lattice();
  levels_.resize(std::size_t(top) + 1);
  for (const SquareBlock& b : blocks) levels_[std::size_t(b.level)].push_back(&b);
  for (auto& level : levels_) {
    std::sort(level.begin(), level.end(), [](const SquareBlock* a, const SquareBlock* b) {
      return a->t_side.lo < b->t_side.lo;
    });
  }
}

void TruncatedSum::backward_into(int k, double t, std::span<Complex> out) const {
  std::fill(out.begin(), out.end(), Complex{});
  const int top = std::min(k, max_level());
  for (int q = 0; q <= top; ++q) {
    const auto& level = levels_[std::size_t(q)];
    auto it = std::upper_bound(level.begin(), level.end(), t,
                               [](double x, const SquareBlock* b) { return x < b->t_side.lo; });
    // J's within a level are disjoint; walk back over empty sides sharing lo
    while (it != level.begin()) {
      --it;
      if ((*it)->t_side.contains(t)) {
        auto g = (*it)->field->coefficients();
        for (std::size_t m = 0; m < out.size(); ++m) out[m] += g[m];
        break;
      }
      if ((*it)->t_side.lo < t) break;
    }
  }
}

FourierField TruncatedSum::at(int k, double t) const {
  std::vector<Complex> g(lattice_.size());
  backward_into(k, t, g);
  return free_evolve(FourierField(lattice_, std::move(g)), t);
}

FourierField truncated_sum(std::span<const SquareBlock> blocks, int k, double t) {
  return TruncatedSum(blocks).at(k, t);
}

namespace {

double distance(std::span<const Complex> a, std::span<const Complex> b) {
  double sum = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) sum += std::norm(a[m] - b[m]);
  return std::sqrt(sum);
}

}  // namespace

std::vector<CertificateReport> certify_sweep(const StepSource& src, int max_k, long samples,
                                             Execution exec) {
  if (max_k < 0) throw std::invalid_argument("certificate level must be >= 0");
  if (samples < minimum_certificate_samples(max_k)) {
    throw std::invalid_argument("certify at level " + std::to_string(max_k) + " needs at least " +
                                std::to_string(minimum_certificate_samples(max_k)) +
                                " time samples, got " + std::to_string(samples));
  }
  const MassProfile profile = MassProfile::from_source(src);
  const DyadicPartition partition = DyadicPartition::build(profile, max_k + 1);
  const std::vector<SquareBlock> blocks = block_fields(src, squares(partition, max_k), exec);
  const TruncatedSum sum(blocks);
  const SourceTransformTable table(src);

  const double T = src.horizon();
  const double c = partition.total_mass();
  const std::size_t modes = src.lattice().size();
  const auto levels = std::size_t(max_k) + 1;
  // residual[k * samples + i]
  std::vector<double> residual(levels * std::size_t(samples));

  auto one_sample = [&](std::int64_t i) {
    const double t = (double(i) + 0.5) * T / double(samples);
    std::vector<Complex> exact(modes), approx(modes);
    table.prefix_into(t, exact);
    for (int k = 0; k <= max_k; ++k) {
      sum.backward_into(k, t, approx);
      // e^{itD} is unitary, so compare in the backward picture
      residual[std::size_t(k) * std::size_t(samples) + std::size_t(i)] = distance(exact, approx);
    }
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < samples; ++i) one_sample(i);
  } else {
    for (std::int64_t i = 0; i < samples; ++i) one_sample(i);
  }

  std::vector<CertificateReport> reports;
  for (int k = 0; k <= max_k; ++k) {
    CertificateReport r;
    r.k = k;
    r.mass = c;
    r.horizon = T;
    r.sample_count = samples;
    double sum_sq = 0.0;
    for (long i = 0; i < samples; ++i) {
      const double v = residual[std::size_t(k) * std::size_t(samples) + std::size_t(i)];
      r.max_pointwise_residual = std::max(r.max_pointwise_residual, v);
      sum_sq += v * v;
    }
    r.l2_residual = std::sqrt(sum_sq * T / double(samples));
    r.pointwise_bound = std::ldexp(c, -k);
    r.l2_bound = std::sqrt(T) * std::ldexp(c, -k);
    // The midpoint sum is bounded by sqrt(T) max_i r(t_i), so no quadrature
    // allowance is needed on top of the relative slack.
    r.riemann_tolerance = 0.0;
    r.pointwise_pass = r.max_pointwise_residual <= r.pointwise_bound * (1.0 + r.relative_slack);
    r.l2_pass = r.l2_residual <= r.l2_bound * (1.0 + r.relative_slack) + r.riemann_tolerance;
    r.pass = r.pointwise_pass && r.l2_pass;
    reports.push_back(r);
  }
  return reports;
}

CertificateReport certify(const StepSource& src, int k, long samples, Execution exec) {
  if (samples < minimum_certificate_samples(k)) {
    throw std::invalid_argument("certify at level " + std::to_string(k) + " needs at least " +
                                std::to_string(minimum_certificate_samples(k)) +
                                " time samples, got " + std::to_string(samples));
  }
  return certify_sweep(src, k, samples, exec).back();
}

}  // namespace schrolab
