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

#include "schrolab/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <string>
#include <tuple>

namespace schrolab::spectral {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  // Planning is not thread-safe in FFTW; execution with the new-array
  // interface is, provided the plan was made with FFTW_UNALIGNED.
  fftw_plan get(int dim, int resolution, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(dim, resolution, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const std::size_t count =
        dim == 1 ? std::size_t(resolution) : std::size_t(resolution) * resolution;
    auto* in = fftw_alloc_complex(count);
    auto* out = fftw_alloc_complex(count);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = dim == 1
                         ? fftw_plan_dft_1d(resolution, in, out, sign, flags)
                         : fftw_plan_dft_2d(resolution, resolution, in, out, sign, flags);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

int wrap(int k, int m) {
  int r = k % m;
  return r < 0 ? r + m : r;
}

void execute(int dim, int resolution, int sign, std::vector<Complex>& in,
             std::vector<Complex>& out) {
  fftw_plan plan = plan_cache().get(dim, resolution, sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

std::vector<Complex> synthesize(const ModeLattice& lattice,
                                std::span<const Complex> coeffs, int resolution) {
  if (resolution < 1) throw std::invalid_argument("grid resolution must be >= 1");
  const int dim = lattice.dim();
  const std::size_t count =
      dim == 1 ? std::size_t(resolution) : std::size_t(resolution) * resolution;
  std::vector<Complex> folded(count);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const Mode k = lattice.mode(i);
    const std::size_t slot =
        dim == 1 ? std::size_t(wrap(k[0], resolution))
                 : std::size_t(wrap(k[0], resolution)) * resolution + wrap(k[1], resolution);
    folded[slot] += coeffs[i];
  }
  std::vector<Complex> values(count);
  execute(dim, resolution, FFTW_BACKWARD, folded, values);
  return values;
}

std::vector<Complex> analyze(int dim, std::span<const Complex> values, int resolution,
                             const ModeLattice& target) {
  if (target.dim() != dim) throw std::invalid_argument("analyze: dimension mismatch");
  if (resolution < 2 * target.bandwidth() + 1) {
    throw std::invalid_argument("analyze: grid of " + std::to_string(resolution) +
                                " points cannot resolve bandwidth " +
                                std::to_string(target.bandwidth()));
  }
  const std::size_t count =
      dim == 1 ? std::size_t(resolution) : std::size_t(resolution) * resolution;
  if (values.size() != count) throw std::invalid_argument("analyze: wrong sample count");

  std::vector<Complex> in(values.begin(), values.end());
  std::vector<Complex> spectrum(count);
  execute(dim, resolution, FFTW_FORWARD, in, spectrum);

  const double scale = 1.0 / double(count);
  std::vector<Complex> coeffs(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    const Mode k = target.mode(i);
    const std::size_t slot =
        dim == 1 ? std::size_t(wrap(k[0], resolution))
                 : std::size_t(wrap(k[0], resolution)) * resolution + wrap(k[1], resolution);
    coeffs[i] = spectrum[slot] * scale;
  }
  return coeffs;
}

}  // namespace schrolab::spectral
