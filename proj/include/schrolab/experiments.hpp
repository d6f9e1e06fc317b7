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

// Named experiments behind the command-line driver. Each one writes its
// reports under config.out and returns the hard checks it evaluated.

#ifndef SCHROLAB_EXPERIMENTS_HPP
#define SCHROLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "schrolab/serialization.hpp"

namespace schrolab {

/// Rejected configuration; the CLI maps it to a usage error.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string experiment = "all";  ///< certify-ck | gronwall | nls | ac-proxy | all
  int dim = 1;
  int bandwidth = 8;
  double horizon = 1.0;
  int levels = 8;
  int steps = 4096;
  std::uint64_t seed = 0;
  std::string family = "dirichlet";
  std::string out = "schrolab-out";
  int pieces = 64;
  /// zero | scalar:<c> | imag:<c> | cos:<a> | random-real | random-complex | random-operator
  std::string potential = "random-real";
  /// zero | scalar:<c> | saturated:<eps>
  std::string nonlinearity = "saturated:1";
  std::vector<int> ns = {4, 8, 16, 32};

  /// Throws ConfigError naming the first bad field.
  void validate() const;
};

/// Overlays the keys present in `j` (flag names without dashes; "time" for T).
void apply_config_json(ExperimentConfig& config, const Json& j);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string artifact;  ///< report holding the evidence
  std::string detail;
};

struct RunSummary {
  std::vector<CheckResult> checks;
  bool pass() const;
};

/// Builds the potential named by config.potential on the band of the state.
BoundedPotential potential_from_registry(const std::string& spec, const ModeLattice& state,
                                         double horizon, std::uint64_t seed);

RunSummary run_certify_ck(const ExperimentConfig& config);
RunSummary run_gronwall(const ExperimentConfig& config);
RunSummary run_nls(const ExperimentConfig& config);
RunSummary run_ac_proxy(const ExperimentConfig& config);

/// Validates, dispatches on config.experiment, writes summary.json.
RunSummary run(const ExperimentConfig& config);

}  // namespace schrolab

#endif  // SCHROLAB_EXPERIMENTS_HPP
