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

// schrolab: run named experiments and write their reports.
//
// Precedence is defaults < --config file < explicit flags. Exit status is 0
// when every hard check passed, 1 when one failed, 2 for a usage error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "schrolab/experiments.hpp"

int main(int argc, char** argv) {
  using schrolab::ExperimentConfig;

  CLI::App app{"Spectral Schrodinger laboratory on the torus"};
  std::string config_path;
  ExperimentConfig flags;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--experiment", flags.experiment, "certify-ck | gronwall | nls | ac-proxy | all");
  app.add_option("--dim", flags.dim, "torus dimension (1 or 2)");
  app.add_option("--bandwidth", flags.bandwidth, "Fourier bandwidth N");
  app.add_option("--time", flags.horizon, "horizon T");
  app.add_option("--levels", flags.levels, "deepest dyadic level k");
  app.add_option("--steps", flags.steps, "time steps m (per Picard interval for nls)");
  app.add_option("--seed", flags.seed, "seed for every random draw");
  app.add_option("--family", flags.family,
                 "ac-proxy data: constant | plane-wave | dirichlet | two-mode | random-phase");
  app.add_option("--out", flags.out, "output directory");
  app.add_option("--pieces", flags.pieces, "pieces of the random source");
  app.add_option("--potential", flags.potential,
                 "zero | scalar:c | imag:c | cos:a | random-real | random-complex | random-operator");
  app.add_option("--nonlinearity", flags.nonlinearity, "zero | scalar:c | saturated:eps");
  app.add_option("--ns", flags.ns, "ac-proxy indices n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  ExperimentConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      schrolab::Json j;
      try {
        in >> j;
      } catch (const schrolab::Json::exception& e) {
        throw schrolab::ConfigError("cannot parse " + config_path + ": " + e.what());
      }
      schrolab::apply_config_json(config, j);
    }
    auto given = [&](const char* name) { return app.count(name) > 0; };
    if (given("--experiment")) config.experiment = flags.experiment;
    if (given("--dim")) config.dim = flags.dim;
    if (given("--bandwidth")) config.bandwidth = flags.bandwidth;
    if (given("--time")) config.horizon = flags.horizon;
    if (given("--levels")) config.levels = flags.levels;
    if (given("--steps")) config.steps = flags.steps;
    if (given("--seed")) config.seed = flags.seed;
    if (given("--family")) config.family = flags.family;
    if (given("--out")) config.out = flags.out;
    if (given("--pieces")) config.pieces = flags.pieces;
    if (given("--potential")) config.potential = flags.potential;
    if (given("--nonlinearity")) config.nonlinearity = flags.nonlinearity;
    if (given("--ns")) config.ns = flags.ns;

    const schrolab::RunSummary summary = schrolab::run(config);
    for (const auto& c : summary.checks) {
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
    }
    if (!summary.pass()) {
      for (const auto& c : summary.checks) {
        if (!c.pass) std::cerr << "failed check " << c.name << ": " << c.artifact << '\n';
      }
      return 1;
    }
    return 0;
  } catch (const schrolab::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
