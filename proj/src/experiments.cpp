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

#include "schrolab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "schrolab/random_fields.hpp"

namespace schrolab {
namespace {

namespace fs = std::filesystem;

// One independent stream per (seed, purpose).
std::mt19937_64 stream(std::uint64_t seed, std::uint32_t purpose) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), purpose};
  return std::mt19937_64(seq);
}

enum Purpose : std::uint32_t { kSource = 1, kState, kPotential, kLipschitz, kFamily };

fs::path prepare(const ExperimentConfig& config, const std::string& name) {
  const fs::path dir = fs::path(config.out) / name;
  fs::create_directories(dir);
  return dir;
}

void write_json(const fs::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

template <typename Writer>
void write_csv(const fs::path& path, Writer writer) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  writer(out);
}

std::string describe(double value, double bound) {
  return format_double(value) + " vs " + format_double(bound);
}

double parse_number(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw ConfigError("bad number in '" + spec + "'");
  }
  return value;
}

// Certifies src through every level and checks the partition and block
// bounds on the way; shared by certify-ck and the pipeline closures.
void certify_source(const StepSource& src, int levels, const std::string& prefix,
                    const fs::path& dir, RunSummary& summary) {
  const long samples = std::max<long>(minimum_certificate_samples(levels), 1024);
  const auto reports = certify_sweep(src, levels, samples);
  const fs::path table = dir / (prefix + "residual_table.csv");
  write_csv(table, [&](std::ostream& out) { write_certificate_csv(out, reports); });
  Json list = Json::array();
  for (const auto& r : reports) list.push_back(certificate_to_json(r));
  const fs::path certificates = dir / (prefix + "certificates.json");
  write_json(certificates, list);

  bool all = true;
  std::string worst;
  for (const auto& r : reports) {
    if (!r.pass) {
      all = false;
      worst = "k=" + std::to_string(r.k) + " pointwise " +
              describe(r.max_pointwise_residual, r.pointwise_bound) + ", l2 " +
              describe(r.l2_residual, r.l2_bound);
      break;
    }
  }
  summary.checks.push_back({prefix + "ck-certificate", all, certificates.string(),
                            all ? "k=0.." + std::to_string(levels) + " within 2^-k c" : worst});

  const MassProfile profile = MassProfile::from_source(src);
  const DyadicPartition partition = DyadicPartition::build(profile, levels + 1);
  write_csv(dir / (prefix + "partition.csv"),
            [&](std::ostream& out) { write_partition_csv(out, partition); });
  const double c = partition.total_mass();
  double mass_error = 0.0;
  bool nested = true;
  for (int q = 0; q <= partition.depth(); ++q) {
    const auto& level = partition.level(q);
    for (std::size_t p = 0; p + 1 < level.size(); ++p) {
      mass_error = std::max(mass_error,
                            std::abs(profile(level[p + 1]) - profile(level[p]) - std::ldexp(c, -q)));
    }
    if (q > 0) {
      const auto& coarse = partition.level(q - 1);
      for (std::size_t p = 0; p < coarse.size(); ++p) nested = nested && level[2 * p] == coarse[p];
    }
  }
  const bool partition_ok = mass_error <= 1e-10 * c && nested;
  summary.checks.push_back({prefix + "partition", partition_ok, (dir / (prefix + "partition.csv")).string(),
                            "mass error " + format_double(mass_error) + (nested ? "" : ", nesting broken")});

  const auto blocks = block_fields(src, squares(partition, levels));
  double block_excess = -1.0;
  for (const auto& b : blocks) {
    block_excess = std::max(block_excess, b.field->l2_norm() - std::ldexp(c, -b.level));
  }
  summary.checks.push_back({prefix + "block-bound", block_excess <= 1e-10, certificates.string(),
                            "max ||g|| - 2^-q c = " + format_double(block_excess)});
}

}  // namespace

void ExperimentConfig::validate() const {
  static const std::vector<std::string> names = {"certify-ck", "gronwall", "nls", "ac-proxy",
                                                 "all"};
  if (std::find(names.begin(), names.end(), experiment) == names.end()) {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  if (dim != 1 && dim != 2) throw ConfigError("dim must be 1 or 2");
  if (bandwidth < 1) throw ConfigError("bandwidth must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("time must be positive");
  if (levels < 1 || levels > 20) throw ConfigError("levels must be in 1..20");
  if (steps < 1) throw ConfigError("steps must be positive");
  if (pieces < 1) throw ConfigError("pieces must be positive");
  if (out.empty()) throw ConfigError("out must be a directory path");
  if (ns.empty()) throw ConfigError("ns must list at least one index");
  for (int n : ns) {
    if (n < 1) throw ConfigError("ns entries must be positive");
  }
}

void apply_config_json(ExperimentConfig& config, const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known = {
      "experiment", "dim",  "bandwidth", "time",      "levels",       "steps", "seed",
      "family",     "out",  "pieces",    "potential", "nonlinearity", "ns"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  try {
    if (j.contains("experiment")) config.experiment = j["experiment"].get<std::string>();
    if (j.contains("dim")) config.dim = j["dim"].get<int>();
    if (j.contains("bandwidth")) config.bandwidth = j["bandwidth"].get<int>();
    if (j.contains("time")) config.horizon = j["time"].get<double>();
    if (j.contains("levels")) config.levels = j["levels"].get<int>();
    if (j.contains("steps")) config.steps = j["steps"].get<int>();
    if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("family")) config.family = j["family"].get<std::string>();
    if (j.contains("out")) config.out = j["out"].get<std::string>();
    if (j.contains("pieces")) config.pieces = j["pieces"].get<int>();
    if (j.contains("potential")) config.potential = j["potential"].get<std::string>();
    if (j.contains("nonlinearity")) config.nonlinearity = j["nonlinearity"].get<std::string>();
    if (j.contains("ns")) config.ns = j["ns"].get<std::vector<int>>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

bool RunSummary::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

BoundedPotential potential_from_registry(const std::string& spec, const ModeLattice& state,
                                         double horizon, std::uint64_t seed) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (name == "zero") return BoundedPotential::zero(state, horizon);
  if (name == "scalar") return BoundedPotential::scalar(state, parse_number(arg, spec), horizon);
  if (name == "imag") {
    return BoundedPotential::scalar(state, Complex(0.0, parse_number(arg, spec)), horizon);
  }
  if (name == "cos") {
    // a * 2 cos(2 pi x_1)
    const double a = parse_number(arg, spec);
    const ModeEntry e[2] = {{{-1, 0}, a}, {{1, 0}, a}};
    return BoundedPotential::multiplication(
        state, {0.0, horizon}, {FourierField::from_coefficients(state.dim(), 1, e)});
  }
  RandomPotentialOptions options;
  options.horizon = horizon;
  if (name == "random-real") {
    options.kind = RandomPotentialKind::real_multiplication;
  } else if (name == "random-complex") {
    options.kind = RandomPotentialKind::complex_multiplication;
  } else if (name == "random-operator") {
    options.kind = RandomPotentialKind::operator_matrix;
  } else {
    throw ConfigError("unknown potential '" + spec + "'");
  }
  auto rng = stream(seed, kPotential);
  return random_potential(state, options, rng);
}

RunSummary run_certify_ck(const ExperimentConfig& config) {
  RunSummary summary;
  const fs::path dir = prepare(config, "certify-ck");
  auto rng = stream(config.seed, kSource);
  RandomSourceOptions options;
  options.dim = config.dim;
  options.bandwidth = config.bandwidth;
  options.pieces = config.pieces;
  options.horizon = config.horizon;
  const StepSource src = random_step_source(options, rng);
  write_json(dir / "source.json", source_to_json(src));
  certify_source(src, config.levels, "", dir, summary);
  return summary;
}

RunSummary run_gronwall(const ExperimentConfig& config) {
  RunSummary summary;
  const fs::path dir = prepare(config, "gronwall");
  const ModeLattice state(config.dim, config.bandwidth);
  const BoundedPotential v =
      potential_from_registry(config.potential, state, config.horizon, config.seed);
  auto rng = stream(config.seed, kState);
  const FourierField u0 = random_band_field(config.dim, config.bandwidth, 1.0, rng);
  const Trajectory traj = evolve_with_potential(u0, v, config.horizon, config.steps);
  const GronwallReport report = gronwall_certificate(traj, v);

  Json j = gronwall_to_json(report);
  j["potential"] = config.potential;
  j["steps"] = config.steps;
  j["norm_integral"] = v.norm_integral(0.0, config.horizon);
  j["final_norm"] = traj.states.back().l2_norm();
  const fs::path path = dir / "report.json";
  write_json(path, j);
  write_json(dir / "potential.json", potential_to_json(v));
  summary.checks.push_back({"gronwall-bound", report.bound_pass, path.string(),
                            "worst ratio " + format_double(report.worst_ratio)});
  if (report.mass_checked) {
    summary.checks.push_back({"gronwall-mass", report.mass_pass, path.string(),
                              "drift " + format_double(report.mass_drift_max)});
  }

  const StepSource src = induced_source(traj, v);
  if (src.l1_mass() > 0.0) certify_source(src, config.levels, "pipeline-", dir, summary);
  return summary;
}

RunSummary run_nls(const ExperimentConfig& config) {
  RunSummary summary;
  const fs::path dir = prepare(config, "nls");
  const Nonlinearity nl = [&] {
    try {
      return Nonlinearity::from_registry(config.nonlinearity);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  const fs::path path = dir / "report.json";
  auto lip_rng = stream(config.seed, kLipschitz);
  try {
    check_lipschitz(nl, lip_rng, 1000, config.horizon);
    summary.checks.push_back({"lipschitz-spot-check", true, path.string(), "1000 triples"});
  } catch (const LipschitzViolation& e) {
    summary.checks.push_back({"lipschitz-spot-check", false, path.string(), e.what()});
    write_json(path, {{"nonlinearity", nl.label}, {"error", e.what()}});
    return summary;
  }

  auto rng = stream(config.seed, kState);
  const FourierField u0 = random_band_field(config.dim, config.bandwidth, 1.0, rng);
  PicardOptions options;
  options.steps = config.steps;
  GlobalSolution sol;
  try {
    sol = global_solve(u0, nl, config.horizon, options);
  } catch (const PicardDivergence& e) {
    write_csv(dir / "picard_log.csv", [&](std::ostream& out) { write_picard_log_csv(out, e.log()); });
    summary.checks.push_back({"picard-convergence", false, (dir / "picard_log.csv").string(), e.what()});
    return summary;
  }
  write_csv(dir / "picard_log.csv", [&](std::ostream& out) { write_picard_log_csv(out, sol.log); });

  const double norm0 = u0.l2_norm();
  const double ratio = max_contraction_ratio(sol.log, 1e-10 * std::max(1.0, norm0));
  const double count_bound = 1.0 + 2.0 * sol.lipschitz_mass;
  const double final_norm = sol.endpoint_norms.back();
  bool endpoints_ok = true;
  for (std::size_t j = 0; j < sol.endpoint_norms.size(); ++j) {
    endpoints_ok = endpoints_ok &&
                   sol.endpoint_norms[j] <= std::ldexp(norm0, int(j)) * (1.0 + 1e-4);
  }
  double drift = 0.0;
  for (const auto& s : sol.trajectory.states) drift = std::max(drift, std::abs(s.l2_norm() - norm0));

  Json intervals = Json::array();
  for (const Interval& iv : sol.intervals) intervals.push_back({iv.lo, iv.hi});
  Json j{{"nonlinearity", nl.label},
         {"steps_per_interval", config.steps},
         {"intervals", intervals},
         {"lipschitz_mass", sol.lipschitz_mass},
         {"interval_count_bound", count_bound},
         {"endpoint_norms", sol.endpoint_norms},
         {"a_priori_bound", sol.a_priori_bound},
         {"max_contraction_ratio", ratio},
         {"mass_drift_max", drift},
         {"iterations", sol.log.size()}};
  write_json(path, j);

  summary.checks.push_back({"picard-contraction", ratio <= 0.55, (dir / "picard_log.csv").string(),
                            "max ratio " + format_double(ratio)});
  summary.checks.push_back({"interval-count", double(sol.intervals.size()) <= count_bound,
                            path.string(),
                            std::to_string(sol.intervals.size()) + " <= " + format_double(count_bound)});
  summary.checks.push_back({"a-priori-bound",
                            endpoints_ok && final_norm <= sol.a_priori_bound * (1.0 + 1e-4),
                            path.string(), describe(final_norm, sol.a_priori_bound)});
  if (nl.real_potential) {
    summary.checks.push_back({"nls-mass", drift <= 1e-6, path.string(),
                              "drift " + format_double(drift)});
  }
  const StepSource src = nls_source(sol.trajectory, nl);
  if (src.l1_mass() > 0.0) certify_source(src, config.levels, "pipeline-", dir, summary);
  return summary;
}

RunSummary run_ac_proxy(const ExperimentConfig& config) {
  RunSummary summary;
  const fs::path dir = prepare(config, "ac-proxy");
  DataFamily family;
  try {
    family = DataFamily::from_label(config.family, config.dim, config.seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  AcProxyOptions options;
  options.horizon = config.horizon;
  if (config.dim == 2) options.space_cells = 64;
  const AcProxyReport report = ac_proxy_report(family, config.ns, options);
  const Json j = ac_report_to_json(report);
  const fs::path path = dir / "report.json";
  write_json(path, j);
  write_csv(dir / "ratios.csv", [&](std::ostream& out) { write_ac_csv(out, report); });

  const auto problems = validate_ac_report(j);
  summary.checks.push_back({"ac-report-schema", problems.empty(), path.string(),
                            problems.empty() ? "valid" : problems.front()});
  double worst = 0.0;
  for (const auto& e : report.entries) {
    const double expected = config.horizon * e.initial_norm * e.initial_norm;
    worst = std::max(worst, std::abs(e.total_mass - expected) / std::max(expected, 1e-300));
  }
  summary.checks.push_back({"measure-coherence", worst <= 1e-8, path.string(),
                            "relative mass error " + format_double(worst)});
  return summary;
}

RunSummary run(const ExperimentConfig& config) {
  config.validate();
  fs::create_directories(config.out);
  RunSummary summary;
  auto append = [&](RunSummary part) {
    summary.checks.insert(summary.checks.end(), part.checks.begin(), part.checks.end());
  };
  const std::string& e = config.experiment;
  if (e == "certify-ck" || e == "all") append(run_certify_ck(config));
  if (e == "gronwall" || e == "all") append(run_gronwall(config));
  if (e == "nls" || e == "all") append(run_nls(config));
  if (e == "ac-proxy" || e == "all") append(run_ac_proxy(config));

  Json checks = Json::array();
  for (const auto& c : summary.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"artifact", c.artifact}, {"detail", c.detail}});
  }
  Json cfg{{"experiment", config.experiment}, {"dim", config.dim},
           {"bandwidth", config.bandwidth},   {"time", config.horizon},
           {"levels", config.levels},         {"steps", config.steps},
           {"seed", config.seed},             {"family", config.family},
           {"pieces", config.pieces},         {"potential", config.potential},
           {"nonlinearity", config.nonlinearity}, {"ns", config.ns}};
  write_json(fs::path(config.out) / "summary.json",
             {{"config", cfg}, {"checks", checks}, {"pass", summary.pass()}});
  return summary;
}

}  // namespace schrolab
