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

// JSON and CSV forms of the value types and reports. Doubles go through
// nlohmann's shortest round-trip formatting in JSON and %.17g in CSV, so a
// value written and read back is bit-identical.

#ifndef SCHROLAB_SERIALIZATION_HPP
#define SCHROLAB_SERIALIZATION_HPP

#include <nlohmann/json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "schrolab/ck_decomposition.hpp"
#include "schrolab/measure_lab.hpp"
#include "schrolab/nls_solver.hpp"
#include "schrolab/potential_evolution.hpp"

namespace schrolab {

using Json = nlohmann::json;

/// {dim, bandwidth, coeffs: [[k_1, (k_2,) re, im], ...]}, nonzero entries only.
Json field_to_json(const FourierField& f);
FourierField field_from_json(const Json& j);

/// {breakpoints: [...], pieces: [field, ...]}.
Json source_to_json(const StepSource& src);
StepSource source_from_json(const Json& j);

/// {kind: "multiplication" | "operator", state: {dim, bandwidth}, breakpoints,
///  profiles: [field, ...] | matrices: [[[re, im], ...], ...]}.
Json potential_to_json(const BoundedPotential& v);
BoundedPotential potential_from_json(const Json& j);

Json certificate_to_json(const CertificateReport& r);
Json gronwall_to_json(const GronwallReport& r);
Json ac_report_to_json(const AcProxyReport& r);

/// Problems found in an ac-proxy report; empty means valid.
std::vector<std::string> validate_ac_report(const Json& j);

/// Rows (q, p, t).
void write_partition_csv(std::ostream& out, const DyadicPartition& partition);
/// Rows (interval, iteration, distance).
void write_picard_log_csv(std::ostream& out, const std::vector<PicardLogEntry>& log);
/// Rows (n, stage, ratio, slice_ratio).
void write_ac_csv(std::ostream& out, const AcProxyReport& report);
/// Rows (k, c, T, samples, max_pointwise_residual, pointwise_bound, l2_residual, l2_bound, pass).
void write_certificate_csv(std::ostream& out, const std::vector<CertificateReport>& reports);

/// %.17g.
std::string format_double(double x);

}  // namespace schrolab

#endif  // SCHROLAB_SERIALIZATION_HPP
