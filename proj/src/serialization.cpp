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

#include "schrolab/serialization.hpp"

#include <cstdio>
#include <stdexcept>

namespace schrolab {
namespace {

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json lattice_to_json(const ModeLattice& lattice) {
  return {{"dim", lattice.dim()}, {"bandwidth", lattice.bandwidth()}};
}

ModeLattice lattice_from_json(const Json& j) {
  return ModeLattice(j.at("dim").get<int>(), j.at("bandwidth").get<int>());
}

}  // namespace

std::string format_double(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

Json field_to_json(const FourierField& f) {
  Json coeffs = Json::array();
  const auto values = f.coefficients();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == Complex{}) continue;
    const Mode k = f.lattice().mode(i);
    Json row = Json::array({k[0]});
    if (f.dim() == 2) row.push_back(k[1]);
    row.push_back(values[i].real());
    row.push_back(values[i].imag());
    coeffs.push_back(std::move(row));
  }
  return {{"dim", f.dim()}, {"bandwidth", f.bandwidth()}, {"coeffs", std::move(coeffs)}};
}

FourierField field_from_json(const Json& j) {
  const int dim = j.at("dim").get<int>();
  const int bandwidth = j.at("bandwidth").get<int>();
  std::vector<ModeEntry> entries;
  for (const Json& row : j.at("coeffs")) {
    if (!row.is_array() || int(row.size()) != dim + 2) {
      throw std::invalid_argument("coefficient row must hold dim indices plus re, im");
    }
    Mode k{row[0].get<int>(), dim == 2 ? row[1].get<int>() : 0};
    entries.push_back({k, {row[std::size_t(dim)].get<double>(),
                           row[std::size_t(dim) + 1].get<double>()}});
  }
  return FourierField::from_coefficients(dim, bandwidth, entries);
}

Json source_to_json(const StepSource& src) {
  Json pieces = Json::array();
  for (const FourierField& p : src.pieces()) pieces.push_back(field_to_json(p));
  return {{"breakpoints", src.breakpoints()}, {"pieces", std::move(pieces)}};
}

StepSource source_from_json(const Json& j) {
  std::vector<FourierField> pieces;
  for (const Json& p : j.at("pieces")) pieces.push_back(field_from_json(p));
  return StepSource(j.at("breakpoints").get<std::vector<double>>(), std::move(pieces));
}

Json potential_to_json(const BoundedPotential& v) {
  Json out{{"state", lattice_to_json(v.state_lattice())}, {"breakpoints", v.breakpoints()}};
  if (v.kind() == BoundedPotential::Kind::multiplication) {
    out["kind"] = "multiplication";
    Json profiles = Json::array();
    for (const FourierField& p : v.profiles()) profiles.push_back(field_to_json(p));
    out["profiles"] = std::move(profiles);
  } else {
    out["kind"] = "operator";
    Json matrices = Json::array();
    for (const Eigen::MatrixXcd& m : v.matrices()) {
      Json rows = Json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_pair(m(r, c)));
        rows.push_back(std::move(row));
      }
      matrices.push_back(std::move(rows));
    }
    out["matrices"] = std::move(matrices);
  }
  out["norm_track"] = v.norm_track();
  return out;
}

BoundedPotential potential_from_json(const Json& j) {
  const ModeLattice state = lattice_from_json(j.at("state"));
  auto breakpoints = j.at("breakpoints").get<std::vector<double>>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "multiplication") {
    std::vector<FourierField> profiles;
    for (const Json& p : j.at("profiles")) profiles.push_back(field_from_json(p));
    return BoundedPotential::multiplication(state, std::move(breakpoints), std::move(profiles));
  }
  if (kind == "operator") {
    std::vector<Eigen::MatrixXcd> matrices;
    for (const Json& rows : j.at("matrices")) {
      const auto n = Eigen::Index(rows.size());
      Eigen::MatrixXcd m(n, n);
      for (Eigen::Index r = 0; r < n; ++r) {
        const Json& row = rows[std::size_t(r)];
        if (Eigen::Index(row.size()) != n) throw std::invalid_argument("operator matrix not square");
        for (Eigen::Index c = 0; c < n; ++c) m(r, c) = complex_from(row[std::size_t(c)]);
      }
      matrices.push_back(std::move(m));
    }
    return BoundedPotential::operator_matrices(state, std::move(breakpoints), std::move(matrices));
  }
  throw std::invalid_argument("unknown potential kind '" + kind + "'");
}

Json certificate_to_json(const CertificateReport& r) {
  return {{"k", r.k},
          {"c", r.mass},
          {"T", r.horizon},
          {"samples", r.sample_count},
          {"max_pointwise_residual", r.max_pointwise_residual},
          {"l2_residual", r.l2_residual},
          {"bounds",
           {{"pointwise", r.pointwise_bound},
            {"l2", r.l2_bound},
            {"relative_slack", r.relative_slack},
            {"riemann_tolerance", r.riemann_tolerance}}},
          {"pass", r.pass}};
}

Json gronwall_to_json(const GronwallReport& r) {
  return {{"bound_margin_min", r.bound_margin_min},
          {"worst_ratio", r.worst_ratio},
          {"mass_drift_max", r.mass_drift_max},
          {"mass_checked", r.mass_checked},
          {"ratio_tolerance", r.ratio_tolerance},
          {"drift_tolerance", r.drift_tolerance},
          {"pass", r.pass}};
}

Json ac_report_to_json(const AcProxyReport& r) {
  Json entries = Json::array();
  for (const AcProxyEntry& e : r.entries) {
    Json boxes = Json::array();
    for (const BoxRecord& b : e.boxes) {
      Json center = Json::array({b.centre_t});
      Json sides = Json::array({b.side_t});
      for (double x : b.centre_x) {
        center.push_back(x);
        sides.push_back(b.side_x);
      }
      boxes.push_back({{"stage", b.stage},
                       {"center", std::move(center)},
                       {"sides", std::move(sides)},
                       {"mass", b.mass},
                       {"lebesgue", b.lebesgue},
                       {"ratio", b.ratio},
                       {"slice_ratio", b.slice_ratio}});
    }
    entries.push_back({{"n", e.n},
                       {"initial_norm", e.initial_norm},
                       {"total_mass", e.total_mass},
                       {"max_ratio", e.max_ratio},
                       {"max_slice_ratio", e.max_slice_ratio},
                       {"contrast", e.contrast},
                       {"boxes", std::move(boxes)}});
  }
  const AcProxyOptions& o = r.options;
  return {{"family", r.family},
          {"diagnostic", "finite-n trend report; no pass/fail is asserted"},
          {"options",
           {{"T", o.horizon},
            {"space_cells", o.space_cells},
            {"time_cells", o.time_cells},
            {"samples_per_cell", o.samples_per_cell},
            {"stages", o.stages},
            {"centre_time", o.centre_time},
            {"centre_space", o.centre_space}}},
          {"max_initial_norm", r.max_initial_norm},
          {"entries", std::move(entries)}};
}

std::vector<std::string> validate_ac_report(const Json& j) {
  std::vector<std::string> problems;
  auto need = [&](const Json& obj, const char* key, auto check, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
      problems.push_back(where + ": missing '" + key + "'");
      return false;
    }
    if (!check(obj.at(key))) {
      problems.push_back(where + ": bad '" + key + "'");
      return false;
    }
    return true;
  };
  auto is_string = [](const Json& v) { return v.is_string(); };
  auto is_array = [](const Json& v) { return v.is_array(); };
  auto is_count = [](const Json& v) { return v.is_number_integer() && v.get<long>() >= 0; };
  auto is_nonneg = [](const Json& v) { return v.is_number() && v.get<double>() >= 0.0; };
  auto is_positive = [](const Json& v) { return v.is_number() && v.get<double>() > 0.0; };

  need(j, "family", is_string, "report");
  need(j, "max_initial_norm", is_nonneg, "report");
  if (!need(j, "entries", is_array, "report")) return problems;
  for (std::size_t e = 0; e < j["entries"].size(); ++e) {
    const Json& entry = j["entries"][e];
    const std::string where = "entries[" + std::to_string(e) + "]";
    need(entry, "n", is_count, where);
    for (const char* key : {"initial_norm", "total_mass", "max_ratio", "max_slice_ratio",
                            "contrast"}) {
      need(entry, key, is_nonneg, where);
    }
    if (!need(entry, "boxes", is_array, where)) continue;
    if (entry["boxes"].empty()) problems.push_back(where + ": no boxes");
    for (std::size_t b = 0; b < entry["boxes"].size(); ++b) {
      const Json& box = entry["boxes"][b];
      const std::string at = where + ".boxes[" + std::to_string(b) + "]";
      const bool have_center = need(box, "center", is_array, at);
      const bool have_sides = need(box, "sides", is_array, at);
      if (have_center && have_sides && box["center"].size() != box["sides"].size()) {
        problems.push_back(at + ": center and sides differ in length");
      }
      if (have_sides) {
        for (const Json& side : box["sides"]) {
          if (!is_positive(side)) problems.push_back(at + ": non-positive side");
        }
      }
      need(box, "mass", is_nonneg, at);
      need(box, "lebesgue", is_positive, at);
      need(box, "ratio", is_nonneg, at);
    }
  }
  return problems;
}

void write_partition_csv(std::ostream& out, const DyadicPartition& partition) {
  out << "q,p,t\n";
  for (int q = 0; q <= partition.depth(); ++q) {
    const auto& level = partition.level(q);
    for (std::size_t p = 0; p < level.size(); ++p) {
      out << q << ',' << p << ',' << format_double(level[p]) << '\n';
    }
  }
}

void write_picard_log_csv(std::ostream& out, const std::vector<PicardLogEntry>& log) {
  out << "interval,iteration,distance\n";
  for (const PicardLogEntry& e : log) {
    out << e.interval << ',' << e.iteration << ',' << format_double(e.distance) << '\n';
  }
}

void write_ac_csv(std::ostream& out, const AcProxyReport& report) {
  out << "n,stage,ratio,slice_ratio\n";
  for (const AcProxyEntry& e : report.entries) {
    for (const BoxRecord& b : e.boxes) {
      out << e.n << ',' << b.stage << ',' << format_double(b.ratio) << ','
          << format_double(b.slice_ratio) << '\n';
    }
  }
}

void write_certificate_csv(std::ostream& out, const std::vector<CertificateReport>& reports) {
  out << "k,c,T,samples,max_pointwise_residual,pointwise_bound,l2_residual,l2_bound,pass\n";
  for (const CertificateReport& r : reports) {
    out << r.k << ',' << format_double(r.mass) << ',' << format_double(r.horizon) << ','
        << r.sample_count << ',' << format_double(r.max_pointwise_residual) << ','
        << format_double(r.pointwise_bound) << ',' << format_double(r.l2_residual) << ','
        << format_double(r.l2_bound) << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

}  // namespace schrolab
