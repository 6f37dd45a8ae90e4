// Copyright 2026 The SPEA Authors
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

#include "report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "spea/error.hpp"
#include "spea/rng.hpp"

namespace spea::cli {
namespace {

Table make_table(std::vector<std::string> columns) { return Table{std::move(columns), Json::array()}; }

void add_row(Table& t, Json row) {
  // Every column present, in order.
  Json ordered = Json::object();
  for (const auto& c : t.columns) ordered[c] = row.at(c);
  t.rows.push_back(std::move(ordered));
}

std::string csv_field(const Json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  if (v.is_null()) return {};
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  return v.dump();
}

void add_summary(Json& row, const std::string& prefix, const Summary& s) {
  row[prefix + "_mean"] = s.mean;
  row[prefix + "_sd"] = s.sd;
  row[prefix + "_p25"] = s.p25;
  row[prefix + "_p75"] = s.p75;
}

std::vector<std::string> summary_columns(const std::string& prefix) {
  return {prefix + "_mean", prefix + "_sd", prefix + "_p25", prefix + "_p75"};
}

}  // namespace

Table search_table(const std::vector<RunRecord>& records) {
  Table t = make_table({"command", "operator", "dc", "method", "a_schedule", "seed", "shots", "iterations_used",
                        "converged", "c_star", "theta_star_cycles", "theta_star_rad", "matched_phase_cycles",
                        "matched_phase_rad", "abs_inner_product", "phase_error_rad", "circuit_settings",
                        "wall_time_s"});
  for (const auto& r : records) {
    add_row(t, {{"command", r.command},
                {"operator", r.op},
                {"dc", r.dc},
                {"method", r.method},
                {"a_schedule", r.a_schedule},
                {"seed", r.seed},
                {"shots", r.shots},
                {"iterations_used", r.iterations_used},
                {"converged", r.converged},
                {"c_star", r.c_star},
                {"theta_star_cycles", r.theta_star},
                {"theta_star_rad", r.theta_star_rad},
                {"matched_phase_cycles", r.matched_phase},
                {"matched_phase_rad", r.matched_phase_rad},
                {"abs_inner_product", r.abs_inner_product},
                {"phase_error_rad", r.phase_error_rad},
                {"circuit_settings", r.circuit_settings},
                {"wall_time_s", r.wall_time_s}});
  }
  return t;
}

Table search_summary_table(const SearchAggregate& a, const RunRecord& first) {
  std::vector<std::string> cols{"operator", "dc", "method", "a_schedule", "runs", "converged", "convergence_rate"};
  for (const auto& p : {"iterations", "phase_error_rad", "abs_inner_product"}) {
    for (auto& c : summary_columns(p)) cols.push_back(c);
  }
  Table t = make_table(cols);
  Json row = {{"operator", first.op},
              {"dc", first.dc},
              {"method", first.method},
              {"a_schedule", first.a_schedule},
              {"runs", a.runs},
              {"converged", a.converged},
              {"convergence_rate", a.runs ? static_cast<double>(a.converged) / static_cast<double>(a.runs) : 0.0}};
  add_summary(row, "iterations", a.iterations);
  add_summary(row, "phase_error_rad", a.phase_error_rad);
  add_summary(row, "abs_inner_product", a.abs_inner_product);
  add_row(t, row);
  return t;
}

Table trial_table(const std::vector<TrialRecord>& trials) {
  Table t = make_table({"command", "operator", "dc", "trial", "seed", "failed", "pairs_found", "searches",
                        "fidelity", "phase_error_rad", "wall_time_s"});
  for (const auto& r : trials) {
    add_row(t, {{"command", "decompose"},
                {"operator", r.op},
                {"dc", r.dc},
                {"trial", r.trial},
                {"seed", r.seed},
                {"failed", r.failed},
                {"pairs_found", r.pairs_found},
                {"searches", r.searches},
                {"fidelity", r.fidelity},
                {"phase_error_rad", r.phase_error_rad},
                {"wall_time_s", r.wall_time_s}});
  }
  return t;
}

Table dc_summary_table(const std::vector<DcAggregate>& aggregates) {
  std::vector<std::string> cols{"dc", "trials", "successes", "fails", "target_reached"};
  for (const auto& p : {"fidelity", "phase_error_rad"}) {
    for (auto& c : summary_columns(p)) cols.push_back(c);
  }
  Table t = make_table(cols);
  for (const auto& a : aggregates) {
    Json row = {{"dc", a.dc},
                {"trials", a.trials},
                {"successes", a.successes},
                {"fails", a.fails},
                {"target_reached", a.target_reached}};
    add_summary(row, "fidelity", a.fidelity);
    add_summary(row, "phase_error_rad", a.phase_error_rad);
    add_row(t, row);
  }
  return t;
}

Table bound_trial_table(const std::vector<BoundTrial>& trials) {
  Table t = make_table({"trial", "dim", "dc", "theta_r_cycles", "c_star", "delta", "status", "max_phase_distance",
                        "nearest_phase_distance", "fidelity_floor", "window_weight"});
  for (const auto& b : trials) {
    const char* status = !b.applicable                                 ? "not_applicable"
                         : (b.phase_violation || b.fidelity_violation) ? "violated"
                                                                       : "ok";
    add_row(t, {{"trial", b.trial},
                {"dim", b.dim},
                {"dc", b.dc},
                {"theta_r_cycles", b.theta_r},
                {"c_star", b.c_star},
                {"delta", b.delta},
                {"status", status},
                {"max_phase_distance", b.applicable ? Json(b.max_phase_distance) : Json(nullptr)},
                {"nearest_phase_distance", b.nearest_distance},
                {"fidelity_floor", b.applicable ? Json(b.fidelity_floor) : Json(nullptr)},
                {"window_weight", b.window_weight}});
  }
  return t;
}

Table verify_summary_table(const VerifyReport& r) {
  Table t = make_table({"trials", "applicable", "not_applicable", "phase_violations", "fidelity_violations",
                        "min_phase_margin", "min_fidelity_margin"});
  add_row(t, {{"trials", r.trials.size()},
              {"applicable", r.applicable},
              {"not_applicable", r.not_applicable},
              {"phase_violations", r.phase_violations},
              {"fidelity_violations", r.fidelity_violations},
              {"min_phase_margin", r.min_phase_margin},
              {"min_fidelity_margin", r.min_fidelity_margin}});
  return t;
}

Table sidelobe_table(const std::vector<SidelobeRow>& rows) {
  Table t = make_table({"dc", "sidelobe_max", "central_lobe_width"});
  for (const auto& r : rows) add_row(t, {{"dc", r.dc}, {"sidelobe_max", r.sidelobe_max}, {"central_lobe_width", r.lobe_width}});
  return t;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "," : "") << csv_field(row.at(table.columns[i]));
    }
    out << '\n';
  }
}

Json make_report(const std::string& command, const Json& parameters, const Table& records, const Table& summary) {
  Json j = Json::object();
  j["command"] = command;
  j["rng_algorithm"] = std::string(Rng::kAlgorithm);
  j["parameters"] = parameters;
  j["records"] = records.rows;
  j["summary"] = summary.rows;
  return j;
}

void write_output(const std::string& path, const std::string& command, const Json& parameters, const Table& records,
                  const Table& summary) {
  const std::filesystem::path p(path);
  auto open = [](const std::filesystem::path& where) {
    std::ofstream f(where);
    if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write " + where.string());
    return f;
  };
  if (p.extension() == ".json") {
    auto f = open(p);
    f << make_report(command, parameters, records, summary).dump(2) << '\n';
  } else if (p.extension() == ".csv") {
    auto f = open(p);
    write_csv(f, records);
    std::filesystem::path side = p;
    side.replace_extension(".summary.csv");
    auto g = open(side);
    write_csv(g, summary);
  } else {
    throw Error(ErrorCode::kInvalidArgument, "--out must end in .csv or .json");
  }
}

}  // namespace spea::cli
