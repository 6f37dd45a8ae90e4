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

// spea: eigenpair searches, full decompositions and bound checks.
//
// Exit codes: 0 success, 1 usage or input error, 2 convergence-failure
// threshold exceeded, 3 bound violation (verify-bounds).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "report.hpp"
#include "spea/error.hpp"
#include "spea/fixtures.hpp"
#include "spea/qmath.hpp"

namespace {

using spea::cli::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConvergence = 2;
constexpr int kExitViolation = 3;

struct Common {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
  std::string config;
};

struct OperatorArgs {
  std::string op;
  std::string op_file;
  std::string hamiltonian_file;
};

struct OptimizerArgs {
  std::string method = "standard";
  std::string a_schedule = "halving";
  std::uint64_t shots = 0;
  int max_iterations = 50;
  std::string range;
};

void add_common(CLI::App* cmd, Common& c, bool with_jobs = true) {
  cmd->add_option("--seed", c.seed, "base seed, recorded verbatim on every row")->capture_default_str();
  if (with_jobs) cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--out", c.out, "write results to a .csv or .json file");
  cmd->add_option("--config", c.config, "JSON object of option defaults, keyed by long option name");
}

void add_operator(CLI::App* cmd, OperatorArgs& o) {
  auto* name = cmd->add_option("--op", o.op, "built-in operator: u1, u2, u3, u_h2o, identityN");
  auto* file = cmd->add_option("--op-file", o.op_file, "unitary matrix in JSON matrix format");
  auto* ham = cmd->add_option("--hamiltonian-file", o.hamiltonian_file, "Hamiltonian H in JSON matrix format; U = e^{iH}");
  name->excludes(file)->excludes(ham);
  file->excludes(ham);
}

void add_optimizer(CLI::App* cmd, OptimizerArgs& o) {
  cmd->add_option("--method", o.method, "standard | alternative")
      ->check(CLI::IsMember({"standard", "alternative"}))
      ->capture_default_str();
  cmd->add_option("--a-schedule", o.a_schedule, "halving | doubling7")
      ->check(CLI::IsMember({"halving", "doubling7"}))
      ->capture_default_str();
  cmd->add_option("--shots", o.shots, "shots per circuit setting; 0 is exact")->capture_default_str();
  cmd->add_option("--max-iterations", o.max_iterations, "iteration budget per search")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--range", o.range, "restrict theta_r to lo:hi (cycles)");
}

spea::optimizer::OptimizerConfig optimizer_config(const OptimizerArgs& a) {
  spea::optimizer::OptimizerConfig cfg;
  cfg.method = spea::optimizer::parse_method(a.method);
  cfg.a_schedule = spea::optimizer::parse_schedule(a.a_schedule);
  cfg.shots = a.shots;
  cfg.max_iterations = a.max_iterations;
  if (!a.range.empty()) cfg.restrict_range = spea::cli::parse_range(a.range);
  return cfg;
}

Json optimizer_parameters(const OptimizerArgs& a) {
  return {{"method", a.method},
          {"a_schedule", a.a_schedule},
          {"shots", a.shots},
          {"max_iterations", a.max_iterations},
          {"range", a.range}};
}

Json operator_parameters(const OperatorArgs& o) {
  return {{"op", o.op}, {"op_file", o.op_file}, {"hamiltonian_file", o.hamiltonian_file}};
}

std::string json_scalar_to_arg(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw spea::Error(spea::ErrorCode::kParse, "config key '" + key + "' must be a scalar or a list of scalars");
}

/// Fills every option of `cmd` that was not given on the command line from
/// the JSON config file, so flags win over the file and the file over defaults.
void apply_config(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::ifstream f(path);
  if (!f) throw spea::Error(spea::ErrorCode::kInvalidArgument, "cannot read config " + path);
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw spea::Error(spea::ErrorCode::kParse, "config " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw spea::Error(spea::ErrorCode::kParse, "config must be a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    if (key == "config") throw spea::Error(spea::ErrorCode::kInvalidArgument, "config files cannot nest");
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr) throw spea::Error(spea::ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
    if (opt->count() > 0) continue;
    if (value.is_array()) {
      for (const auto& item : value) opt->add_result(json_scalar_to_arg(item, key));
    } else {
      opt->add_result(json_scalar_to_arg(value, key));
    }
    opt->run_callback();
  }
}

void emit(const Common& c, const std::string& command, const Json& params, const spea::cli::Table& records,
          const spea::cli::Table& summary, bool print_records = true) {
  if (print_records) {
    spea::cli::write_csv(std::cout, records);
    std::cout << '\n';
  }
  spea::cli::write_csv(std::cout, summary);
  if (!c.out.empty()) spea::cli::write_output(c.out, command, params, records, summary);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational eigenpair search on a simulated phase-estimation circuit"};
  app.require_subcommand(1, 1);

  // search
  Common search_common;
  OperatorArgs search_op;
  OptimizerArgs search_opt;
  int search_dc = 4;
  int repeats = 1;
  double stop_gap = 1e-4;
  double max_failure_rate = 1.0;
  std::string state_text;
  auto* search = app.add_subcommand("search", "repeated single-eigenpair searches");
  add_operator(search, search_op);
  search->add_option("--state", state_text, "initial amplitudes, comma separated (e.g. 0.5,0.5+0.5i,-0.5i)");
  search->add_option("--dc", search_dc, "control levels")->check(CLI::Range(2, 1 << 20))->capture_default_str();
  search->add_option("--repeats", repeats, "runs with seeds seed, seed+1, ...")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  search->add_option("--stop-gap", stop_gap, "stop once 1 - C* <= gap")->capture_default_str();
  search->add_option("--max-failure-rate", max_failure_rate,
                     "exit 2 when the fraction of unconverged runs exceeds this")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  add_optimizer(search, search_opt);
  add_common(search, search_common);

  // decompose
  Common dec_common;
  OperatorArgs dec_op;
  OptimizerArgs dec_opt;
  std::vector<int> dec_dcs{2};
  int successes = 1;
  int max_trials = 0;
  double c_goal = 0.995;
  double c_req = 0.9;
  int retries = 3;
  auto* decompose = app.add_subcommand("decompose", "full spectral decompositions, repeated per dc");
  add_operator(decompose, dec_op);
  decompose->add_option("--dc", dec_dcs, "control levels, comma separated")
      ->delimiter(',')
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  decompose->add_option("--successes", successes, "successful trials wanted per dc")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  decompose->add_option("--max-trials", max_trials, "trial cap per dc; 0 means 20 x successes")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  decompose->add_option("--c-goal", c_goal, "accept a pair at C* >= c_goal")->capture_default_str();
  decompose->add_option("--c-req", c_req, "fail the trial below this C*")->capture_default_str();
  decompose->add_option("--retries", retries, "extra searches per pair before settling")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_optimizer(decompose, dec_opt);
  add_common(decompose, dec_common);

  // verify-bounds
  Common ver_common;
  spea::cli::VerifyOptions ver;
  auto* verify = app.add_subcommand("verify-bounds", "check the phase and fidelity bounds on random instances");
  verify->add_option("--trials", ver.trials, "random instances")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--dim-min", ver.dim_min, "smallest target dimension")->capture_default_str();
  verify->add_option("--dim-max", ver.dim_max, "largest target dimension")->capture_default_str();
  verify->add_option("--dc", ver.dcs, "control levels, comma separated")
      ->delimiter(',')
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  verify->add_option("--near-fraction", ver.near_eigenstate_fraction, "share of near-eigenstate inputs")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  add_common(verify, ver_common, false);

  // sidelobes
  Common side_common;
  std::vector<int> side_dcs{2, 3, 4, 8, 16};
  auto* sidelobes = app.add_subcommand("sidelobes", "sidelobe maximum and central-lobe width per dc");
  sidelobes->add_option("--dc", side_dcs, "control levels, comma separated")
      ->delimiter(',')
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  sidelobes->add_option("--out", side_common.out, "write results to a .csv or .json file");
  sidelobes->add_option("--config", side_common.config, "JSON object of option defaults");

  // export-fixture
  std::string export_name;
  std::string export_out;
  bool export_hamiltonian = false;
  auto* exporter = app.add_subcommand("export-fixture", "write a built-in operator as a JSON matrix");
  exporter->add_option("--op", export_name, "built-in operator name")->required();
  exporter->add_flag("--hamiltonian", export_hamiltonian, "export H instead of U = e^{iH}");
  exporter->add_option("--out", export_out, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (search->parsed()) {
      apply_config(search, search_common.config);
      spea::cli::SearchOptions opts;
      opts.optimizer = optimizer_config(search_opt);
      opts.optimizer.dc = search_dc;
      opts.optimizer.stop_gap = stop_gap;
      if (!state_text.empty()) opts.state = spea::cli::parse_state(state_text);
      opts.repeats = repeats;
      opts.seed = search_common.seed;
      opts.jobs = search_common.jobs;
      const auto op = spea::cli::load_operator(search_op.op, search_op.op_file, search_op.hamiltonian_file);
      const auto records = spea::cli::run_search(op, opts);
      const auto agg = spea::cli::aggregate(records);

      Json params = operator_parameters(search_op);
      params.update(optimizer_parameters(search_opt));
      params.update(Json{{"dc", search_dc},
                         {"state", state_text},
                         {"repeats", repeats},
                         {"stop_gap", stop_gap},
                         {"seed", search_common.seed},
                         {"jobs", search_common.jobs},
                         {"max_failure_rate", max_failure_rate}});
      emit(search_common, "search", params, spea::cli::search_table(records),
           spea::cli::search_summary_table(agg, records.front()));
      const double fail_rate = 1.0 - static_cast<double>(agg.converged) / static_cast<double>(agg.runs);
      return fail_rate > max_failure_rate ? kExitConvergence : kExitOk;
    }

    if (decompose->parsed()) {
      apply_config(decompose, dec_common.config);
      spea::cli::DecomposeOptions opts;
      opts.decomposition.per_pair = optimizer_config(dec_opt);
      opts.decomposition.c_goal = c_goal;
      opts.decomposition.c_req = c_req;
      opts.decomposition.retries_per_pair = retries;
      opts.dcs = dec_dcs;
      opts.successes = successes;
      opts.max_trials = max_trials;
      opts.seed = dec_common.seed;
      opts.jobs = dec_common.jobs;
      const auto op = spea::cli::load_operator(dec_op.op, dec_op.op_file, dec_op.hamiltonian_file);
      const auto report = spea::cli::run_decompose(op, opts);

      Json params = operator_parameters(dec_op);
      params.update(optimizer_parameters(dec_opt));
      params.update(Json{{"dc", dec_dcs},
                         {"successes", successes},
                         {"max_trials", max_trials},
                         {"c_goal", c_goal},
                         {"c_req", c_req},
                         {"retries", retries},
                         {"seed", dec_common.seed},
                         {"jobs", dec_common.jobs}});
      emit(dec_common, "decompose", params, spea::cli::trial_table(report.trials),
           spea::cli::dc_summary_table(report.aggregates));
      for (const auto& a : report.aggregates) {
        if (!a.target_reached) return kExitConvergence;
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      apply_config(verify, ver_common.config);
      ver.seed = ver_common.seed;
      const auto report = spea::cli::run_verify_bounds(ver);
      const Json params = {{"trials", ver.trials},
                           {"dim_min", ver.dim_min},
                           {"dim_max", ver.dim_max},
                           {"dc", ver.dcs},
                           {"near_fraction", ver.near_eigenstate_fraction},
                           {"seed", ver.seed}};
      emit(ver_common, "verify-bounds", params, spea::cli::bound_trial_table(report.trials),
           spea::cli::verify_summary_table(report), false);
      std::cout << "violations: " << report.violations() << '\n';
      return report.violations() == 0 ? kExitOk : kExitViolation;
    }

    if (sidelobes->parsed()) {
      apply_config(sidelobes, side_common.config);
      const auto rows = spea::cli::sidelobe_table(spea::cli::run_sidelobes(side_dcs));
      spea::cli::write_csv(std::cout, rows);
      if (!side_common.out.empty()) {
        spea::cli::write_output(side_common.out, "sidelobes", Json{{"dc", side_dcs}}, rows,
                                spea::cli::Table{rows.columns, Json::array()});
      }
      return kExitOk;
    }

    if (exporter->parsed()) {
      const auto op = spea::fixtures::by_name(export_name);
      if (export_hamiltonian && !op.hamiltonian) {
        throw spea::Error(spea::ErrorCode::kInvalidArgument, export_name + " has no Hamiltonian");
      }
      const auto& m = export_hamiltonian ? *op.hamiltonian : op.unitary.matrix();
      if (export_out.empty()) {
        std::cout << spea::matrix_to_json(m) << '\n';
      } else {
        spea::save_matrix_file(m, export_out);
      }
      return kExitOk;
    }
  } catch (const spea::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
