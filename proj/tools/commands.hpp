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

// Experiment drivers behind the spea command-line tool. Each driver is a
// plain function so the acceptance checks can run exactly what the tool runs.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spea/decomposition.hpp"
#include "spea/fixtures.hpp"
#include "spea/optimizer.hpp"

namespace spea::cli {

/// Runs fn(0) .. fn(count - 1) on up to `jobs` threads. Exceptions are
/// rethrown on the calling thread (the one with the lowest index wins).
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for n < 2
  double p25 = 0.0;
  double p75 = 0.0;
};

/// Percentiles interpolate linearly between order statistics.
Summary summarize(std::vector<double> values);

/// Operator from exactly one of: built-in name, unitary matrix file,
/// Hamiltonian matrix file (exponentiated as e^{iH}).
fixtures::NamedOperator load_operator(const std::string& name, const std::string& unitary_file,
                                      const std::string& hamiltonian_file);

/// "lo:hi" in cycles.
optimizer::PhaseRange parse_range(const std::string& text);

/// Comma-separated amplitudes; each entry is real ("0.5") or complex
/// ("0.5+0.25i", "-1i").
ComplexVector parse_state(const std::string& text);

/// Oracle eigenspace closest to a state: phases within `cluster_tol` cycles
/// form one eigenspace and the overlap is the norm of the projection.
struct OracleMatch {
  double phase = 0.0;
  double abs_inner_product = 0.0;
};
OracleMatch match_oracle(const UnitarySpectrum& oracle, const QuantumState& state, double cluster_tol = 1e-8);

// ---------------------------------------------------------------- search

struct SearchOptions {
  optimizer::OptimizerConfig optimizer;
  std::optional<ComplexVector> state;  // random initial state when empty
  int repeats = 1;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct RunRecord {
  std::string command;
  std::string op;
  int dc = 0;
  std::string method;
  std::string a_schedule;
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  int iterations_used = 0;
  bool converged = false;
  double c_star = 0.0;
  double theta_star = 0.0;  // cycles
  double theta_star_rad = 0.0;
  double matched_phase = 0.0;  // cycles
  double matched_phase_rad = 0.0;
  double abs_inner_product = 0.0;
  double phase_error_rad = 0.0;
  std::uint64_t circuit_settings = 0;
  double wall_time_s = 0.0;
};

struct SearchAggregate {
  std::size_t runs = 0;
  std::size_t converged = 0;
  Summary iterations;         // converged runs
  Summary phase_error_rad;    // converged runs
  Summary abs_inner_product;  // all runs
};

/// Repeat r runs with seed `seed + r`, so `--seed seed+r --repeats 1`
/// replays row r.
std::vector<RunRecord> run_search(const fixtures::NamedOperator& op, const SearchOptions& options);
SearchAggregate aggregate(const std::vector<RunRecord>& records);

// ------------------------------------------------------------- decompose

struct DecomposeOptions {
  decomposition::DecompositionConfig decomposition;
  std::vector<int> dcs{2};
  int successes = 1;
  int max_trials = 0;  // per dc; 0 means 20 * successes
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct TrialRecord {
  std::string op;
  int dc = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::size_t pairs_found = 0;
  std::size_t searches = 0;
  double fidelity = 0.0;         // 0 for failed trials
  double phase_error_rad = 0.0;  // 0 for failed trials
  double wall_time_s = 0.0;
};

struct DcAggregate {
  int dc = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t fails = 0;
  bool target_reached = false;
  Summary fidelity;
  Summary phase_error_rad;
};

struct DecomposeReport {
  std::vector<TrialRecord> trials;
  std::vector<DcAggregate> aggregates;
};

/// Trial t at any dc runs with seed `seed + t`. Trials are evaluated in
/// blocks of `jobs` and everything past the trial that hits the success
/// target is discarded, so the report does not depend on the job count.
DecomposeReport run_decompose(const fixtures::NamedOperator& op, const DecomposeOptions& options);

// --------------------------------------------------------- verify-bounds

struct VerifyOptions {
  int trials = 500;
  std::size_t dim_min = 1;
  std::size_t dim_max = 8;
  std::vector<int> dcs{2, 3, 4, 8};
  std::uint64_t seed = 0;
  /// Fraction of trials whose state is an eigenvector plus a small random
  /// admixture; the rest are uniformly random states.
  double near_eigenstate_fraction = 0.5;
  /// Rotation phase: half the trials optimize it, half draw it uniformly.
  bool optimize_theta = true;
};

struct BoundTrial {
  std::size_t trial = 0;
  std::size_t dim = 0;
  int dc = 0;
  double theta_r = 0.0;
  double c_star = 0.0;
  double delta = 0.0;
  bool applicable = false;
  double max_phase_distance = 0.0;  // valid when applicable
  double nearest_distance = 0.0;
  double fidelity_floor = 0.0;  // valid when applicable
  double window_weight = 0.0;
  bool phase_violation = false;
  bool fidelity_violation = false;
};

struct VerifyReport {
  std::vector<BoundTrial> trials;
  std::size_t applicable = 0;
  std::size_t not_applicable = 0;
  std::size_t phase_violations = 0;
  std::size_t fidelity_violations = 0;
  double min_phase_margin = 0.0;     // max_phase_distance - nearest distance
  double min_fidelity_margin = 0.0;  // window weight - floor

  std::size_t violations() const { return phase_violations + fidelity_violations; }
};

/// C* is measured on the simulated circuit; the bounds are checked against
/// the spectrum the unitary was built from.
VerifyReport run_verify_bounds(const VerifyOptions& options);

/// Checks one observation against a known spectrum.
BoundTrial check_bounds(const UnitarySpectrum& spectrum, const QuantumState& phi, double theta_r, double c_star,
                        int dc, double delta);

// ------------------------------------------------------------- sidelobes

struct SidelobeRow {
  int dc = 0;
  double sidelobe_max = 0.0;
  double lobe_width = 0.0;  // 2 / dc cycles
};

std::vector<SidelobeRow> run_sidelobes(const std::vector<int>& dcs);

}  // namespace spea::cli
