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

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "spea/circuit.hpp"
#include "spea/error.hpp"
#include "spea/proximity.hpp"

namespace spea::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kParse, "bad number '" + s + "' in " + what);
  }
  return v;
}

cplx parse_amplitude(std::string token) {
  token = trim(token);
  if (token.empty()) throw Error(ErrorCode::kParse, "empty amplitude");
  if (token.back() != 'i') return {parse_double(token, "state"), 0.0};
  token.pop_back();
  // Split at the last sign that is not the leading one or part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = token.size(); k-- > 1;) {
    if ((token[k] == '+' || token[k] == '-') && token[k - 1] != 'e' && token[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re_part = split == std::string::npos ? "" : token.substr(0, split);
  std::string im_part = split == std::string::npos ? token : token.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  const double re = re_part.empty() ? 0.0 : parse_double(re_part, "state");
  return {re, parse_double(im_part, "state")};
}

UnitarySpectrum random_spectrum(std::size_t n, Rng& rng) {
  std::vector<ComplexVector> seeds(n, ComplexVector(n));
  for (auto& v : seeds) {
    for (cplx& z : v) z = rng.complex_normal();
  }
  UnitarySpectrum s;
  s.eigenvectors = gram_schmidt(seeds);
  s.phases.resize(n);
  for (double& p : s.phases) p = rng.uniform();
  return s;
}

}  // namespace

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

Summary summarize(std::vector<double> values) {
  Summary s;
  s.n = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  double total = 0.0;
  for (double v : values) total += v;
  s.mean = total / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(s.n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, s.n - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  s.p25 = quantile(0.25);
  s.p75 = quantile(0.75);
  return s;
}

fixtures::NamedOperator load_operator(const std::string& name, const std::string& unitary_file,
                                      const std::string& hamiltonian_file) {
  const int given = !name.empty() + !unitary_file.empty() + !hamiltonian_file.empty();
  if (given != 1) {
    throw Error(ErrorCode::kInvalidArgument, "give exactly one of --op, --op-file, --hamiltonian-file");
  }
  if (!name.empty()) return fixtures::by_name(name);
  if (!unitary_file.empty()) return fixtures::from_unitary(unitary_file, load_matrix_file(unitary_file));
  return fixtures::from_hamiltonian(hamiltonian_file, load_matrix_file(hamiltonian_file));
}

optimizer::PhaseRange parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::kParse, "range must look like lo:hi");
  optimizer::PhaseRange r{parse_double(trim(text.substr(0, colon)), "range"),
                          parse_double(trim(text.substr(colon + 1)), "range")};
  if (!(r.lo >= 0.0 && r.lo < r.hi && r.hi <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "range needs 0 <= lo < hi <= 1");
  }
  return r;
}

ComplexVector parse_state(const std::string& text) {
  ComplexVector v;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    v.push_back(parse_amplitude(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return v;
}

OracleMatch match_oracle(const UnitarySpectrum& oracle, const QuantumState& state, double cluster_tol) {
  std::vector<double> weight(oracle.size());
  for (std::size_t k = 0; k < oracle.size(); ++k) weight[k] = std::norm(inner(oracle.eigenvectors[k], state.amplitudes()));
  OracleMatch best{0.0, -1.0};
  for (std::size_t k = 0; k < oracle.size(); ++k) {
    double w = 0.0;
    for (std::size_t j = 0; j < oracle.size(); ++j) {
      if (std::abs(proximity::phase_diff(oracle.phases[j], oracle.phases[k])) <= cluster_tol) w += weight[j];
    }
    const double amp = std::sqrt(std::min(w, 1.0));
    if (amp > best.abs_inner_product) best = {oracle.phases[k], amp};
  }
  return best;
}

std::vector<RunRecord> run_search(const fixtures::NamedOperator& op, const SearchOptions& options) {
  if (options.repeats < 1) throw Error(ErrorCode::kInvalidArgument, "repeats must be >= 1");
  options.optimizer.validate();
  std::optional<QuantumState> initial;
  if (options.state) {
    if (options.state->size() != op.unitary.dim()) {
      throw Error(ErrorCode::kDimensionMismatch, "state has " + std::to_string(options.state->size()) +
                                                     " amplitudes, operator dimension is " +
                                                     std::to_string(op.unitary.dim()));
    }
    initial = QuantumState(*options.state);
  }

  std::vector<RunRecord> out(static_cast<std::size_t>(options.repeats));
  parallel_for(out.size(), options.jobs, [&](std::size_t r) {
    const auto start = Clock::now();
    const std::uint64_t seed = options.seed + r;
    optimizer::OptimizerConfig cfg = options.optimizer;
    cfg.rng_seed = seed;
    Rng rng(seed);
    const optimizer::SearchSpace space{op.unitary.dim(), {}};
    const auto est = optimizer::spea_search(op.unitary, space, cfg, rng, initial);
    const OracleMatch match = match_oracle(op.oracle, est.state);

    RunRecord& rec = out[r];
    rec.command = "search";
    rec.op = op.name;
    rec.dc = cfg.dc;
    rec.method = std::string(optimizer::to_string(cfg.method));
    rec.a_schedule = std::string(optimizer::to_string(cfg.a_schedule));
    rec.seed = seed;
    rec.shots = cfg.shots;
    rec.iterations_used = est.iterations_used;
    rec.converged = est.converged;
    rec.c_star = est.c_star;
    rec.theta_star = est.phase;
    rec.theta_star_rad = kTwoPi * est.phase;
    rec.matched_phase = match.phase;
    rec.matched_phase_rad = kTwoPi * match.phase;
    rec.abs_inner_product = match.abs_inner_product;
    rec.phase_error_rad = kTwoPi * std::abs(proximity::phase_diff(est.phase, match.phase));
    rec.circuit_settings = est.circuit_settings;
    rec.wall_time_s = seconds_since(start);
  });
  return out;
}

SearchAggregate aggregate(const std::vector<RunRecord>& records) {
  SearchAggregate a;
  a.runs = records.size();
  std::vector<double> iters, errors, overlaps;
  for (const auto& r : records) {
    overlaps.push_back(r.abs_inner_product);
    if (!r.converged) continue;
    ++a.converged;
    iters.push_back(r.iterations_used);
    errors.push_back(r.phase_error_rad);
  }
  a.iterations = summarize(iters);
  a.phase_error_rad = summarize(errors);
  a.abs_inner_product = summarize(overlaps);
  return a;
}

DecomposeReport run_decompose(const fixtures::NamedOperator& op, const DecomposeOptions& options) {
  if (options.successes < 1) throw Error(ErrorCode::kInvalidArgument, "successes must be >= 1");
  if (options.dcs.empty()) throw Error(ErrorCode::kInvalidArgument, "dc list is empty");
  const int max_trials = options.max_trials > 0 ? options.max_trials : 20 * options.successes;
  if (max_trials < options.successes) throw Error(ErrorCode::kInvalidArgument, "max trials below success target");
  for (int dc : options.dcs) {
    decomposition::DecompositionConfig cfg = options.decomposition;
    cfg.per_pair.dc = dc;
    cfg.validate();
  }

  DecomposeReport report;
  const std::size_t block = static_cast<std::size_t>(std::max(options.jobs, 1));
  for (int dc : options.dcs) {
    decomposition::DecompositionConfig cfg = options.decomposition;
    cfg.per_pair.dc = dc;
    DcAggregate agg;
    agg.dc = dc;
    std::vector<double> fidelities, errors;
    std::size_t next = 0;
    while (agg.successes < static_cast<std::size_t>(options.successes) && next < static_cast<std::size_t>(max_trials)) {
      const std::size_t count = std::min(block, static_cast<std::size_t>(max_trials) - next);
      std::vector<TrialRecord> batch(count);
      parallel_for(count, options.jobs, [&](std::size_t i) {
        const auto start = Clock::now();
        TrialRecord& t = batch[i];
        t.op = op.name;
        t.dc = dc;
        t.trial = next + i;
        t.seed = options.seed + t.trial;
        decomposition::DecompositionConfig trial_cfg = cfg;
        trial_cfg.per_pair.rng_seed = t.seed;
        Rng rng(t.seed);
        const auto res = decomposition::full_decomposition(op.unitary, op.oracle, trial_cfg, rng);
        t.failed = res.failed;
        t.pairs_found = res.failed ? res.pairs.size() - 1 : res.pairs.size();
        t.searches = res.searches;
        t.fidelity = res.failed ? 0.0 : res.fidelity;
        t.phase_error_rad = res.failed ? 0.0 : res.mean_phase_error;
        t.wall_time_s = seconds_since(start);
      });
      next += count;
      for (auto& t : batch) {
        if (agg.successes == static_cast<std::size_t>(options.successes)) break;
        ++agg.trials;
        if (t.failed) {
          ++agg.fails;
        } else {
          ++agg.successes;
          fidelities.push_back(t.fidelity);
          errors.push_back(t.phase_error_rad);
        }
        report.trials.push_back(std::move(t));
      }
    }
    agg.target_reached = agg.successes == static_cast<std::size_t>(options.successes);
    agg.fidelity = summarize(fidelities);
    agg.phase_error_rad = summarize(errors);
    report.aggregates.push_back(agg);
  }
  return report;
}

BoundTrial check_bounds(const UnitarySpectrum& spectrum, const QuantumState& phi, double theta_r, double c_star,
                        int dc, double delta) {
  // Both bounds are compared in C, where rounding stays near machine epsilon.
  // Compared as distances, an ulp of C near 1 grows to ~1e-8 through the
  // square-root behaviour of the inverse of P0 at its peak.
  constexpr double kTol = 1e-12;
  BoundTrial t;
  t.dim = spectrum.size();
  t.dc = dc;
  t.theta_r = theta_r;
  t.c_star = c_star;
  t.delta = delta;
  t.nearest_distance = proximity::nearest_phase_distance(spectrum, theta_r);
  t.window_weight = proximity::window_weight(spectrum, phi, theta_r, delta);
  const auto qb = proximity::quality_bound(c_star, theta_r, dc, delta);
  t.applicable = qb.lobe_condition_met;
  if (!t.applicable) return t;
  t.max_phase_distance = *qb.max_phase_distance;
  t.fidelity_floor = *qb.fidelity_floor;
  // nearest <= zeta with P0(zeta) = C*, and P0 decreases on the lobe.
  t.phase_violation = t.nearest_distance > t.max_phase_distance &&
                      (t.nearest_distance >= 1.0 / dc || proximity::p0(t.nearest_distance, dc) < c_star - kTol);
  // floor <= w  <=>  C* <= w + (1 - w) P
  const double ceiling = std::max(proximity::p0(delta, dc), proximity::sidelobe_max(dc));
  t.fidelity_violation = t.window_weight < t.fidelity_floor &&
                         c_star > t.window_weight + (1.0 - t.window_weight) * ceiling + kTol;
  return t;
}

VerifyReport run_verify_bounds(const VerifyOptions& options) {
  if (options.trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (options.dim_min < 1 || options.dim_min > options.dim_max) {
    throw Error(ErrorCode::kInvalidArgument, "need 1 <= dim-min <= dim-max");
  }
  if (options.dcs.empty()) throw Error(ErrorCode::kInvalidArgument, "dc list is empty");
  for (int dc : options.dcs) {
    if (dc < 2) throw Error(ErrorCode::kInvalidArgument, "dc must be >= 2");
  }
  if (!(options.near_eigenstate_fraction >= 0.0 && options.near_eigenstate_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "near-eigenstate fraction must lie in [0, 1]");
  }

  VerifyReport report;
  report.min_phase_margin = std::numeric_limits<double>::infinity();
  report.min_fidelity_margin = std::numeric_limits<double>::infinity();
  Rng rng(options.seed);
  for (int i = 0; i < options.trials; ++i) {
    const std::size_t n = options.dim_min + rng.next_u64() % (options.dim_max - options.dim_min + 1);
    const int dc = options.dcs[rng.next_u64() % options.dcs.size()];
    const UnitarySpectrum spectrum = random_spectrum(n, rng);
    const UnitaryOperator u(spectral_sum(spectrum));

    ComplexVector amps(n);
    for (cplx& z : amps) z = rng.complex_normal();
    if (rng.uniform() < options.near_eigenstate_fraction) {
      const double eps = rng.uniform(0.0, 0.5);
      amps = axpy(1.0, spectrum.eigenvectors[rng.next_u64() % n], scaled(normalized(amps), eps));
    }
    const QuantumState phi(amps);

    double theta_r = rng.uniform();
    double c_star = 0.0;
    if (options.optimize_theta && i % 2 == 0) {
      optimizer::OptimizerConfig cfg;
      cfg.dc = dc;
      const auto pe = optimizer::evaluate_standard(u, phi, cfg, rng);
      theta_r = pe.theta;
      c_star = pe.c_star;
    } else {
      c_star = circuit::evaluate_c(u, phi, theta_r, circuit::CircuitConfig{dc, 0, 0}).c_value;
    }
    const double delta = rng.uniform(0.0, 1.0 / dc);

    BoundTrial t = check_bounds(spectrum, phi, theta_r, c_star, dc, delta);
    t.trial = static_cast<std::size_t>(i);
    if (t.applicable) {
      ++report.applicable;
      report.phase_violations += t.phase_violation;
      report.fidelity_violations += t.fidelity_violation;
      report.min_phase_margin = std::min(report.min_phase_margin, t.max_phase_distance - t.nearest_distance);
      report.min_fidelity_margin = std::min(report.min_fidelity_margin, t.window_weight - t.fidelity_floor);
    } else {
      ++report.not_applicable;
    }
    report.trials.push_back(t);
  }
  if (report.applicable == 0) report.min_phase_margin = report.min_fidelity_margin = 0.0;
  return report;
}

std::vector<SidelobeRow> run_sidelobes(const std::vector<int>& dcs) {
  std::vector<SidelobeRow> rows;
  for (int dc : dcs) rows.push_back({dc, proximity::sidelobe_max(dc), 2.0 / dc});
  return rows;
}

}  // namespace spea::cli
