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

#include "spea/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "spea/error.hpp"
#include "spea/proximity.hpp"

namespace spea::optimizer {

std::string_view to_string(Method m) { return m == Method::kStandard ? "standard" : "alternative"; }

std::string_view to_string(StepSchedule s) { return s == StepSchedule::kHalving ? "halving" : "doubling7"; }

Method parse_method(std::string_view s) {
  if (s == "standard") return Method::kStandard;
  if (s == "alternative") return Method::kAlternative;
  throw Error(ErrorCode::kInvalidArgument, "unknown method '" + std::string(s) + "'");
}

StepSchedule parse_schedule(std::string_view s) {
  if (s == "halving") return StepSchedule::kHalving;
  if (s == "doubling7") return StepSchedule::kDoubling7;
  throw Error(ErrorCode::kInvalidArgument, "unknown a-schedule '" + std::string(s) + "'");
}

void OptimizerConfig::validate() const {
  if (dc < 2) throw Error(ErrorCode::kInvalidArgument, "dc must be >= 2");
  if (!(stop_gap > 0.0)) throw Error(ErrorCode::kInvalidArgument, "stop_gap must be positive");
  if (max_iterations < 1) throw Error(ErrorCode::kInvalidArgument, "max_iterations must be >= 1");
  if (theta_grid.initial_points != 0 && theta_grid.initial_points < 2) {
    throw Error(ErrorCode::kInvalidArgument, "theta grid needs at least 2 points");
  }
  if (theta_grid.refinement < 2) throw Error(ErrorCode::kInvalidArgument, "grid refinement factor must be >= 2");
  if (!(theta_grid.resolution > 0.0)) throw Error(ErrorCode::kInvalidArgument, "grid resolution must be positive");
  if (restrict_range) {
    const auto& r = *restrict_range;
    if (!(r.lo >= 0.0 && r.lo < r.hi && r.hi <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "restrict_range must satisfy 0 <= lo < hi <= 1");
    }
  }
  if (max_halvings < 0) throw Error(ErrorCode::kInvalidArgument, "max_halvings must be >= 0");
}

QuantumState SearchSpace::project(std::span<const cplx> v) const {
  if (v.size() != dim) throw Error(ErrorCode::kDimensionMismatch, "vector does not match search space");
  if (effective_dim() == 0) throw Error(ErrorCode::kFullSpaceExcluded, "every direction is excluded");
  ComplexVector r(v.begin(), v.end());
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& e : excluded) {
      const cplx c = inner(e.amplitudes(), r);
      for (std::size_t i = 0; i < dim; ++i) r[i] -= c * e[i];
    }
  }
  if (norm(r) < 1e-12) throw Error(ErrorCode::kFullSpaceExcluded, "vector lies inside the excluded span");
  return QuantumState(std::move(r));
}

QuantumState random_initial_state(const SearchSpace& space, Rng& rng) {
  if (space.excluded.size() >= space.dim) throw Error(ErrorCode::kFullSpaceExcluded, "every direction is excluded");
  for (int attempt = 0;; ++attempt) {
    ComplexVector v(space.dim);
    for (cplx& z : v) z = rng.complex_normal();
    try {
      return space.project(v);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kFullSpaceExcluded || attempt >= 8) throw;
    }
  }
}

std::vector<QuantumState> build_basis(const QuantumState& phi, const SearchSpace& space, Rng& rng) {
  if (phi.dim() != space.dim) throw Error(ErrorCode::kDimensionMismatch, "state does not match search space");
  for (const auto& e : space.excluded) {
    if (overlap(e, phi) > 1e-8) throw Error(ErrorCode::kInvalidArgument, "phi is not orthogonal to excluded states");
  }
  const std::size_t n = space.effective_dim();
  constexpr int kMaxAttempts = 6;  // first try plus five retries
  for (int attempt = 0;; ++attempt) {
    std::vector<ComplexVector> seeds;
    seeds.reserve(space.dim);
    for (const auto& e : space.excluded) seeds.push_back(e.vector());
    seeds.push_back(phi.vector());
    for (std::size_t m = 1; m < n; ++m) {
      ComplexVector v(space.dim);
      for (cplx& z : v) z = rng.complex_normal();
      seeds.push_back(std::move(v));
    }
    try {
      std::vector<ComplexVector> ortho = gram_schmidt(seeds);
      std::vector<QuantumState> basis;
      basis.reserve(n);
      // Keep phi itself (not its re-orthogonalized copy) as B_0.
      basis.push_back(phi);
      for (std::size_t m = space.excluded.size() + 1; m < ortho.size(); ++m) {
        basis.push_back(QuantumState::from_normalized(std::move(ortho[m])));
      }
      return basis;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDependentInput || attempt + 1 >= kMaxAttempts) throw;
    }
  }
}

namespace {

double sampled_or_exact(double p, std::uint64_t shots, Rng& rng) {
  if (shots == 0) return p;
  return static_cast<double>(circuit::sample_bernoulli(p, shots, rng)) / static_cast<double>(shots);
}

double clamp_into(const PhaseRange& r, double theta) {
  if (r.contains(theta)) return theta;
  const double to_lo = std::abs(proximity::phase_diff(theta, r.lo));
  const double to_hi = std::abs(proximity::phase_diff(theta, r.hi));
  // hi is exclusive; step just inside it.
  return to_lo <= to_hi ? r.lo : std::nextafter(r.hi, r.lo);
}

}  // namespace

PhaseEstimate evaluate_standard(const circuit::PreparedCircuit& circuit, const OptimizerConfig& config, Rng& rng) {
  const bool periodic = !config.restrict_range.has_value();
  const PhaseRange range = config.restrict_range.value_or(PhaseRange{});
  const int points = config.theta_grid.initial_points > 0 ? config.theta_grid.initial_points : 8 * config.dc;

  PhaseEstimate best{-1.0, range.lo, 0};
  auto consider = [&](double theta) {
    const double c = sampled_or_exact(circuit.prob_zero(theta), config.shots, rng);
    ++best.settings;
    if (c > best.c_star) {
      best.c_star = c;
      best.theta = theta;
    }
  };

  double step = (range.hi - range.lo) / points;
  for (int i = 0; i < points; ++i) consider(range.lo + i * step);

  while (step >= config.theta_grid.resolution) {
    const double fine = step / config.theta_grid.refinement;
    const int half_span = 2 * config.theta_grid.refinement;  // +-2 coarse steps
    const double center = best.theta;
    for (int j = -half_span; j <= half_span; ++j) {
      if (j == 0) continue;
      double theta = center + j * fine;
      if (periodic) {
        theta = wrap_phase(theta);
      } else if (!range.contains(theta)) {
        continue;
      }
      consider(theta);
    }
    step = fine;
  }
  best.theta = periodic ? wrap_phase(best.theta) : best.theta;
  return best;
}

PhaseEstimate evaluate_standard(const UnitaryOperator& u, const QuantumState& phi, const OptimizerConfig& config,
                                Rng& rng) {
  return evaluate_standard(circuit::PreparedCircuit(u, phi, config.dc), config, rng);
}

CircularEstimate estimate_phase_circular(std::span<const double> weights, int dc) {
  if (dc < 2 || weights.size() != static_cast<std::size_t>(dc)) {
    throw Error(ErrorCode::kDimensionMismatch, "need one weight per control outcome");
  }
  double total = 0.0;
  cplx resultant = 0.0;
  for (int q = 0; q < dc; ++q) {
    total += weights[q];
    resultant += weights[q] * unit_phase(static_cast<double>(q) / dc);
  }
  if (!(total > 0.0)) throw Error(ErrorCode::kEmptyCounts, "no outcome weight");
  CircularEstimate est;
  est.resultant = std::abs(resultant) / total;
  if (est.resultant < 1e-12) {
    est.degenerate = true;
    est.theta = 0.0;
    return est;
  }
  est.theta = wrap_phase(std::arg(resultant) / kTwoPi);
  return est;
}

PhaseEstimate evaluate_alternative(const circuit::PreparedCircuit& circuit, const OptimizerConfig& config, Rng& rng) {
  const circuit::ControlDistribution dist = circuit.distribution(0.0);
  std::vector<double> weights = dist.probs;
  if (config.shots > 0) {
    const auto counts = circuit::sample_multinomial(dist.probs, config.shots, rng);
    std::transform(counts.begin(), counts.end(), weights.begin(), [](std::uint64_t c) { return double(c); });
  }
  double theta = estimate_phase_circular(weights, config.dc).theta;
  if (config.restrict_range) theta = clamp_into(*config.restrict_range, theta);
  const double c = sampled_or_exact(circuit.prob_zero(theta), config.shots, rng);
  return {c, theta, 2};
}

PhaseEstimate evaluate_alternative(const UnitaryOperator& u, const QuantumState& phi, const OptimizerConfig& config,
                                   Rng& rng) {
  return evaluate_alternative(circuit::PreparedCircuit(u, phi, config.dc), config, rng);
}

EigenPairEstimate spea_search(const UnitaryOperator& u, const SearchSpace& space, const OptimizerConfig& config,
                              Rng& rng, const std::optional<QuantumState>& initial, const ProposalHook& on_proposal) {
  config.validate();
  if (space.dim != u.dim()) throw Error(ErrorCode::kDimensionMismatch, "search space does not match operator");
  const std::size_t n = space.effective_dim();
  if (space.excluded.size() >= space.dim) throw Error(ErrorCode::kFullSpaceExcluded, "every direction is excluded");

  std::uint64_t settings = 0;
  auto score = [&](const QuantumState& s) {
    const circuit::PreparedCircuit pc(u, s, config.dc);
    PhaseEstimate est = config.method == Method::kStandard ? evaluate_standard(pc, config, rng)
                                                           : evaluate_alternative(pc, config, rng);
    settings += est.settings;
    return est;
  };

  QuantumState phi = initial ? space.project(initial->amplitudes()) : random_initial_state(space, rng);
  if (on_proposal) on_proposal(phi);
  PhaseEstimate incumbent = score(phi);

  EigenPairEstimate out{phi, incumbent.theta, incumbent.c_star, 0, false, {incumbent.c_star}, 0};
  const bool sampled = config.shots > 0;

  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    out.iterations_used = iter;
    if (sampled && iter > 1) {
      incumbent = score(phi);
    }
    if (1.0 - incumbent.c_star <= config.stop_gap) {
      out.converged = true;
      break;
    }
    // A one-dimensional space has no direction to move in.
    if (n == 1) break;

    const std::vector<QuantumState> basis = build_basis(phi, space, rng);
    const bool halving = config.a_schedule == StepSchedule::kHalving;
    double a = halving ? 1.0 : 0.5;
    const int max_rescales = halving ? config.max_halvings : 7;

    for (int rescale = 0;; ++rescale) {
      bool improved = false;
      for (std::size_t m = 0; m < 2 * n; ++m) {
        const cplx z = m < n ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
        const cplx coef = z * a * (1.0 - incumbent.c_star);
        const ComplexVector moved = axpy(coef, basis[m % n].amplitudes(), phi.amplitudes());
        const QuantumState candidate = space.project(moved);
        if (on_proposal) on_proposal(candidate);
        const PhaseEstimate est = score(candidate);
        if (est.c_star > incumbent.c_star) {
          phi = candidate;
          incumbent = est;
          improved = true;
          out.accepted_c.push_back(est.c_star);
        }
      }
      if (improved || rescale >= max_rescales) break;
      a = halving ? a / 2.0 : a * 2.0;
    }

    if (1.0 - incumbent.c_star <= config.stop_gap) {
      out.converged = true;
      break;
    }
  }

  out.state = phi;
  out.phase = incumbent.theta;
  out.c_star = incumbent.c_star;
  out.circuit_settings = settings;
  return out;
}

}  // namespace spea::optimizer
