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

// Variational controller that drives the circuit towards an eigenpair by
// maximizing the proximity metric C over input states and rotation phases.
//
// One iteration:
//   1. build a random orthonormal basis {B_m} of the search space with B_0 = phi
//   2. score the incumbent: C* = max over theta_r of C(phi, theta_r)
//   3. sweep m = 0 .. 2n-1 over candidates
//        phi' = normalize(phi + z a (1 - C*) B_{m mod n}),  z = 1 (m < n) or i
//      accepting any strictly better candidate immediately
//   4. if nothing was accepted, rescale a and sweep again
// The search stops once 1 - C* <= stop_gap or max_iterations is spent.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spea/circuit.hpp"
#include "spea/qmath.hpp"
#include "spea/rng.hpp"
#include "spea/state.hpp"

namespace spea::optimizer {

enum class Method { kStandard, kAlternative };
enum class StepSchedule { kHalving, kDoubling7 };

std::string_view to_string(Method m);
std::string_view to_string(StepSchedule s);
Method parse_method(std::string_view s);
StepSchedule parse_schedule(std::string_view s);

/// Half-open phase window [lo, hi) in cycles, 0 <= lo < hi <= 1.
struct PhaseRange {
  double lo = 0.0;
  double hi = 1.0;
  bool contains(double theta) const { return theta >= lo && theta < hi; }
};

struct ThetaGrid {
  int initial_points = 0;  // 0: 8 * dc
  int refinement = 4;
  double resolution = 1e-6;
};

struct OptimizerConfig {
  int dc = 4;
  double stop_gap = 1e-4;
  int max_iterations = 50;
  Method method = Method::kStandard;
  StepSchedule a_schedule = StepSchedule::kHalving;
  ThetaGrid theta_grid;
  std::optional<PhaseRange> restrict_range;
  std::uint64_t shots = 0;
  std::uint64_t rng_seed = 0;
  /// Halving schedule: sweeps at a = 1, 1/2, ..., 2^-max_halvings, then give up
  /// on the iteration. (doubling7 is fixed at a = 1/2 .. 64.)
  int max_halvings = 16;

  void validate() const;
};

struct EigenPairEstimate {
  QuantumState state;
  double phase = 0.0;  // cycles, [0, 1)
  double c_star = 0.0;
  int iterations_used = 0;
  bool converged = false;
  /// C* after the initial evaluation followed by every accepted candidate.
  std::vector<double> accepted_c;
  std::uint64_t circuit_settings = 0;  // (state, theta_r) settings evaluated
};

/// Search space: the orthogonal complement of `excluded` in C^dim.
struct SearchSpace {
  std::size_t dim = 0;
  std::vector<QuantumState> excluded;

  std::size_t effective_dim() const { return dim - excluded.size(); }
  /// Removes the excluded components and renormalizes. Throws
  /// FullSpaceExcluded if nothing is left.
  QuantumState project(std::span<const cplx> v) const;
};

struct PhaseEstimate {
  double c_star = 0.0;
  double theta = 0.0;
  std::uint64_t settings = 0;
};

/// Circular mean of outcome weights on the dc-th roots of unity.
struct CircularEstimate {
  double theta = 0.0;
  double resultant = 0.0;  // |sum w_q e^{i 2 pi q/dc}| / sum w_q
  bool degenerate = false;
};

/// Observer for every candidate state proposed during a search.
using ProposalHook = std::function<void(const QuantumState&)>;

QuantumState random_initial_state(const SearchSpace& space, Rng& rng);

/// Orthonormal basis of the search space whose first element is phi.
std::vector<QuantumState> build_basis(const QuantumState& phi, const SearchSpace& space, Rng& rng);

/// Coarse-to-fine maximization of C over theta_r. `rng` serves sampled mode only.
PhaseEstimate evaluate_standard(const UnitaryOperator& u, const QuantumState& phi, const OptimizerConfig& config,
                                Rng& rng);
PhaseEstimate evaluate_standard(const circuit::PreparedCircuit& circuit, const OptimizerConfig& config, Rng& rng);

CircularEstimate estimate_phase_circular(std::span<const double> weights, int dc);

/// Two circuit runs: theta_r = 0 read-out of every bin gives theta* by
/// estimate_phase_circular; a second run scores C at theta*.
PhaseEstimate evaluate_alternative(const UnitaryOperator& u, const QuantumState& phi, const OptimizerConfig& config,
                                   Rng& rng);
PhaseEstimate evaluate_alternative(const circuit::PreparedCircuit& circuit, const OptimizerConfig& config, Rng& rng);

EigenPairEstimate spea_search(const UnitaryOperator& u, const SearchSpace& space, const OptimizerConfig& config,
                              Rng& rng, const std::optional<QuantumState>& initial = std::nullopt,
                              const ProposalHook& on_proposal = {});

}  // namespace spea::optimizer
