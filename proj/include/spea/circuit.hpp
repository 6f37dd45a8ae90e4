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

// Noise-free simulation of the single-digit phase-estimation circuit:
//
//   control |0> --QFT--*--Rz(theta_r)--QFT^-1--[measure]
//                      |
//   target |phi> -----U^q---------------------- (never measured)
//
// The controlled gate applies U^q to the target on control branch |q>; the
// rotation multiplies branch |q> by e^{-i q 2 pi theta_r}.

#pragma once

#include <cstdint>
#include <vector>

#include "spea/proximity.hpp"
#include "spea/qmath.hpp"
#include "spea/rng.hpp"
#include "spea/state.hpp"

namespace spea::circuit {

struct CircuitConfig {
  int dc = 2;
  std::uint64_t shots = 0;  // 0: exact probabilities
  std::uint64_t rng_seed = 0;
};

struct ControlDistribution {
  int dc = 0;
  std::vector<double> probs;
};

/// Full (dc * d_t)-dimensional statevector run; returns the control marginal.
ControlDistribution simulate_distribution(const UnitaryOperator& u, const QuantumState& phi, double theta_r, int dc);

/// Bin-0 read-out. Exact when config.shots == 0, otherwise the mean of
/// config.shots Bernoulli draws.
proximity::ProximityEvaluation evaluate_c(const UnitaryOperator& u, const QuantumState& phi, double theta_r,
                                          const CircuitConfig& config, Rng& rng);
/// As above with a generator seeded from config.rng_seed.
proximity::ProximityEvaluation evaluate_c(const UnitaryOperator& u, const QuantumState& phi, double theta_r,
                                          const CircuitConfig& config);

/// Multinomial draw of config.shots control outcomes. Throws ZeroShots if shots == 0.
std::vector<std::uint64_t> sample_counts(const UnitaryOperator& u, const QuantumState& phi, double theta_r,
                                         const CircuitConfig& config, Rng& rng);
std::vector<std::uint64_t> sample_counts(const UnitaryOperator& u, const QuantumState& phi, double theta_r,
                                         const CircuitConfig& config);

/// Circuit with a fixed target input, evaluated at many rotation phases.
///
/// The branch states U^q |phi> do not depend on theta_r, so they are
/// computed once. Outcome j after the inverse QFT has amplitude
///   (1/dc) sum_q e^{-2 pi i q (theta_r + j/dc)} U^q |phi>,
/// which is exactly what simulate_distribution produces.
class PreparedCircuit {
 public:
  PreparedCircuit(const UnitaryOperator& u, const QuantumState& phi, int dc);

  int dc() const noexcept { return dc_; }
  double prob_zero(double theta_r) const;
  ControlDistribution distribution(double theta_r) const;

 private:
  int dc_;
  std::size_t dim_;
  std::vector<cplx> branches_;  // dc blocks of dim_ amplitudes
};

/// Successes among `shots` Bernoulli(p) draws.
std::uint64_t sample_bernoulli(double p, std::uint64_t shots, Rng& rng);
std::vector<std::uint64_t> sample_multinomial(const std::vector<double>& probs, std::uint64_t shots, Rng& rng);

}  // namespace spea::circuit
