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

#pragma once

#include <vector>

#include "spea/optimizer.hpp"
#include "spea/qmath.hpp"
#include "spea/rng.hpp"
#include "spea/state.hpp"

namespace spea::decomposition {

struct DecompositionConfig {
  double c_goal = 0.995;
  double c_req = 0.9;
  optimizer::OptimizerConfig per_pair;  // stop_gap is replaced by 1 - c_goal
  int retries_per_pair = 3;

  void validate() const;
};

struct DecompositionResult {
  std::vector<optimizer::EigenPairEstimate> pairs;
  ComplexMatrix u_retrieved;
  double fidelity = 0.0;
  double mean_phase_error = 0.0;  // radians
  bool failed = false;
  std::size_t n = 0;
  std::size_t searches = 0;  // spea_search calls, retries included
};

/// Finds dim(U) eigenpairs one at a time, each search confined to the
/// orthogonal complement of the pairs already found. A pair is accepted at
/// C* >= c_goal; after retries_per_pair further attempts the best attempt is
/// accepted if C* >= c_req, otherwise the whole trial is marked failed.
/// Quality metrics are computed against `oracle` on success.
DecompositionResult full_decomposition(const UnitaryOperator& u, const UnitarySpectrum& oracle,
                                       const DecompositionConfig& config, Rng& rng);
DecompositionResult full_decomposition(const UnitaryOperator& u, const DecompositionConfig& config, Rng& rng);

/// Sum_k e^{i 2 pi theta_k} |v_k><v_k|
ComplexMatrix reconstruct(const std::vector<optimizer::EigenPairEstimate>& pairs);

/// (Tr(M M^dagger) + |Tr M|^2) / (n (n + 1)) with M = U_true^dagger U_retrieved.
double average_fidelity(const ComplexMatrix& u_true, const ComplexMatrix& u_retrieved);

struct PhaseMatch {
  std::size_t estimate = 0;
  std::size_t oracle = 0;
  double abs_overlap = 0.0;
  double error = 0.0;  // radians, wrapped
};

/// Greedy one-to-one assignment of estimates to oracle pairs by largest
/// |<v_est|v_true>| (ties: smaller phase distance).
std::vector<PhaseMatch> match_pairs(const std::vector<optimizer::EigenPairEstimate>& pairs,
                                    const UnitarySpectrum& oracle);

/// Mean over matched pairs of 2 pi |phase_diff(theta_est, theta_true)|.
double mean_phase_error(const std::vector<optimizer::EigenPairEstimate>& pairs, const UnitarySpectrum& oracle);

}  // namespace spea::decomposition
