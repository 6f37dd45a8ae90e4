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

#include "spea/decomposition.hpp"

#include <algorithm>
#include <cmath>

#include "spea/error.hpp"
#include "spea/proximity.hpp"

namespace spea::decomposition {

void DecompositionConfig::validate() const {
  if (!(c_req > 0.0 && c_req <= c_goal && c_goal <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "need 0 < c_req <= c_goal <= 1");
  }
  if (retries_per_pair < 0) throw Error(ErrorCode::kInvalidArgument, "retries_per_pair must be >= 0");
  per_pair.validate();
}

DecompositionResult full_decomposition(const UnitaryOperator& u, const UnitarySpectrum& oracle,
                                       const DecompositionConfig& config, Rng& rng) {
  config.validate();
  if (oracle.size() != u.dim()) throw Error(ErrorCode::kSizeMismatch, "oracle does not match operator");

  optimizer::OptimizerConfig pair_cfg = config.per_pair;
  // c_goal = 1 would ask for an exact eigenpair; keep a positive gap.
  pair_cfg.stop_gap = std::max(1.0 - config.c_goal, 1e-15);

  DecompositionResult result;
  result.n = u.dim();
  optimizer::SearchSpace space{u.dim(), {}};

  for (std::size_t k = 0; k < u.dim(); ++k) {
    std::optional<optimizer::EigenPairEstimate> best;
    for (int attempt = 0; attempt <= config.retries_per_pair; ++attempt) {
      optimizer::EigenPairEstimate est = optimizer::spea_search(u, space, pair_cfg, rng);
      ++result.searches;
      if (!best || est.c_star > best->c_star) best = std::move(est);
      if (best->c_star >= config.c_goal) break;
      // Nothing to gain from retrying in a one-dimensional remainder.
      if (space.effective_dim() == 1) break;
    }
    if (best->c_star < config.c_req) {
      result.failed = true;
      result.pairs.push_back(std::move(*best));
      return result;
    }
    space.excluded.push_back(best->state);
    result.pairs.push_back(std::move(*best));
  }

  result.u_retrieved = reconstruct(result.pairs);
  result.fidelity = average_fidelity(u.matrix(), result.u_retrieved);
  result.mean_phase_error = mean_phase_error(result.pairs, oracle);
  return result;
}

DecompositionResult full_decomposition(const UnitaryOperator& u, const DecompositionConfig& config, Rng& rng) {
  return full_decomposition(u, unitary_eigendecompose(u.matrix()), config, rng);
}

ComplexMatrix reconstruct(const std::vector<optimizer::EigenPairEstimate>& pairs) {
  if (pairs.empty()) throw Error(ErrorCode::kInvalidArgument, "no pairs to reconstruct from");
  const std::size_t n = pairs.front().state.dim();
  ComplexMatrix m(n, n);
  for (const auto& p : pairs) add_outer(m, p.state.amplitudes(), unit_phase(p.phase));
  return m;
}

double average_fidelity(const ComplexMatrix& u_true, const ComplexMatrix& u_retrieved) {
  if (u_true.rows() != u_retrieved.rows() || u_true.cols() != u_retrieved.cols() || !u_true.is_square()) {
    throw Error(ErrorCode::kDimensionMismatch, "fidelity needs square matrices of equal size");
  }
  const ComplexMatrix m = u_true.adjoint() * u_retrieved;
  double tr_mm = 0.0;  // Tr(M M^dagger) = ||M||_F^2
  for (const cplx& z : m.entries()) tr_mm += std::norm(z);
  const double n = static_cast<double>(m.rows());
  return (tr_mm + std::norm(m.trace())) / (n * (n + 1.0));
}

std::vector<PhaseMatch> match_pairs(const std::vector<optimizer::EigenPairEstimate>& pairs,
                                    const UnitarySpectrum& oracle) {
  if (pairs.size() != oracle.size()) throw Error(ErrorCode::kSizeMismatch, "estimate and oracle counts differ");
  struct Cand {
    double overlap;
    double dist;
    std::size_t est;
    std::size_t orc;
  };
  std::vector<Cand> cands;
  cands.reserve(pairs.size() * oracle.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < oracle.size(); ++j) {
      const double ov = std::abs(inner(oracle.eigenvectors[j], pairs[i].state.amplitudes()));
      const double dist = std::abs(proximity::phase_diff(pairs[i].phase, oracle.phases[j]));
      cands.push_back({ov, dist, i, j});
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.overlap != b.overlap) return a.overlap > b.overlap;
    return a.dist < b.dist;
  });
  std::vector<bool> est_used(pairs.size(), false);
  std::vector<bool> orc_used(oracle.size(), false);
  std::vector<PhaseMatch> out;
  out.reserve(pairs.size());
  for (const Cand& c : cands) {
    if (est_used[c.est] || orc_used[c.orc]) continue;
    est_used[c.est] = orc_used[c.orc] = true;
    out.push_back({c.est, c.orc, c.overlap, kTwoPi * c.dist});
  }
  std::sort(out.begin(), out.end(), [](const PhaseMatch& a, const PhaseMatch& b) { return a.estimate < b.estimate; });
  return out;
}

double mean_phase_error(const std::vector<optimizer::EigenPairEstimate>& pairs, const UnitarySpectrum& oracle) {
  const auto matches = match_pairs(pairs, oracle);
  double total = 0.0;
  for (const auto& m : matches) total += m.error;
  return total / static_cast<double>(matches.size());
}

}  // namespace spea::decomposition
