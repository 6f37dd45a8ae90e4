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

#include "spea/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "spea/error.hpp"

namespace spea::circuit {

namespace {

void validate(const UnitaryOperator& u, const QuantumState& phi, int dc) {
  if (dc < 2) throw Error(ErrorCode::kInvalidArgument, "control dimension must be >= 2");
  if (phi.dim() != u.dim()) throw Error(ErrorCode::kDimensionMismatch, "state and operator dimensions differ");
}

// Applies the dc-point DFT (sign +1) or its inverse (sign -1) to the control
// index of a joint state laid out as psi[q * dim + t].
void control_dft(std::vector<cplx>& psi, int dc, std::size_t dim, int sign) {
  std::vector<cplx> out(psi.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(dc));
  for (int j = 0; j < dc; ++j) {
    for (int q = 0; q < dc; ++q) {
      const cplx w = scale * unit_phase(sign * static_cast<double>(j) * q / dc);
      for (std::size_t t = 0; t < dim; ++t) out[j * dim + t] += w * psi[q * dim + t];
    }
  }
  psi = std::move(out);
}

}  // namespace

ControlDistribution simulate_distribution(const UnitaryOperator& u, const QuantumState& phi, double theta_r, int dc) {
  validate(u, phi, dc);
  const std::size_t dim = u.dim();
  std::vector<cplx> psi(static_cast<std::size_t>(dc) * dim);
  std::copy(phi.amplitudes().begin(), phi.amplitudes().end(), psi.begin());

  control_dft(psi, dc, dim, +1);

  ComplexMatrix power = ComplexMatrix::identity(dim);
  for (int q = 0; q < dc; ++q) {
    std::span<cplx> block(&psi[q * dim], dim);
    ComplexVector next = power.apply(block);
    const cplx rot = unit_phase(-static_cast<double>(q) * theta_r);
    for (std::size_t t = 0; t < dim; ++t) block[t] = rot * next[t];
    power = power * u.matrix();
  }

  control_dft(psi, dc, dim, -1);

  ControlDistribution dist{dc, std::vector<double>(dc, 0.0)};
  for (int j = 0; j < dc; ++j) {
    double p = 0.0;
    for (std::size_t t = 0; t < dim; ++t) p += std::norm(psi[j * dim + t]);
    dist.probs[j] = p;
  }
  return dist;
}

proximity::ProximityEvaluation evaluate_c(const UnitaryOperator& u, const QuantumState& phi, double theta_r,
                                          const CircuitConfig& config, Rng& rng) {
  const double p = std::clamp(simulate_distribution(u, phi, theta_r, config.dc).probs[0], 0.0, 1.0);
  if (config.shots == 0) return {p, 0, theta_r};
  const std::uint64_t hits = sample_bernoulli(p, config.shots, rng);
  return {static_cast<double>(hits) / static_cast<double>(config.shots), config.shots, theta_r};
}

proximity::ProximityEvaluation evaluate_c(const UnitaryOperator& u, const QuantumState& phi, double theta_r,
                                          const CircuitConfig& config) {
  Rng rng(config.rng_seed);
  return evaluate_c(u, phi, theta_r, config, rng);
}

std::vector<std::uint64_t> sample_counts(const UnitaryOperator& u, const QuantumState& phi, double theta_r,
                                         const CircuitConfig& config, Rng& rng) {
  if (config.shots == 0) throw Error(ErrorCode::kZeroShots, "sample_counts needs a positive shot count");
  return sample_multinomial(simulate_distribution(u, phi, theta_r, config.dc).probs, config.shots, rng);
}

std::vector<std::uint64_t> sample_counts(const UnitaryOperator& u, const QuantumState& phi, double theta_r,
                                         const CircuitConfig& config) {
  Rng rng(config.rng_seed);
  return sample_counts(u, phi, theta_r, config, rng);
}

PreparedCircuit::PreparedCircuit(const UnitaryOperator& u, const QuantumState& phi, int dc)
    : dc_(dc), dim_(u.dim()) {
  validate(u, phi, dc);
  branches_.resize(static_cast<std::size_t>(dc) * dim_);
  ComplexVector current = phi.vector();
  for (int q = 0; q < dc; ++q) {
    std::copy(current.begin(), current.end(), branches_.begin() + q * dim_);
    if (q + 1 < dc) current = u.matrix().apply(current);
  }
}

double PreparedCircuit::prob_zero(double theta_r) const {
  // Accumulate sum_q e^{-i q 2 pi theta_r} U^q phi with a running phasor.
  const cplx step = unit_phase(-theta_r);
  cplx phasor = 1.0;
  double total = 0.0;
  thread_local std::vector<cplx> acc;
  acc.assign(dim_, cplx{});
  for (int q = 0; q < dc_; ++q) {
    const cplx* b = &branches_[q * dim_];
    for (std::size_t t = 0; t < dim_; ++t) acc[t] += phasor * b[t];
    // Re-anchor the phasor periodically so rounding does not accumulate.
    phasor = (q % 8 == 7) ? unit_phase(-static_cast<double>(q + 1) * theta_r) : phasor * step;
  }
  for (const cplx& z : acc) total += std::norm(z);
  return std::clamp(total / (static_cast<double>(dc_) * dc_), 0.0, 1.0);
}

ControlDistribution PreparedCircuit::distribution(double theta_r) const {
  ControlDistribution dist{dc_, std::vector<double>(dc_, 0.0)};
  for (int j = 0; j < dc_; ++j) dist.probs[j] = prob_zero(theta_r + static_cast<double>(j) / dc_);
  return dist;
}

std::uint64_t sample_bernoulli(double p, std::uint64_t shots, Rng& rng) {
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < shots; ++i) hits += rng.uniform() < p ? 1 : 0;
  return hits;
}

std::vector<std::uint64_t> sample_multinomial(const std::vector<double>& probs, std::uint64_t shots, Rng& rng) {
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += std::max(0.0, probs[i]);
    cdf[i] = acc;
  }
  std::vector<std::uint64_t> counts(probs.size(), 0);
  if (acc <= 0.0) throw Error(ErrorCode::kInvalidArgument, "distribution has no mass");
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double r = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
    std::size_t idx = std::min<std::size_t>(it - cdf.begin(), probs.size() - 1);
    ++counts[idx];
  }
  return counts;
}

}  // namespace spea::circuit
