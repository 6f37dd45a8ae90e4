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

// Closed-form proximity metric and the quality bounds derived from it.
//
// All phases are in cycles (1 cycle = 2 pi radians). P0(dtheta) is the
// probability that a dc-level control collapses to |0> when the target holds
// an eigenstate whose phase differs from the rotation phase by dtheta:
//
//   P0(x) = |sum_{n<dc} e^{2 pi i n x}|^2 / dc^2 = sin^2(pi dc x) / (dc^2 sin^2(pi x))
//
// The metric C(phi, theta_r) averages P0 over the spectrum, weighted by the
// overlaps |<v_k|phi>|^2. C = 1 exactly at an eigenpair.

#pragma once

#include <cstdint>
#include <optional>

#include "spea/qmath.hpp"
#include "spea/state.hpp"

namespace spea::proximity {

/// One read-out of the metric. `shots_used == 0` marks an exact value;
/// otherwise `c_value` is a success count divided by `shots_used`.
struct ProximityEvaluation {
  double c_value = 0.0;
  std::uint64_t shots_used = 0;
  double theta_r = 0.0;
};

double p0(double dtheta, int dc);

/// Sum_k |<v_k|phi>|^2 P0(theta_k - theta_r).
double c_analytic(const UnitarySpectrum& spectrum, const QuantumState& phi, double theta_r, int dc);

/// Wrapped difference a - b in [-0.5, 0.5).
double phase_diff(double a, double b);

/// max P0 over [1/dc, 1/2]: the largest value attainable outside the central lobe.
double sidelobe_max(int dc);

/// The zeta in [0, 1/dc] with P0(zeta) = c_star. Throws OutsideLobe when
/// c_star <= sidelobe_max(dc).
double p0_inverse(double c_star, int dc);

struct QualityBound {
  bool lobe_condition_met = false;
  /// Upper bound on |phase_diff(nearest eigenphase, theta_r)|.
  std::optional<double> max_phase_distance;
  /// Lower bound on the weight of the state inside the eigenspaces whose
  /// phases lie within +-delta of theta_r.
  std::optional<double> fidelity_floor;
  double delta = 0.0;
};

/// Bounds implied by an observed C* at rotation theta_r. `delta` must lie in [0, 1/dc].
///
/// The fidelity floor is (C* - P)/(1 - P), where P bounds P0 for every
/// eigenphase outside the +-delta window. Inside the central lobe that is
/// P0(delta); eigenphases beyond the lobe are bounded only by the sidelobe
/// maximum, so P = max(P0(delta), sidelobe_max(dc)). The two agree whenever
/// P0(delta) >= sidelobe_max(dc), which covers every delta at dc = 2.
QualityBound quality_bound(double c_star, double theta_r, int dc, double delta);

/// min_k |phase_diff(theta_k, theta_r)|
double nearest_phase_distance(const UnitarySpectrum& spectrum, double theta_r);

/// Sum of |<v_k|phi>|^2 over eigenvectors with |phase_diff(theta_k, theta_r)| <= delta.
double window_weight(const UnitarySpectrum& spectrum, const QuantumState& phi, double theta_r, double delta);

}  // namespace spea::proximity
