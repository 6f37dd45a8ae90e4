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

#include "spea/proximity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "spea/error.hpp"

namespace spea::proximity {

namespace {

void require_dc(int dc) {
  if (dc < 2) throw Error(ErrorCode::kInvalidArgument, "control dimension must be >= 2");
}

double sidelobe_max_uncached(int dc) {
  const double lo = 1.0 / dc;
  const double hi = 0.5;
  if (hi - lo <= 0.0) return p0(hi, dc);

  constexpr int kGrid = 20000;
  const double step = (hi - lo) / kGrid;
  int best_i = 0;
  double best = -1.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double v = p0(lo + i * step, dc);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  // Golden-section refinement inside the bracketing grid cells.
  double a = std::max(lo, lo + (best_i - 1) * step);
  double b = std::min(hi, lo + (best_i + 1) * step);
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = p0(x1, dc);
  double f2 = p0(x2, dc);
  while (b - a > 1e-10) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = p0(x2, dc);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = p0(x1, dc);
    }
  }
  return std::max({best, f1, f2, p0(0.5 * (a + b), dc)});
}

}  // namespace

double p0(double dtheta, int dc) {
  require_dc(dc);
  const double x = phase_diff(dtheta, 0.0);
  const double s = std::sin(kPi * x);
  if (std::abs(s) < 1e-9) return 1.0;
  const double num = std::sin(kPi * dc * x);
  return (num * num) / (static_cast<double>(dc) * dc * s * s);
}

double c_analytic(const UnitarySpectrum& spectrum, const QuantumState& phi, double theta_r, int dc) {
  double c = 0.0;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double w = std::norm(inner(spectrum.eigenvectors[k], phi.amplitudes()));
    c += w * p0(spectrum.phases[k] - theta_r, dc);
  }
  return std::clamp(c, 0.0, 1.0);
}

double phase_diff(double a, double b) {
  const double d = a - b;
  double w = d - std::floor(d + 0.5);
  if (w >= 0.5) w -= 1.0;
  if (w < -0.5) w += 1.0;
  return w;
}

double sidelobe_max(int dc) {
  require_dc(dc);
  static std::mutex mu;
  static std::map<int, double> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(dc);
  if (it == cache.end()) it = cache.emplace(dc, sidelobe_max_uncached(dc)).first;
  return it->second;
}

double p0_inverse(double c_star, int dc) {
  require_dc(dc);
  if (!(c_star > sidelobe_max(dc))) throw Error(ErrorCode::kOutsideLobe, "C* does not exceed the sidelobe maximum");
  if (c_star >= 1.0) return 0.0;
  double lo = 0.0;        // p0(lo) >= c_star
  double hi = 1.0 / dc;   // p0(hi) = 0 < c_star
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (p0(mid, dc) >= c_star) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

QualityBound quality_bound(double c_star, double theta_r, int dc, double delta) {
  require_dc(dc);
  (void)theta_r;
  if (!(delta >= 0.0 && delta <= 1.0 / dc)) throw Error(ErrorCode::kInvalidDelta, "delta must lie in [0, 1/dc]");
  QualityBound qb;
  qb.delta = delta;
  const double sidelobe = sidelobe_max(dc);
  qb.lobe_condition_met = c_star > sidelobe;
  if (!qb.lobe_condition_met) return qb;

  qb.max_phase_distance = p0_inverse(c_star, dc);
  const double ceiling = std::max(p0(delta, dc), sidelobe);
  if (1.0 - ceiling < 1e-15) {
    qb.fidelity_floor = c_star >= 1.0 - 1e-15 ? 1.0 : 0.0;
  } else {
    qb.fidelity_floor = std::clamp((c_star - ceiling) / (1.0 - ceiling), 0.0, 1.0);
  }
  return qb;
}

double nearest_phase_distance(const UnitarySpectrum& spectrum, double theta_r) {
  double best = 1.0;
  for (double th : spectrum.phases) best = std::min(best, std::abs(phase_diff(th, theta_r)));
  return best;
}

double window_weight(const UnitarySpectrum& spectrum, const QuantumState& phi, double theta_r, double delta) {
  double f = 0.0;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    if (std::abs(phase_diff(spectrum.phases[k], theta_r)) <= delta) {
      f += std::norm(inner(spectrum.eigenvectors[k], phi.amplitudes()));
    }
  }
  return f;
}

}  // namespace spea::proximity
