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

#include <gtest/gtest.h>

#include <cmath>

#include "spea/error.hpp"
#include "spea/proximity.hpp"
#include "test_util.hpp"

namespace spea::proximity {
namespace {

// Direct evaluation of |(1/dc) sum_n e^{2 pi i n x}|^2, no closed form.
double p0_by_sum(double x, int dc) {
  cplx s = 0.0;
  for (int n = 0; n < dc; ++n) s += unit_phase(n * x);
  return std::norm(s) / (double(dc) * dc);
}

TEST(P0, Examples) {
  for (int dc : {2, 3, 4, 8, 16}) {
    EXPECT_EQ(p0(0.0, dc), 1.0);
    EXPECT_LT(p0(1.0 / dc, dc), 1e-12);
  }
  EXPECT_NEAR(p0(0.25, 2), 0.5, 1e-15);
}

TEST(P0, MatchesDirectSum) {
  Rng rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    const int dc = 2 + static_cast<int>(rng.next_u64() % 15);
    const double x = rng.uniform(-3.0, 3.0);
    EXPECT_NEAR(p0(x, dc), p0_by_sum(x, dc), 1e-12);
  }
}

TEST(P0, PeriodicAndSymmetric) {
  Rng rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const int dc = 2 + static_cast<int>(rng.next_u64() % 15);
    const double x = rng.uniform(-2.0, 2.0);
    EXPECT_NEAR(p0(x + 1.0, dc), p0(x, dc), 1e-12);
    EXPECT_NEAR(p0(-x, dc), p0(x, dc), 1e-12);
  }
}

TEST(P0, ZerosAtMultiplesOfInverseDc) {
  for (int dc = 2; dc <= 16; ++dc) {
    for (int k = 1; k < dc; ++k) EXPECT_LT(p0(double(k) / dc, dc), 1e-12) << dc << " " << k;
  }
}

TEST(P0, CentralLobeWidth) {
  for (int dc : {2, 3, 4, 8, 16}) {
    // No zero strictly inside (-1/dc, 1/dc); zeros at both ends.
    const double w = 1.0 / dc;
    for (int i = 1; i < 1000; ++i) EXPECT_GT(p0(w * i / 1000.0, dc), 0.0);
    EXPECT_LT(p0(w, dc), 1e-12);
    EXPECT_LT(p0(-w, dc), 1e-12);
  }
}

TEST(P0, StrictlyDecreasingOnLobe) {
  for (int dc : {2, 3, 4, 8, 16}) {
    double prev = p0(0.0, dc);
    for (int i = 1; i <= 1000; ++i) {
      const double v = p0(i / (1000.0 * dc), dc);
      EXPECT_LT(v, prev);
      prev = v;
    }
  }
}

TEST(PhaseDiff, Examples) {
  EXPECT_NEAR(phase_diff(1.0 / 8.0, 3.0 / 4.0), 3.0 / 8.0, 1e-15);
  EXPECT_NEAR(phase_diff(3.0 / 4.0, 1.0 / 8.0), -3.0 / 8.0, 1e-15);
  EXPECT_EQ(phase_diff(0.3, 0.3), 0.0);
}

TEST(PhaseDiff, HalfOpenRange) {
  EXPECT_EQ(phase_diff(0.5, 0.0), -0.5);
  EXPECT_EQ(phase_diff(0.0, 0.5), -0.5);
  Rng rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = rng.uniform(-5.0, 5.0);
    const double b = rng.uniform(-5.0, 5.0);
    const double d = phase_diff(a, b);
    EXPECT_GE(d, -0.5);
    EXPECT_LT(d, 0.5);
    EXPECT_NEAR(std::remainder(d - (a - b), 1.0), 0.0, 1e-12);
    // Antisymmetric except at the branch point.
    if (std::abs(std::abs(d) - 0.5) > 1e-9) EXPECT_NEAR(phase_diff(b, a), -d, 1e-12);
  }
}

TEST(SidelobeMax, Examples) {
  EXPECT_LT(sidelobe_max(2), 1e-15);
  EXPECT_NEAR(sidelobe_max(3), 0.11111, 1e-4);
  EXPECT_NEAR(sidelobe_max(4), 0.074074, 1e-4);
  EXPECT_NEAR(sidelobe_max(8), 0.052513, 1e-4);
  EXPECT_NEAR(sidelobe_max(16), 0.048453, 1e-4);
  // dc = 3: maximum at zeta = 1/2, where |1 + e^{i pi} + e^{2 pi i}|^2 / 9 = 1/9.
  EXPECT_NEAR(sidelobe_max(3), 1.0 / 9.0, 1e-12);
}

TEST(SidelobeMax, DominatesDenseScan) {
  for (int dc : {3, 5, 7, 12}) {
    const double s = sidelobe_max(dc);
    for (int i = 0; i <= 5000; ++i) {
      const double z = 1.0 / dc + (0.5 - 1.0 / dc) * i / 5000.0;
      EXPECT_LE(p0_by_sum(z, dc), s + 1e-12);
    }
  }
}

TEST(SidelobeMax, DecreasesWithDc) {
  for (int dc = 3; dc < 16; ++dc) EXPECT_GT(sidelobe_max(dc), sidelobe_max(dc + 1));
}

TEST(P0Inverse, Examples) {
  EXPECT_EQ(p0_inverse(1.0, 5), 0.0);
  EXPECT_NEAR(p0_inverse(0.5, 2), 0.25, 1e-12);
  try {
    p0_inverse(0.05, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutsideLobe);
  }
}

TEST(P0Inverse, InvertsOnLobe) {
  Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const int dc = 2 + static_cast<int>(rng.next_u64() % 15);
    const double z = rng.uniform(0.0, 1.0 / dc);
    const double c = p0(z, dc);
    if (c <= sidelobe_max(dc)) continue;
    EXPECT_NEAR(p0_inverse(c, dc), z, 1e-9);
  }
}

TEST(CAnalytic, Examples) {
  Rng rng(5);
  const auto known = testing::unitary_with_phases({0.1, 0.35, 0.6, 0.9}, rng);
  const QuantumState v0(known.spectrum.eigenvectors[0]);
  EXPECT_NEAR(c_analytic(known.spectrum, v0, 0.1, 4), 1.0, 1e-12);
  // Equal mix of phases theta_r and theta_r + 1/dc.
  const auto pair = testing::unitary_with_phases({0.2, 0.45, 0.7}, rng);
  const QuantumState mix(axpy(1.0, pair.spectrum.eigenvectors[0], pair.spectrum.eigenvectors[1]));
  EXPECT_NEAR(c_analytic(pair.spectrum, mix, 0.2, 4), 0.5, 1e-12);
  for (int trial = 0; trial < 200; ++trial) {
    const double c = c_analytic(known.spectrum, testing::random_state(4, rng), rng.uniform(), 3);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
  }
}

TEST(QualityBound, Examples) {
  const QualityBound exact = quality_bound(1.0, 0.3, 4, 0.0);
  ASSERT_TRUE(exact.lobe_condition_met);
  EXPECT_EQ(*exact.max_phase_distance, 0.0);
  EXPECT_EQ(*exact.fidelity_floor, 1.0);

  const QualityBound half = quality_bound(0.9, 0.0, 2, 0.25);
  ASSERT_TRUE(half.fidelity_floor.has_value());
  EXPECT_NEAR(*half.fidelity_floor, 0.8, 1e-12);

  const QualityBound below = quality_bound(0.05, 0.0, 3, 0.1);
  EXPECT_FALSE(below.lobe_condition_met);
  EXPECT_FALSE(below.max_phase_distance.has_value());
  EXPECT_FALSE(below.fidelity_floor.has_value());
}

TEST(QualityBound, RejectsDeltaOutsideLobe) {
  EXPECT_THROW(quality_bound(0.9, 0.0, 4, 0.3), Error);
  EXPECT_THROW(quality_bound(0.9, 0.0, 4, -0.01), Error);
  try {
    quality_bound(0.9, 0.0, 4, 0.3);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidDelta);
  }
}

TEST(QualityBound, FloorUsesSidelobeCeiling) {
  // Weight f on an eigenphase at theta_r and 1 - f on one half a cycle away.
  // At dc = 3 and delta = 1/3, P0(delta) = 0, yet the far component still
  // contributes 1/9, so (C - P0(delta)) / (1 - P0(delta)) = C would overstate f.
  const double f = 0.6;
  const double c = f + (1.0 - f) * p0(0.5, 3);
  const double naive = (c - p0(1.0 / 3.0, 3)) / (1.0 - p0(1.0 / 3.0, 3));
  EXPECT_GT(naive, f + 1e-3);
  const QualityBound qb = quality_bound(c, 0.0, 3, 1.0 / 3.0);
  ASSERT_TRUE(qb.fidelity_floor.has_value());
  EXPECT_LE(*qb.fidelity_floor, f + 1e-12);
  EXPECT_NEAR(*qb.fidelity_floor, f, 1e-12);
}

TEST(QualityBound, AgreesWithUncorrectedFormulaInsideLobe) {
  for (int dc : {2, 3, 4, 8}) {
    for (double delta : {0.1 / dc, 0.2 / dc, 0.4 / dc}) {
      const double p = p0(delta, dc);
      if (p < sidelobe_max(dc)) continue;
      const double c = 0.5 * (1.0 + p);
      EXPECT_NEAR(*quality_bound(c, 0.0, dc, delta).fidelity_floor, (c - p) / (1.0 - p), 1e-12);
    }
  }
}

TEST(QualityBound, SoundOnRandomInstances) {
  Rng rng(6);
  int checked = 0;
  for (int trial = 0; trial < 800; ++trial) {
    const std::size_t n = 2 + rng.next_u64() % 7;
    const int dc = std::vector<int>{2, 3, 4, 8}[rng.next_u64() % 4];
    const auto known = testing::random_unitary(n, rng);
    const QuantumState phi = testing::random_state(n, rng);
    const double theta_r = rng.uniform();
    const double delta = rng.uniform(0.0, 1.0 / dc);
    const double c = c_analytic(known.spectrum, phi, theta_r, dc);
    const QualityBound qb = quality_bound(c, theta_r, dc, delta);
    if (!qb.lobe_condition_met) continue;
    ++checked;
    EXPECT_LE(nearest_phase_distance(known.spectrum, theta_r), *qb.max_phase_distance + 1e-10);
    EXPECT_GE(window_weight(known.spectrum, phi, theta_r, delta), *qb.fidelity_floor - 1e-10);
  }
  EXPECT_GE(checked, 500);
}

TEST(Proximity, RejectsSmallDc) {
  EXPECT_THROW(p0(0.1, 1), Error);
  EXPECT_THROW(sidelobe_max(1), Error);
}

}  // namespace
}  // namespace spea::proximity
