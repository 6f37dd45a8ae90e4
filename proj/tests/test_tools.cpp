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

#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "commands.hpp"
#include "report.hpp"
#include "spea/error.hpp"
#include "spea/proximity.hpp"
#include "test_util.hpp"

namespace spea::cli {
namespace {

TEST(ParseState, RealAndComplexEntries) {
  const ComplexVector v = parse_state("0.5, -1e-3,2i,-i,1.5-0.25i,3e-1+2e+0i");
  ASSERT_EQ(v.size(), 6u);
  EXPECT_EQ(v[0], cplx(0.5, 0.0));
  EXPECT_EQ(v[1], cplx(-1e-3, 0.0));
  EXPECT_EQ(v[2], cplx(0.0, 2.0));
  EXPECT_EQ(v[3], cplx(0.0, -1.0));
  EXPECT_EQ(v[4], cplx(1.5, -0.25));
  EXPECT_EQ(v[5], cplx(0.3, 2.0));
}

TEST(ParseState, RejectsMalformed) {
  for (const char* bad : {"", "1,", "abc", "1,,2", "0.5x", "1+i+i", "nan"}) {
    EXPECT_THROW(parse_state(bad), Error) << bad;
  }
}

TEST(ParseRange, Examples) {
  const auto r = parse_range("0.0:0.1");
  EXPECT_EQ(r.lo, 0.0);
  EXPECT_EQ(r.hi, 0.1);
  EXPECT_THROW(parse_range("0.2"), Error);
  EXPECT_THROW(parse_range("0.5:0.2"), Error);
  EXPECT_THROW(parse_range("0:1.5"), Error);
}

TEST(Summarize, MatchesLinearInterpolation) {
  const Summary s = summarize({4.0, 1.0, 3.0, 2.0});
  EXPECT_EQ(s.n, 4u);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.sd, 1.2909944487358056, 1e-15);
  EXPECT_DOUBLE_EQ(s.p25, 1.75);
  EXPECT_DOUBLE_EQ(s.p75, 3.25);
  const Summary one = summarize({7.0});
  EXPECT_EQ(one.sd, 0.0);
  EXPECT_EQ(one.p25, 7.0);
  EXPECT_EQ(summarize({}).n, 0u);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelFor, RethrowsLowestFailingIndex) {
  try {
    parallel_for(50, 3, [](std::size_t i) {
      if (i % 10 == 7) throw std::runtime_error(std::to_string(i));
    });
    FAIL() << "no exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "7");
  }
}

TEST(MatchOracle, EigenstateAndDegenerateSpace) {
  Rng rng(1);
  const auto known = testing::unitary_with_phases({0.1, 0.6, 0.6}, rng);
  const auto m = match_oracle(known.spectrum, QuantumState(known.spectrum.eigenvectors[0]));
  EXPECT_EQ(m.phase, 0.1);
  EXPECT_NEAR(m.abs_inner_product, 1.0, 1e-12);
  // Any state in the degenerate plane matches it fully.
  const ComplexVector mix = axpy(cplx(0.6, 0.2), known.spectrum.eigenvectors[1], known.spectrum.eigenvectors[2]);
  const auto d = match_oracle(known.spectrum, QuantumState(mix));
  EXPECT_EQ(d.phase, 0.6);
  EXPECT_NEAR(d.abs_inner_product, 1.0, 1e-12);
}

TEST(CheckBounds, DetectsFabricatedPhaseViolation) {
  Rng rng(2);
  const auto known = testing::unitary_with_phases({0.0, 0.5}, rng);
  const QuantumState phi(known.spectrum.eigenvectors[0]);
  // No eigenphase near 0.25, yet a reading of C* = 0.99 there is claimed.
  const BoundTrial t = check_bounds(known.spectrum, phi, 0.25, 0.99, 4, 0.1);
  EXPECT_TRUE(t.applicable);
  EXPECT_TRUE(t.phase_violation);
}

TEST(CheckBounds, DetectsFabricatedFidelityViolation) {
  Rng rng(3);
  const auto known = testing::unitary_with_phases({0.0, 0.01}, rng);
  // Eigenphase 0.01 sits inside the window, but the state lies on 0.0.
  const QuantumState phi(known.spectrum.eigenvectors[0]);
  const BoundTrial t = check_bounds(known.spectrum, phi, 0.01, 0.9999, 4, 0.005);
  EXPECT_TRUE(t.applicable);
  EXPECT_FALSE(t.phase_violation);
  EXPECT_GT(t.fidelity_floor, 0.9);
  EXPECT_TRUE(t.fidelity_violation);
}

TEST(CheckBounds, BelowSidelobeIsNotApplicable) {
  Rng rng(4);
  const auto known = testing::random_unitary(3, rng);
  const QuantumState phi = testing::random_state(3, rng);
  const int dc = 4;
  const BoundTrial t = check_bounds(known.spectrum, phi, 0.3, proximity::sidelobe_max(dc) * 0.5, dc, 0.1);
  EXPECT_FALSE(t.applicable);
  EXPECT_FALSE(t.phase_violation);
  EXPECT_FALSE(t.fidelity_violation);
}

TEST(CheckBounds, ExactObservationsNeverViolate) {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const int dc = 2 + static_cast<int>(rng.next_u64() % 7);
    const auto known = testing::random_unitary(1 + rng.next_u64() % 6, rng);
    const QuantumState phi = testing::random_state(known.spectrum.size(), rng);
    const double theta = rng.uniform();
    const double c = proximity::c_analytic(known.spectrum, phi, theta, dc);
    const BoundTrial t = check_bounds(known.spectrum, phi, theta, c, dc, rng.uniform(0.0, 1.0 / dc));
    EXPECT_FALSE(t.phase_violation || t.fidelity_violation) << "trial " << i;
  }
}

TEST(VerifyBounds, DefaultRunHasNoViolations) {
  const VerifyReport r = run_verify_bounds({});
  EXPECT_EQ(r.trials.size(), 500u);
  EXPECT_EQ(r.applicable + r.not_applicable, 500u);
  EXPECT_GT(r.applicable, 250u);
  EXPECT_EQ(r.violations(), 0u);
}

TEST(VerifyBounds, DeterministicInSeed) {
  VerifyOptions o;
  o.trials = 60;
  o.seed = 12;
  const auto a = run_verify_bounds(o);
  const auto b = run_verify_bounds(o);
  ASSERT_EQ(a.trials.size(), b.trials.size());
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    EXPECT_EQ(a.trials[i].c_star, b.trials[i].c_star);
    EXPECT_EQ(a.trials[i].theta_r, b.trials[i].theta_r);
  }
}

TEST(VerifyBounds, RejectsBadOptions) {
  VerifyOptions o;
  o.dim_min = 5;
  o.dim_max = 2;
  EXPECT_THROW(run_verify_bounds(o), Error);
  o = {};
  o.dcs = {1};
  EXPECT_THROW(run_verify_bounds(o), Error);
}

TEST(RunSearch, SeedsAndJobsIndependence) {
  const auto op = fixtures::u2();
  SearchOptions o;
  o.repeats = 5;
  o.seed = 30;
  const auto serial = run_search(op, o);
  o.jobs = 3;
  const auto pooled = run_search(op, o);
  ASSERT_EQ(serial.size(), 5u);
  for (std::size_t r = 0; r < serial.size(); ++r) {
    EXPECT_EQ(serial[r].seed, 30u + r);
    EXPECT_EQ(serial[r].c_star, pooled[r].c_star);
    EXPECT_EQ(serial[r].theta_star, pooled[r].theta_star);
    EXPECT_EQ(serial[r].iterations_used, pooled[r].iterations_used);
  }
}

TEST(RunSearch, RejectsWrongStateSize) {
  SearchOptions o;
  o.state = ComplexVector{1.0, 0.0, 0.0};
  EXPECT_THROW(run_search(fixtures::u1(), o), Error);
}

TEST(RunDecompose, StopsAtSuccessTarget) {
  DecomposeOptions o;
  o.dcs = {2, 4};
  o.successes = 2;
  o.seed = 8;
  o.jobs = 3;
  const auto rep = run_decompose(fixtures::u2(), o);
  ASSERT_EQ(rep.aggregates.size(), 2u);
  for (const auto& a : rep.aggregates) {
    EXPECT_TRUE(a.target_reached);
    EXPECT_EQ(a.successes, 2u);
    EXPECT_EQ(a.trials, a.successes + a.fails);
  }
  o.jobs = 1;
  const auto serial = run_decompose(fixtures::u2(), o);
  ASSERT_EQ(serial.trials.size(), rep.trials.size());
  for (std::size_t i = 0; i < rep.trials.size(); ++i) {
    EXPECT_EQ(serial.trials[i].seed, rep.trials[i].seed);
    EXPECT_EQ(serial.trials[i].fidelity, rep.trials[i].fidelity);
  }
}

TEST(RunDecompose, RejectsBadOptions) {
  DecomposeOptions o;
  o.successes = 5;
  o.max_trials = 2;
  EXPECT_THROW(run_decompose(fixtures::u1(), o), Error);
  o = {};
  o.dcs = {};
  EXPECT_THROW(run_decompose(fixtures::u1(), o), Error);
}

TEST(Sidelobes, Table) {
  const auto rows = run_sidelobes({2, 3, 16});
  EXPECT_EQ(rows[0].lobe_width, 1.0);
  EXPECT_LT(rows[0].sidelobe_max, 1e-15);
  EXPECT_NEAR(rows[1].sidelobe_max, 0.11111, 1e-5);
  EXPECT_NEAR(rows[2].sidelobe_max, 0.048453, 1e-6);
}

TEST(Report, CsvRoundTripsDoubles) {
  RunRecord r;
  r.command = "search";
  r.op = "a,b";
  r.c_star = 0.1 + 0.2;
  std::ostringstream out;
  write_csv(out, search_table({r}));
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "command,operator,dc,method,a_schedule,seed,shots,iterations_used,converged,c_star,theta_star_cycles,"
            "theta_star_rad,matched_phase_cycles,matched_phase_rad,abs_inner_product,phase_error_rad,"
            "circuit_settings,wall_time_s");
  EXPECT_NE(text.find("\"a,b\""), std::string::npos);
  EXPECT_NE(text.find("0.30000000000000004"), std::string::npos);
}

}  // namespace
}  // namespace spea::cli
