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

#include "spea/state.hpp"

#include <cmath>

#include "spea/error.hpp"

namespace spea {

UnitaryOperator::UnitaryOperator(ComplexMatrix m, double tol) : m_(std::move(m)) {
  if (!m_.is_square()) throw Error(ErrorCode::kDimensionMismatch, "unitary must be square");
  if (!unitarity_check(m_, tol)) throw Error(ErrorCode::kNotUnitary, "max |U^dagger U - I| exceeds tolerance");
}

QuantumState::QuantumState(ComplexVector amplitudes) : amps_(normalized(amplitudes)) {}

QuantumState QuantumState::from_normalized(ComplexVector amplitudes) {
  if (amplitudes.empty()) throw Error(ErrorCode::kInvalidArgument, "empty state");
  if (std::abs(norm(amplitudes) - 1.0) > kNormTol) throw Error(ErrorCode::kInvalidArgument, "state is not normalized");
  return QuantumState(Trusted{}, std::move(amplitudes));
}

double overlap(const QuantumState& a, const QuantumState& b) {
  return std::abs(inner(a.amplitudes(), b.amplitudes()));
}

double wrap_phase(double cycles) {
  double w = cycles - std::floor(cycles);
  if (w >= 1.0) w = 0.0;
  return w;
}

}  // namespace spea
