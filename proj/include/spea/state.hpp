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

#include <cstddef>
#include <span>

#include "spea/qmath.hpp"

namespace spea {

inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kNormTol = 1e-10;

/// Square matrix certified unitary at construction (throws NotUnitary).
class UnitaryOperator {
 public:
  explicit UnitaryOperator(ComplexMatrix m, double tol = kUnitarityTol);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

/// Unit-norm amplitude vector. The constructor normalizes its input; zero
/// vectors are rejected.
class QuantumState {
 public:
  explicit QuantumState(ComplexVector amplitudes);

  /// Wraps amplitudes that must already be normalized within kNormTol.
  static QuantumState from_normalized(ComplexVector amplitudes);

  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  const ComplexVector& vector() const noexcept { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }

 private:
  struct Trusted {};
  QuantumState(Trusted, ComplexVector amplitudes) : amps_(std::move(amplitudes)) {}

  ComplexVector amps_;
};

/// |<a|b>|
double overlap(const QuantumState& a, const QuantumState& b);

/// Reduces a phase in cycles to [0, 1).
double wrap_phase(double cycles);

}  // namespace spea
