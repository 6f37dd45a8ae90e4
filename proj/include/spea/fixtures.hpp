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

// Benchmark operators: single- and two-qubit gate products, the H2 (4x4,
// Bravyi-Kitaev, STO-3G) and H2O (16x16) Hamiltonians exponentiated as e^{iH}.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spea/qmath.hpp"
#include "spea/state.hpp"

namespace spea::fixtures {

/// RZ(theta) = diag(e^{-i theta/2}, e^{i theta/2}), theta in radians.
ComplexMatrix gate_rz(double theta);
/// P(theta) = diag(1, e^{i theta})
ComplexMatrix gate_p(double theta);
ComplexMatrix gate_h();

struct NamedOperator {
  std::string name;
  UnitaryOperator unitary;
  UnitarySpectrum oracle;
  std::vector<std::pair<std::string, ComplexVector>> reference_states;  // normalized
  std::optional<ComplexMatrix> hamiltonian;
};

/// Input state with the statistics originally reported for it.
struct ConvergenceCase {
  std::string op;
  ComplexVector state;
  double reported_abs_inner_product;
  double reported_iteration_mean;
  double reported_iteration_sd;
  double reported_phase_error;  // radians
};

ComplexMatrix h2_hamiltonian();
ComplexMatrix h2o_hamiltonian();

NamedOperator u1();
NamedOperator u2();
NamedOperator u3();
NamedOperator u_h2o();
NamedOperator identity(std::size_t n);

/// Operator from a unitary matrix; the oracle comes from unitary_eigendecompose.
NamedOperator from_unitary(std::string name, ComplexMatrix u);
/// Operator e^{iH}; the oracle comes from the Hamiltonian's spectrum.
NamedOperator from_hamiltonian(std::string name, ComplexMatrix h);

/// "u1", "u2", "u3", "u_h2o", or "identityN". Throws InvalidArgument otherwise.
NamedOperator by_name(const std::string& name);
std::vector<std::string> builtin_names();

/// Convergence benchmark inputs for u1, u2, u3 (dc = 4).
const std::vector<ConvergenceCase>& convergence_cases();

/// The U3 matrix as printed to four decimals.
ComplexMatrix u3_printed();

}  // namespace spea::fixtures
