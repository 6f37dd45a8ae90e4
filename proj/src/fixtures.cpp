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

#include "spea/fixtures.hpp"

#include <array>
#include <cmath>

#include "spea/error.hpp"

namespace spea::fixtures {

using namespace std::complex_literals;

ComplexMatrix gate_rz(double theta) {
  return ComplexMatrix{{std::polar(1.0, -theta / 2.0), 0.0}, {0.0, std::polar(1.0, theta / 2.0)}};
}

ComplexMatrix gate_p(double theta) { return ComplexMatrix{{1.0, 0.0}, {0.0, std::polar(1.0, theta)}}; }

ComplexMatrix gate_h() {
  const double s = 1.0 / std::sqrt(2.0);
  return ComplexMatrix{{s, s}, {s, -s}};
}

ComplexMatrix h2_hamiltonian() {
  constexpr double a = 0.48704885;
  constexpr double b = 0.18065279;
  constexpr double c = -0.33769999;
  constexpr double d = -1.11719411;
  return ComplexMatrix{{a, 0.0, 0.0, b}, {0.0, c, b, 0.0}, {0.0, b, c, 0.0}, {b, 0.0, 0.0, d}};
}

ComplexMatrix h2o_hamiltonian() {
  constexpr std::array<double, 16> diag = {0.0,    -2.594, -2.654, -4.583, -2.594, -4.427, -4.529, -5.696,
                                           -2.654, -4.529, -4.428, -5.637, -4.583, -5.696, -5.637, -6.085};
  ComplexMatrix h(16, 16);
  for (std::size_t i = 0; i < diag.size(); ++i) h(i, i) = diag[i];
  constexpr double coupling = 0.054;
  h(5, 10) = h(10, 5) = coupling;
  h(6, 9) = h(9, 6) = coupling;
  return h;
}

namespace {

std::pair<std::string, ComplexVector> ref(std::string label, ComplexVector v) {
  return {std::move(label), normalized(v)};
}

}  // namespace

NamedOperator from_unitary(std::string name, ComplexMatrix u) {
  UnitaryOperator op(u);
  UnitarySpectrum spectrum = unitary_eigendecompose(u);
  return NamedOperator{std::move(name), std::move(op), std::move(spectrum), {}, std::nullopt};
}

NamedOperator from_hamiltonian(std::string name, ComplexMatrix h) {
  const HermitianEigenSystem es = hermitian_eigendecompose(h);
  ComplexMatrix u(h.rows(), h.cols());
  for (std::size_t k = 0; k < es.eigenvalues.size(); ++k) add_outer(u, es.eigenvectors[k], std::polar(1.0, es.eigenvalues[k]));
  return NamedOperator{std::move(name), UnitaryOperator(std::move(u)), spectrum_from_hamiltonian(es), {}, std::move(h)};
}

NamedOperator u1() {
  NamedOperator op = from_unitary("u1", gate_rz(kPi / 2.0));
  op.reference_states = {ref("v1", {0.0, 1.0}), ref("v2", {1.0, 0.0})};
  return op;
}

NamedOperator u2() {
  const ComplexMatrix hrh = gate_h() * gate_rz(kPi / 2.0) * gate_h();
  NamedOperator op = from_unitary("u2", kron(gate_p(kPi / 4.0), hrh));
  op.reference_states = {ref("v3", {0.0, 0.0, 1.0, 1.0}), ref("v4", {0.0, 0.0, 1.0, -1.0}),
                         ref("v5", {1.0, 1.0, 0.0, 0.0}), ref("v6", {1.0, -1.0, 0.0, 0.0})};
  return op;
}

NamedOperator u3() {
  NamedOperator op = from_hamiltonian("u3", h2_hamiltonian());
  op.reference_states = {ref("v7", {-0.1105, 0.0, 0.0, 0.9939}), ref("v8", {0.0, 0.7071, -0.7071, 0.0}),
                         ref("v9", {0.0, 0.7071, 0.7071, 0.0}), ref("v10", {-0.9939, 0.0, 0.0, 0.1105})};
  return op;
}

NamedOperator u_h2o() { return from_hamiltonian("u_h2o", h2o_hamiltonian()); }

NamedOperator identity(std::size_t n) {
  return from_unitary("identity" + std::to_string(n), ComplexMatrix::identity(n));
}

NamedOperator by_name(const std::string& name) {
  if (name == "u1") return u1();
  if (name == "u2") return u2();
  if (name == "u3") return u3();
  if (name == "u_h2o") return u_h2o();
  constexpr std::string_view kIdentity = "identity";
  if (name.rfind(kIdentity, 0) == 0 && name.size() > kIdentity.size()) {
    std::size_t n = 0;
    try {
      n = std::stoul(name.substr(kIdentity.size()));
    } catch (const std::exception&) {
      n = 0;
    }
    if (n >= 1 && n <= 1024) return identity(n);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown operator '" + name + "'");
}

std::vector<std::string> builtin_names() { return {"u1", "u2", "u3", "u_h2o", "identityN"}; }

const std::vector<ConvergenceCase>& convergence_cases() {
  static const std::vector<ConvergenceCase> cases = {
      {"u1", {0.1951, 0.9808}, 0.98, 6.20, 2.82, 1.099e-2},
      {"u1", {0.3827, 0.9239}, 0.92, 8.15, 3.41, 1.005e-2},
      {"u1", {0.7071, 0.7071}, 0.71, 8.90, 3.34, 1.005e-2},
      {"u2", {0.0, 0.0, 0.7432, 0.6690}, 0.99, 5.85, 8.14, 2.083e-2},
      {"u2", {0.0, 0.0, 0.6690, 0.7432}, 0.99, 6.7, 10.42, 2.168e-2},
      {"u2", {0.0, 0.0, 1.0, 0.0}, 0.71, 17.7, 6.06, 1.663e-2},
      {"u2", {1.0, 0.0, 0.0, 0.0}, 0.71, 23.05, 11.22, 2.167e-2},
      {"u2", {0.7071, 0.0, 0.7071, 0.0}, 0.50, 21.3, 10.71, 2.262e-2},
      {"u3", {-0.1379, 0.0, 0.0, 0.9904}, 0.99, 1.15, 0.36, 1.885e-2},
      {"u3", {0.0, 0.7807, 0.6247, 0.0}, 0.99, 1.1, 0.3, 1.508e-2},
      {"u3", {0.0, 1.0, 0.0, 0.0}, 0.71, 4.35, 4.17, 1.414e-2},
      {"u3", {0.7071, 0.0, 0.0, 0.7071}, 0.62, 4.15, 1.01, 1.570e-2},
      {"u3", {0.5774, 0.5774, 0.0, 0.5774}, 0.51, 21.5, 11.06, 2.199e-2},
  };
  return cases;
}

ComplexMatrix u3_printed() {
  return ComplexMatrix{{0.8686 + 0.4687i, 0.0, 0.0, 0.0499 + 0.1531i},
                       {0.0, 0.9282 - 0.3259i, 0.0595 + 0.1695i, 0.0},
                       {0.0, 0.0595 + 0.1695i, 0.9282 - 0.3259i, 0.0},
                       {0.0499 + 0.1531i, 0.0, 0.0, 0.4256 - 0.8905i}};
}

}  // namespace spea::fixtures
