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

// Dense complex linear algebra for small (<= a few dozen) dimensions.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace spea {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// e^{i 2 pi cycles}
cplx unit_phase(double cycles);

/// Row-major dense complex matrix. Entries are always finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(std::span<const cplx> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const cplx> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  cplx trace() const;

  ComplexVector apply(std::span<const cplx> v) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Largest entry modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Vector helpers. `inner(a, b)` is <a|b> (conjugate-linear in a).
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double norm(std::span<const cplx> v);
ComplexVector normalized(std::span<const cplx> v);
ComplexVector scaled(std::span<const cplx> v, cplx s);
/// y + s x
ComplexVector axpy(cplx s, std::span<const cplx> x, std::span<const cplx> y);
ComplexVector basis_vector(std::size_t dim, std::size_t index);
/// |v><v| scaled by `weight`, added into `acc`.
void add_outer(ComplexMatrix& acc, std::span<const cplx> v, cplx weight);

/// Orthonormalizes `seeds` in order (modified Gram-Schmidt with one
/// re-orthogonalization pass). Throws DependentInput when a residual norm
/// falls below `dependence_tol`.
std::vector<ComplexVector> gram_schmidt(const std::vector<ComplexVector>& seeds,
                                        double dependence_tol = 1e-12);

/// Real spectrum and orthonormal eigenvectors of a Hermitian matrix.
struct HermitianEigenSystem {
  std::vector<double> eigenvalues;  // ascending
  std::vector<ComplexVector> eigenvectors;
};

struct JacobiOptions {
  double hermitian_tol = 1e-10;
  double offdiag_tol = 1e-12;
  int max_sweeps = 100;
};

/// Cyclic complex Jacobi. Each eigenvector is phase-fixed so its
/// largest-modulus entry is real and positive.
HermitianEigenSystem hermitian_eigendecompose(const ComplexMatrix& h, const JacobiOptions& opts = {});

/// e^{iH} built from the Jacobi spectrum.
ComplexMatrix hermitian_exponential(const ComplexMatrix& h, const JacobiOptions& opts = {});

ComplexMatrix matrix_power(const ComplexMatrix& u, unsigned q);

/// max |U^dagger U - I| <= tol.
bool unitarity_check(const ComplexMatrix& u, double tol);

double hermiticity_defect(const ComplexMatrix& h);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Spectrum of a unitary: phases in cycles, [0, 1), and orthonormal
/// eigenvectors u_k with U u_k = e^{i 2 pi phase_k} u_k.
struct UnitarySpectrum {
  std::vector<double> phases;
  std::vector<ComplexVector> eigenvectors;

  std::size_t size() const noexcept { return phases.size(); }
};

/// Spectrum of e^{iH} from the Hamiltonian's spectrum; phase = (lambda / 2 pi) mod 1.
UnitarySpectrum spectrum_from_hamiltonian(const HermitianEigenSystem& h);

/// Spectrum of an arbitrary unitary. U is normal, so its Hermitian and
/// anti-Hermitian parts commute and a generic real combination of them shares
/// U's eigenvectors; that combination is diagonalized with Jacobi.
UnitarySpectrum unitary_eigendecompose(const ComplexMatrix& u, double residual_tol = 1e-9);

/// Sum_k e^{i 2 pi phase_k} |u_k><u_k|
ComplexMatrix spectral_sum(const UnitarySpectrum& s);

/// JSON matrix file format: {"rows", "cols", "re": [...], "im": [...]} row-major.
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const std::string& text);
ComplexMatrix load_matrix_file(const std::string& path);
void save_matrix_file(const ComplexMatrix& m, const std::string& path);

}  // namespace spea
