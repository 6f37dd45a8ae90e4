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

#include "spea/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spea/error.hpp"

namespace spea {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDependentInput: return "DependentInput";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNotUnitary: return "NotUnitary";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kZeroShots: return "ZeroShots";
    case ErrorCode::kOutsideLobe: return "OutsideLobe";
    case ErrorCode::kInvalidDelta: return "InvalidDelta";
    case ErrorCode::kEmptyCounts: return "EmptyCounts";
    case ErrorCode::kFullSpaceExcluded: return "FullSpaceExcluded";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

cplx unit_phase(double cycles) { return std::polar(1.0, kTwoPi * cycles); }

namespace {

void check_finite(std::span<const cplx> entries) {
  for (const cplx& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::kInvalidArgument, "matrix entry is not finite");
    }
  }
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (!m.is_square()) throw Error(ErrorCode::kDimensionMismatch, std::string(what) + " requires a square matrix");
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::kInvalidArgument, "matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::kInvalidArgument, "matrix dimensions must be positive");
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch, "entry count does not match rows x cols");
  }
  check_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  if (rows_ == 0 || cols_ == 0) throw Error(ErrorCode::kInvalidArgument, "matrix dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorCode::kDimensionMismatch, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  check_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

cplx ComplexMatrix::trace() const {
  require_square(*this, "trace");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexVector ComplexMatrix::apply(std::span<const cplx> v) const {
  if (v.size() != cols_) throw Error(ErrorCode::kDimensionMismatch, "matrix-vector size mismatch");
  ComplexVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const cplx* row = &data_[r * cols_];
    cplx acc = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) acc += row[c] * v[c];
    out[r] = acc;
  }
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error(ErrorCode::kDimensionMismatch, "matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error(ErrorCode::kDimensionMismatch, "matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::kDimensionMismatch, "matrix product");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::kDimensionMismatch, "max_abs_diff");
  double m = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "inner product size mismatch");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

ComplexVector normalized(std::span<const cplx> v) {
  const double n = norm(v);
  if (n == 0.0 || !std::isfinite(n)) throw Error(ErrorCode::kInvalidArgument, "cannot normalize a zero vector");
  return scaled(v, 1.0 / n);
}

ComplexVector scaled(std::span<const cplx> v, cplx s) {
  ComplexVector out(v.begin(), v.end());
  for (cplx& z : out) z *= s;
  return out;
}

ComplexVector axpy(cplx s, std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kDimensionMismatch, "axpy size mismatch");
  ComplexVector out(y.begin(), y.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += s * x[i];
  return out;
}

ComplexVector basis_vector(std::size_t dim, std::size_t index) {
  ComplexVector e(dim);
  e.at(index) = 1.0;
  return e;
}

void add_outer(ComplexMatrix& acc, std::span<const cplx> v, cplx weight) {
  if (acc.rows() != v.size() || acc.cols() != v.size()) throw Error(ErrorCode::kDimensionMismatch, "add_outer");
  for (std::size_t r = 0; r < v.size(); ++r) {
    const cplx wr = weight * v[r];
    for (std::size_t c = 0; c < v.size(); ++c) acc(r, c) += wr * std::conj(v[c]);
  }
}

std::vector<ComplexVector> gram_schmidt(const std::vector<ComplexVector>& seeds, double dependence_tol) {
  std::vector<ComplexVector> out;
  out.reserve(seeds.size());
  const std::size_t dim = seeds.empty() ? 0 : seeds.front().size();
  for (const auto& seed : seeds) {
    if (seed.size() != dim) throw Error(ErrorCode::kDimensionMismatch, "gram_schmidt seeds differ in dimension");
    ComplexVector r = seed;
    // Two passes keep the loss of orthogonality at rounding level.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : out) {
        const cplx proj = inner(q, r);
        for (std::size_t i = 0; i < dim; ++i) r[i] -= proj * q[i];
      }
    }
    const double rn = norm(r);
    if (rn < dependence_tol) {
      throw Error(ErrorCode::kDependentInput, "seed vector " + std::to_string(out.size()) + " is linearly dependent");
    }
    for (cplx& z : r) z /= rn;
    out.push_back(std::move(r));
  }
  return out;
}

double hermiticity_defect(const ComplexMatrix& h) {
  require_square(h, "hermiticity_defect");
  double m = 0.0;
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = r; c < h.cols(); ++c) m = std::max(m, std::abs(h(r, c) - std::conj(h(c, r))));
  return m;
}

namespace {

void fix_global_phase(ComplexVector& v) {
  std::size_t best = 0;
  double best_mod = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    if (m > best_mod + 1e-12) {
      best_mod = m;
      best = i;
    }
  }
  if (best_mod <= 0.0) return;
  const cplx phase = std::conj(v[best]) / best_mod;
  for (cplx& z : v) z *= phase;
  v[best] = best_mod;
}

double offdiag_frobenius(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

double frobenius(const ComplexMatrix& a) {
  double s = 0.0;
  for (const cplx& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

HermitianEigenSystem hermitian_eigendecompose(const ComplexMatrix& h, const JacobiOptions& opts) {
  require_square(h, "hermitian_eigendecompose");
  if (hermiticity_defect(h) > opts.hermitian_tol) {
    throw Error(ErrorCode::kNotHermitian, "max |H - H^dagger| exceeds tolerance");
  }
  const std::size_t n = h.rows();
  ComplexMatrix a = h;
  // Symmetrize so rounding in the input cannot break the rotation algebra.
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const cplx avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = avg;
      a(c, r) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = opts.offdiag_tol * std::max(1.0, frobenius(a));

  bool converged = offdiag_frobenius(a) < threshold;
  for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        // J = D R with D = diag(1, e^{-i phi}) making the pivot real and R a
        // real Jacobi rotation annihilating it.
        const cplx eph = apq / mag;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx jpp = c;
        const cplx jpq = s;
        const cplx jqp = -s * std::conj(eph);
        const cplx jqq = c * std::conj(eph);

        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
    converged = offdiag_frobenius(a) < threshold;
  }
  if (!converged) throw Error(ErrorCode::kNoConvergence, "Jacobi sweep limit reached");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  HermitianEigenSystem out;
  out.eigenvalues.reserve(n);
  out.eigenvectors.reserve(n);
  for (std::size_t idx : order) {
    out.eigenvalues.push_back(a(idx, idx).real());
    ComplexVector col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v(k, idx);
    fix_global_phase(col);
    out.eigenvectors.push_back(std::move(col));
  }
  return out;
}

ComplexMatrix hermitian_exponential(const ComplexMatrix& h, const JacobiOptions& opts) {
  const HermitianEigenSystem es = hermitian_eigendecompose(h, opts);
  ComplexMatrix u(h.rows(), h.cols());
  for (std::size_t k = 0; k < es.eigenvalues.size(); ++k) {
    add_outer(u, es.eigenvectors[k], std::polar(1.0, es.eigenvalues[k]));
  }
  return u;
}

ComplexMatrix matrix_power(const ComplexMatrix& u, unsigned q) {
  require_square(u, "matrix_power");
  ComplexMatrix out = ComplexMatrix::identity(u.rows());
  for (unsigned i = 0; i < q; ++i) out = out * u;
  return out;
}

bool unitarity_check(const ComplexMatrix& u, double tol) {
  require_square(u, "unitarity_check");
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows())) <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac)
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = a(ar, ac) * b(br, bc);
  return out;
}

namespace {

double wrap_unit(double x) {
  double w = x - std::floor(x);
  if (w >= 1.0) w = 0.0;
  return w;
}

}  // namespace

UnitarySpectrum spectrum_from_hamiltonian(const HermitianEigenSystem& h) {
  UnitarySpectrum s;
  s.eigenvectors = h.eigenvectors;
  s.phases.reserve(h.eigenvalues.size());
  for (double lambda : h.eigenvalues) s.phases.push_back(wrap_unit(lambda / kTwoPi));
  return s;
}

UnitarySpectrum unitary_eigendecompose(const ComplexMatrix& u, double residual_tol) {
  require_square(u, "unitary_eigendecompose");
  if (!unitarity_check(u, 1e-8)) throw Error(ErrorCode::kNotUnitary, "unitary_eigendecompose input is not unitary");
  const std::size_t n = u.rows();
  const ComplexMatrix ud = u.adjoint();
  ComplexMatrix re_part = 0.5 * (u + ud);
  ComplexMatrix im_part = cplx(0.0, -0.5) * (u - ud);

  // Irrational-ish mixing weights; a second or third weight is only needed
  // when two distinct eigenphases collide under the first combination.
  constexpr double kMix[] = {0.5772156649015329, 1.6180339887498949, -0.7071067811865476, 2.718281828459045,
                             -1.4142135623730951};
  UnitarySpectrum best;
  double best_residual = std::numeric_limits<double>::infinity();
  for (double w : kMix) {
    ComplexMatrix combo = re_part + cplx(w) * im_part;
    const HermitianEigenSystem es = hermitian_eigendecompose(combo, JacobiOptions{.hermitian_tol = 1e-8});
    UnitarySpectrum cand;
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const ComplexVector& vec = es.eigenvectors[k];
      const ComplexVector uv = u.apply(vec);
      const cplx lambda = inner(vec, uv);
      const ComplexVector resid = axpy(-lambda, vec, uv);
      worst = std::max(worst, norm(resid));
      cand.phases.push_back(wrap_unit(std::arg(lambda) / kTwoPi));
      cand.eigenvectors.push_back(vec);
    }
    if (worst < best_residual) {
      best_residual = worst;
      best = std::move(cand);
    }
    if (worst <= residual_tol) break;
  }
  if (best_residual > residual_tol) {
    throw Error(ErrorCode::kNoConvergence, "unitary eigendecomposition residual too large");
  }
  return best;
}

ComplexMatrix spectral_sum(const UnitarySpectrum& s) {
  if (s.eigenvectors.empty()) throw Error(ErrorCode::kInvalidArgument, "empty spectrum");
  const std::size_t n = s.eigenvectors.front().size();
  ComplexMatrix m(n, n);
  for (std::size_t k = 0; k < s.size(); ++k) add_outer(m, s.eigenvectors[k], unit_phase(s.phases[k]));
  return m;
}

std::string matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> re;
  std::vector<double> im;
  for (const cplx& z : m.entries()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  j["re"] = re;
  j["im"] = im;
  return j.dump(2);
}

ComplexMatrix matrix_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto re = j.at("re").get<std::vector<double>>();
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
    if (re.size() != rows * cols || im.size() != rows * cols) {
      throw Error(ErrorCode::kParse, "re/im length must equal rows*cols");
    }
    std::vector<cplx> entries(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) entries[i] = {re[i], im[i]};
    return ComplexMatrix(rows, cols, std::move(entries));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

ComplexMatrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return matrix_from_json(ss.str());
}

void save_matrix_file(const ComplexMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParse, "cannot write " + path);
  out << matrix_to_json(m) << '\n';
}

}  // namespace spea
