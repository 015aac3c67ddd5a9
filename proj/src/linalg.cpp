// Copyright 2026 The shadow-retriever Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shadow/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "shadow/errors.hpp"

namespace shadow {

namespace {

int product(std::span<const int> dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

// Mixed-radix digits of `index`, most significant (subsystem 0) first.
void split_index(int index, std::span<const int> dims, std::vector<int>& digits) {
  digits.resize(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
}

void check_square(const CMatrix& m, std::span<const int> dims, const char* op) {
  for (int d : dims) {
    if (d <= 0) throw DimensionError(std::string(op) + ": subsystem dimensions must be positive");
  }
  if (m.rows() != m.cols() || m.rows() != product(dims)) {
    throw DimensionError(std::string(op) + ": matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " but subsystem dimensions multiply to " +
                         std::to_string(product(dims)));
  }
}

}  // namespace

void require_finite(const CMatrix& m, std::string_view what) {
  if (!m.allFinite()) throw InvalidArgument(std::string(what) + ": non-finite entry");
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }

HermitianOperator::HermitianOperator(const CMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) throw DimensionError("Hermitian operator must be square and non-empty");
  require_finite(m, "Hermitian operator");
  const double dev = max_abs(m - m.adjoint());
  if (dev > tol) {
    throw InvalidArgument("matrix is not Hermitian (max deviation " + std::to_string(dev) + ")");
  }
  m_ = (m + m.adjoint()) / 2.0;
}

DensityMatrix::DensityMatrix(const CMatrix& m, double tol) : op_(m, tol) {
  const double tr = op_.matrix().trace().real();
  if (std::abs(tr - 1.0) > tol) throw InvalidArgument("density matrix trace is " + std::to_string(tr));
  const double min_eig = hermitian_eig(op_).values.minCoeff();
  if (min_eig < -tol) throw InvalidArgument("density matrix has eigenvalue " + std::to_string(min_eig));
}

DensityMatrix DensityMatrix::pure(const CVector& ket) {
  const double n = ket.norm();
  if (n == 0.0) throw InvalidArgument("zero ket");
  const CVector v = ket / n;
  return DensityMatrix(v * v.adjoint());
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix partial_trace(const CMatrix& m, std::span<const int> dims, std::span<const int> keep) {
  check_square(m, dims, "partial_trace");
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw DimensionError("partial_trace: subsystem index out of range");
    kept[k] = true;
  }
  int kept_dim = 1;
  for (int k = 0; k < n; ++k) {
    if (kept[k]) kept_dim *= dims[k];
  }

  // Split every full index into its (kept, traced) components once.
  const int total = static_cast<int>(m.rows());
  std::vector<int> kept_index(total), traced_index(total), digits;
  for (int i = 0; i < total; ++i) {
    split_index(i, dims, digits);
    int ki = 0, ti = 0;
    for (int k = 0; k < n; ++k) {
      if (kept[k]) {
        ki = ki * dims[k] + digits[k];
      } else {
        ti = ti * dims[k] + digits[k];
      }
    }
    kept_index[i] = ki;
    traced_index[i] = ti;
  }

  CMatrix out = CMatrix::Zero(kept_dim, kept_dim);
  for (int j = 0; j < total; ++j) {
    for (int i = 0; i < total; ++i) {
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += m(i, j);
    }
  }
  return out;
}

CMatrix partial_transpose(const CMatrix& m, std::span<const int> dims, std::span<const int> systems) {
  check_square(m, dims, "partial_transpose");
  const int n = static_cast<int>(dims.size());
  std::vector<bool> flip(n, false);
  for (int k : systems) {
    if (k < 0 || k >= n) throw DimensionError("partial_transpose: subsystem index out of range");
    flip[k] = true;
  }
  const int total = static_cast<int>(m.rows());
  std::vector<std::vector<int>> digits(total);
  for (int i = 0; i < total; ++i) split_index(i, dims, digits[i]);

  CMatrix out(total, total);
  for (int j = 0; j < total; ++j) {
    for (int i = 0; i < total; ++i) {
      int ri = 0, cj = 0;
      for (int k = 0; k < n; ++k) {
        const int a = flip[k] ? digits[j][k] : digits[i][k];
        const int b = flip[k] ? digits[i][k] : digits[j][k];
        ri = ri * dims[k] + a;
        cj = cj * dims[k] + b;
      }
      out(ri, cj) = m(i, j);
    }
  }
  return out;
}

CMatrix permute_systems(const CMatrix& m, std::span<const int> dims, std::span<const int> perm) {
  check_square(m, dims, "permute_systems");
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(perm.size()) != n) throw DimensionError("permute_systems: permutation size mismatch");
  std::vector<int> seen(n, 0);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]++) throw DimensionError("permute_systems: not a permutation");
  }
  const int total = static_cast<int>(m.rows());
  std::vector<int> new_index(total), digits;
  for (int i = 0; i < total; ++i) {
    split_index(i, dims, digits);
    int idx = 0;
    for (int k = 0; k < n; ++k) idx = idx * dims[perm[k]] + digits[perm[k]];
    new_index[i] = idx;
  }
  CMatrix out(total, total);
  for (int j = 0; j < total; ++j) {
    for (int i = 0; i < total; ++i) out(new_index[i], new_index[j]) = m(i, j);
  }
  return out;
}

EigenDecomposition hermitian_eig(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("hermitian_eig: QR iteration did not converge for a " + std::to_string(h.dim()) + "x" +
                           std::to_string(h.dim()) + " matrix (Eigen info code " +
                           std::to_string(static_cast<int>(solver.info())) + ")");
  }
  // Eigen sorts ascending.
  EigenDecomposition out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

int numerical_rank(const CMatrix& m, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("numerical_rank: tolerance must be positive");
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<CMatrix> svd(m);
  const RVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = tol * s(0);
  return static_cast<int>((s.array() > cut).count());
}

Complex frobenius_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("frobenius_inner: dimension mismatch");
  return (a.conjugate().cwiseProduct(b)).sum();
}

std::vector<CMatrix> hermitian_basis(int dim) {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<CMatrix> basis;
  basis.reserve(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    CMatrix e = CMatrix::Zero(dim, dim);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      CMatrix s = CMatrix::Zero(dim, dim);
      s(i, j) = r;
      s(j, i) = r;
      basis.push_back(std::move(s));
      CMatrix a = CMatrix::Zero(dim, dim);
      a(i, j) = Complex(0.0, r);
      a(j, i) = Complex(0.0, -r);
      basis.push_back(std::move(a));
    }
  }
  return basis;
}

RVector hermitian_to_real(const CMatrix& h) {
  const int dim = static_cast<int>(h.rows());
  const double s2 = std::sqrt(2.0);
  RVector v(dim * dim);
  int k = 0;
  for (int i = 0; i < dim; ++i) v(k++) = h(i, i).real();
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      // Average the two triangles so slightly non-Hermitian input projects.
      const Complex hij = (h(i, j) + std::conj(h(j, i))) / 2.0;
      v(k++) = s2 * hij.real();
      v(k++) = s2 * hij.imag();
    }
  }
  return v;
}

CMatrix real_to_hermitian(const RVector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) throw DimensionError("real_to_hermitian: size mismatch");
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix h = CMatrix::Zero(dim, dim);
  int k = 0;
  for (int i = 0; i < dim; ++i) h(i, i) = v(k++);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const Complex z(r * v(k), r * v(k + 1));
      k += 2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

}  // namespace shadow
