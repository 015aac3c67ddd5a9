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

#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace shadow {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kDensityTol = 1e-10;
inline constexpr double kRankTol = 1e-8;

/// Throws InvalidArgument if any entry of `m` is NaN or infinite.
void require_finite(const CMatrix& m, std::string_view what);

/// Largest absolute entry (max norm).
double max_abs(const CMatrix& m);

CMatrix identity(int dim);

/// A Hermitian matrix. Construction checks hermiticity within `tol` (max
/// norm) and stores the symmetrized form (A + A†)/2.
class HermitianOperator {
 public:
  explicit HermitianOperator(const CMatrix& m, double tol = kHermiticityTol);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }

 private:
  CMatrix m_;
};

/// A unit-trace positive semidefinite matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(const CMatrix& m, double tol = kDensityTol);

  /// |ψ⟩⟨ψ| for a (not necessarily normalized) non-zero ket.
  static DensityMatrix pure(const CVector& ket);

  int dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }
  const CMatrix& matrix() const { return op_.matrix(); }

 private:
  HermitianOperator op_;
};

// Subsystem index 0 is the leftmost tensor factor throughout the library.

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Traces out every subsystem whose index is not listed in `keep`. The kept
/// subsystems retain their relative order.
CMatrix partial_trace(const CMatrix& m, std::span<const int> dims, std::span<const int> keep);

/// Transposes the listed subsystems.
CMatrix partial_transpose(const CMatrix& m, std::span<const int> dims, std::span<const int> systems);

/// Reorders tensor factors: output factor k is input factor perm[k].
CMatrix permute_systems(const CMatrix& m, std::span<const int> dims, std::span<const int> perm);

struct EigenDecomposition {
  RVector values;   // descending
  CMatrix vectors;  // columns are eigenvectors
};

EigenDecomposition hermitian_eig(const HermitianOperator& h);

/// Number of singular values above `tol` times the largest one.
int numerical_rank(const CMatrix& m, double tol = kRankTol);

/// tr[a† b].
Complex frobenius_inner(const CMatrix& a, const CMatrix& b);

// Orthonormal real basis of the d×d Hermitian matrices: the diagonal units
// first, then for every i < j the pair (E_ij + E_ji)/√2, i(E_ij − E_ji)/√2.
std::vector<CMatrix> hermitian_basis(int dim);

/// Coordinates of a Hermitian matrix in `hermitian_basis(dim)`.
RVector hermitian_to_real(const CMatrix& h);

/// Inverse of hermitian_to_real.
CMatrix real_to_hermitian(const RVector& v, int dim);

}  // namespace shadow
