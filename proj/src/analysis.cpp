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


#include "shadow/analysis.hpp"

#include <cmath>
#include <vector>

#include "shadow/errors.hpp"

namespace shadow {

namespace {

// Choi matrix of X ↦ (q/t)·tr[pX] + (k(I − q)/(t(d − k)))·tr[(I − p)X] for a
// rank-k projector p. The map X ↦ A·tr[BX] has Choi matrix Bᵀ ⊗ A.
CMatrix projector_witness(const CMatrix& p, int k, double t, const CMatrix& q) {
  const Eigen::Index d = p.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  const double w = static_cast<double>(k) / (t * static_cast<double>(d - k));
  return kron(p.transpose(), q / t) + kron((id - p).transpose(), w * (id - q));
}

CMatrix projector_onto(const CMatrix& vectors, const std::vector<int>& columns) {
  CMatrix p = CMatrix::Zero(vectors.rows(), vectors.rows());
  for (int j : columns) p += vectors.col(j) * vectors.col(j).adjoint();
  return p;
}

}  // namespace

int effective_shadow_dimension(const KrausChannel& c, double tol) {
  return numerical_rank(transfer_matrix(c), tol);
}

double shadow_destructivity(const KrausChannel& c, double tol) {
  const double d = c.dim();
  return std::log2(d * d / effective_shadow_dimension(c, tol));
}

ShadowProfile shadow_profile(const KrausChannel& c, double tol) {
  ShadowProfile s;
  s.dim = c.dim();
  s.d_s = effective_shadow_dimension(c, tol);
  s.zeta = std::log2(static_cast<double>(s.dim * s.dim) / s.d_s);
  return s;
}

bool is_invertible(const KrausChannel& c, double tol) {
  return effective_shadow_dimension(c, tol) == c.dim() * c.dim();
}

PreservationReport check_preservation(const KrausChannel& c, const HermitianOperator& o, double tol) {
  const int d = c.dim();
  if (o.dim() != d) throw DimensionError("check_preservation: observable dimension does not match channel");
  const HPMap dag = adjoint(to_hp_map(c));
  const auto basis = hermitian_basis(d);
  const int n = d * d;
  RMatrix a(n, n);
  for (int l = 0; l < n; ++l) a.col(l) = hermitian_to_real(apply_map(dag, basis[l]));
  const RVector b = hermitian_to_real(o.matrix());

  Eigen::BDCSVD<RMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(kRankTol);
  const RVector qv = svd.solve(b);
  PreservationReport r;
  r.residual = (a * qv - b).norm();
  r.preserved = r.residual <= tol * std::max(1.0, o.matrix().norm());
  if (r.preserved) r.witness_q.emplace(real_to_hermitian(qv, d));
  return r;
}

HPMap construct_witness_retriever(const HermitianOperator& o, const HermitianOperator& q) {
  const int d = o.dim();
  if (q.dim() != d) throw DimensionError("construct_witness_retriever: o and q differ in dimension");
  const double onorm = o.matrix().norm();
  if (onorm == 0.0) throw InvalidArgument("construct_witness_retriever: observable is zero");

  const EigenDecomposition eig = hermitian_eig(o);
  const double scale = eig.values.cwiseAbs().maxCoeff();
  const double zero_tol = kRankTol * scale;
  std::vector<int> support;
  for (int j = 0; j < d; ++j) {
    if (std::abs(eig.values(j)) > zero_tol) support.push_back(j);
  }
  const int k = static_cast<int>(support.size());
  const double t = o.matrix().trace().real();
  const CMatrix id = identity(d);

  if (k < d && std::abs(t) > 1e-10 * onorm) {
    return HPMap::from_choi(projector_witness(projector_onto(eig.vectors, support), k, t, q.matrix()), d);
  }

  if (k < d) {
    // Traceless and singular: drop the largest-magnitude eigenvalue λ₀ from
    // the support, leaving trace −λ₀.
    int j0 = support.front();
    for (int j : support) {
      if (std::abs(eig.values(j)) > std::abs(eig.values(j0))) j0 = j;
    }
    const double lambda0 = eig.values(j0);
    std::vector<int> rest;
    for (int j : support) {
      if (j != j0) rest.push_back(j);
    }
    const CMatrix q_shift = q.matrix() + (static_cast<double>(k - 1) / d) * (id - q.matrix());
    return HPMap::from_choi(projector_witness(projector_onto(eig.vectors, rest), k - 1, -lambda0, q_shift), d);
  }

  // Full rank: shift by the smallest eigenvalue.
  const double lambda0 = eig.values(d - 1);
  const double spread = eig.values(0) - lambda0;
  if (spread <= zero_tol) return to_hp_map(make_identity_channel(d));
  std::vector<int> shifted_support;
  for (int j = 0; j < d; ++j) {
    if (eig.values(j) - lambda0 > zero_tol) shifted_support.push_back(j);
  }
  const int kt = static_cast<int>(shifted_support.size());
  const double tt = t - d * lambda0;
  const CMatrix q_shift = q.matrix() - (kt * lambda0 / tt) * id;
  return HPMap::from_choi(projector_witness(projector_onto(eig.vectors, shifted_support), kt, tt, q_shift), d);
}

}  // namespace shadow
