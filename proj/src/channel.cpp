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

#include "shadow/channel.hpp"

#include <array>
#include <cmath>
#include <string>

#include "shadow/errors.hpp"

namespace shadow {

namespace {

void check_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<CMatrix> kraus, double tol) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw InvalidArgument("channel needs at least one Kraus operator");
  const Eigen::Index d = kraus_.front().rows();
  if (d == 0) throw DimensionError("empty Kraus operator");
  CMatrix sum = CMatrix::Zero(d, d);
  for (const CMatrix& e : kraus_) {
    if (e.rows() != d || e.cols() != d) throw DimensionError("Kraus operators must all be square of equal size");
    require_finite(e, "Kraus operator");
    sum += e.adjoint() * e;
  }
  const double dev = max_abs(sum - CMatrix::Identity(d, d));
  if (dev > tol) {
    throw NotTracePreserving("sum of E_k^dagger E_k deviates from identity by " + std::to_string(dev));
  }
}

ChoiMatrix::ChoiMatrix(CMatrix m, int dim_in, int dim_out) : m_(std::move(m)), dim_in_(dim_in), dim_out_(dim_out) {
  if (dim_in <= 0 || dim_out <= 0) throw DimensionError("Choi dimensions must be positive");
  if (dim_in != dim_out) throw DimensionError("only maps with equal input and output dimension are supported");
  const Eigen::Index n = static_cast<Eigen::Index>(dim_in) * dim_out;
  if (m_.rows() != n || m_.cols() != n) throw DimensionError("Choi matrix has the wrong size");
  require_finite(m_, "Choi matrix");
}

bool ChoiMatrix::is_hermitian(double tol) const { return max_abs(m_ - m_.adjoint()) <= tol; }

bool ChoiMatrix::is_psd(double tol) const {
  if (!is_hermitian(tol)) return false;
  Eigen::SelfAdjointEigenSolver<CMatrix> es((m_ + m_.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

HPMap::HPMap(const ChoiMatrix& choi, double tol)
    : choi_(choi.is_hermitian(tol)
                ? ChoiMatrix((choi.matrix() + choi.matrix().adjoint()) / 2.0, choi.dim_in(), choi.dim_out())
                : throw InvalidArgument("Choi matrix is not Hermitian; map is not Hermitian-preserving")) {}

HPMap HPMap::from_choi(const CMatrix& m, int dim, double tol) { return HPMap(ChoiMatrix(m, dim, dim), tol); }

HPMap HPMap::operator+(const HPMap& other) const {
  if (other.dim() != dim()) throw DimensionError("HPMap sum: dimension mismatch");
  return from_choi(matrix() + other.matrix(), dim());
}

HPMap HPMap::operator-(const HPMap& other) const {
  if (other.dim() != dim()) throw DimensionError("HPMap difference: dimension mismatch");
  return from_choi(matrix() - other.matrix(), dim());
}

HPMap HPMap::operator*(double scale) const { return from_choi(matrix() * scale, dim()); }

ChoiMatrix kraus_to_choi(const KrausChannel& c) {
  const int d = c.dim();
  CMatrix j = CMatrix::Zero(d * d, d * d);
  for (const CMatrix& e : c.kraus()) {
    // Column i of E is E|i⟩; vec over (i, a) is E(a, i).
    CVector v(d * d);
    for (int i = 0; i < d; ++i) {
      for (int a = 0; a < d; ++a) v(i * d + a) = e(a, i);
    }
    j += v * v.adjoint();
  }
  return ChoiMatrix(std::move(j), d, d);
}

HPMap to_hp_map(const KrausChannel& c) { return HPMap(kraus_to_choi(c)); }

KrausChannel choi_to_kraus(const ChoiMatrix& j, double tol) {
  const int d = j.dim_in();
  if (!j.is_hermitian(tol)) throw NotCompletelyPositive("Choi matrix is not Hermitian");
  const CMatrix h = (j.matrix() + j.matrix().adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw ConvergenceError("choi_to_kraus: eigendecomposition failed");
  const RVector& lam = es.eigenvalues();
  if (lam.minCoeff() < -tol) {
    throw NotCompletelyPositive("Choi matrix has eigenvalue " + std::to_string(lam.minCoeff()));
  }
  const std::array<int, 2> dims{d, d};
  const std::array<int, 1> keep_in{0};
  const double dev = max_abs(partial_trace(h, dims, keep_in) - CMatrix::Identity(d, d));
  if (dev > tol) throw NotTracePreserving("partial trace over output deviates from identity by " + std::to_string(dev));

  const double cutoff = 1e-14 * std::max(1.0, lam.maxCoeff());
  std::vector<CMatrix> kraus;
  for (Eigen::Index k = lam.size() - 1; k >= 0; --k) {
    if (lam(k) <= cutoff) continue;
    const double s = std::sqrt(lam(k));
    CMatrix e(d, d);
    for (int i = 0; i < d; ++i) {
      for (int a = 0; a < d; ++a) e(a, i) = s * es.eigenvectors()(i * d + a, k);
    }
    kraus.push_back(std::move(e));
  }
  return KrausChannel(std::move(kraus), std::max(tol, 10 * dev + 1e-12));
}

CMatrix apply_map(const KrausChannel& c, const CMatrix& x) {
  if (x.rows() != c.dim() || x.cols() != c.dim()) throw DimensionError("apply: input dimension mismatch");
  CMatrix out = CMatrix::Zero(c.dim(), c.dim());
  for (const CMatrix& e : c.kraus()) out += e * x * e.adjoint();
  return out;
}

CMatrix apply_map(const HPMap& map, const CMatrix& x) {
  if (x.rows() != map.dim() || x.cols() != map.dim()) throw DimensionError("apply: input dimension mismatch");
  return apply_choi(map.matrix(), x);
}

CMatrix apply_choi(const CMatrix& j, const CMatrix& x) {
  const int d = static_cast<int>(x.rows());
  if (j.rows() != static_cast<Eigen::Index>(d) * d) throw DimensionError("apply_choi: dimension mismatch");
  CMatrix out = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int jj = 0; jj < d; ++jj) {
      const Complex xij = x(i, jj);
      if (xij == Complex(0.0)) continue;
      out += xij * j.block(i * d, jj * d, d, d);
    }
  }
  return out;
}

CMatrix adjoint_choi(const CMatrix& j, int dim) {
  const std::array<int, 2> dims{dim, dim};
  const std::array<int, 2> swap{1, 0};
  return permute_systems(j.conjugate(), dims, swap);
}

CMatrix link_product(const CMatrix& j_inner, const CMatrix& j_outer, int dim) {
  const std::array<int, 2> dims2{dim, dim};
  const std::array<int, 1> second{1};
  const CMatrix pt = partial_transpose(j_inner, dims2, second);
  const CMatrix id = CMatrix::Identity(dim, dim);
  const CMatrix prod = kron(pt, id) * kron(id, j_outer);
  const std::array<int, 3> dims3{dim, dim, dim};
  const std::array<int, 2> keep{0, 2};
  return partial_trace(prod, dims3, keep);
}

HPMap adjoint(const HPMap& map) { return HPMap::from_choi(adjoint_choi(map.matrix(), map.dim()), map.dim()); }

HPMap compose(const HPMap& outer, const HPMap& inner) {
  if (outer.dim() != inner.dim()) throw DimensionError("compose: dimension mismatch");
  return HPMap::from_choi(link_product(inner.matrix(), outer.matrix(), inner.dim()), inner.dim());
}

KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner) {
  if (outer.dim() != inner.dim()) throw DimensionError("compose: dimension mismatch");
  std::vector<CMatrix> kraus;
  kraus.reserve(outer.kraus().size() * inner.kraus().size());
  for (const CMatrix& a : outer.kraus()) {
    for (const CMatrix& b : inner.kraus()) kraus.push_back(a * b);
  }
  return KrausChannel(std::move(kraus));
}

HPMap tensor(const HPMap& a, const HPMap& b) {
  const std::array<int, 4> dims{a.dim(), a.dim(), b.dim(), b.dim()};
  const std::array<int, 4> perm{0, 2, 1, 3};
  return HPMap::from_choi(permute_systems(kron(a.matrix(), b.matrix()), dims, perm), a.dim() * b.dim());
}

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<CMatrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const CMatrix& x : a.kraus()) {
    for (const CMatrix& y : b.kraus()) kraus.push_back(kron(x, y));
  }
  return KrausChannel(std::move(kraus));
}

std::optional<double> is_trace_scaling(const HPMap& map, double tol) {
  const int d = map.dim();
  const std::array<int, 2> dims{d, d};
  const std::array<int, 1> keep_in{0};
  const CMatrix marginal = partial_trace(map.matrix(), dims, keep_in);
  const double p = map.matrix().trace().real() / d;
  if (max_abs(marginal - p * CMatrix::Identity(d, d)) > tol) return std::nullopt;
  return p;
}

std::optional<double> is_unit_scaling(const HPMap& map, double tol) {
  const int d = map.dim();
  const CMatrix image = apply_map(map, identity(d));
  const double p = image.trace().real() / d;
  if (max_abs(image - p * CMatrix::Identity(d, d)) > tol) return std::nullopt;
  return p;
}

CMatrix transfer_matrix(const KrausChannel& c) {
  const int d = c.dim();
  CMatrix m = CMatrix::Zero(d * d, d * d);
  for (const CMatrix& e : c.kraus()) m += kron(e, e.conjugate());
  return m;
}

CVector vectorize(const CMatrix& m) {
  CVector v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  }
  return v;
}

KrausChannel make_identity_channel(int dim) {
  if (dim <= 0) throw InvalidArgument("identity channel dimension must be positive");
  return KrausChannel({CMatrix::Identity(dim, dim)});
}

KrausChannel make_gad(double epsilon, double p) {
  check_unit_interval(epsilon, "GAD damping epsilon");
  check_unit_interval(p, "GAD temperature indicator p");
  const double se = std::sqrt(epsilon);
  const double s1e = std::sqrt(1.0 - epsilon);
  CMatrix e0 = CMatrix::Zero(2, 2), e1 = CMatrix::Zero(2, 2), e2 = CMatrix::Zero(2, 2), e3 = CMatrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  e0(1, 1) = s1e;
  e1(0, 1) = se;
  e2(0, 0) = s1e;
  e2(1, 1) = 1.0;
  e3(1, 0) = se;
  const double sp = std::sqrt(p), sq = std::sqrt(1.0 - p);
  std::vector<CMatrix> kraus;
  if (p > 0.0) {
    kraus.push_back(sp * e0);
    kraus.push_back(sp * e1);
  }
  if (p < 1.0) {
    kraus.push_back(sq * e2);
    kraus.push_back(sq * e3);
  }
  return KrausChannel(std::move(kraus));
}

PauliProbabilities depolarizing_probabilities(double epsilon, int n_qubits) {
  check_unit_interval(epsilon, "depolarizing epsilon");
  if (n_qubits <= 0) throw InvalidArgument("depolarizing channel needs at least one qubit");
  const double total = std::pow(4.0, n_qubits);
  PauliProbabilities probs;
  for (const PauliString& s : all_pauli_strings(n_qubits)) {
    probs[s] = s.is_identity() ? 1.0 - epsilon * (total - 1.0) / total : epsilon / total;
  }
  return probs;
}

KrausChannel make_depolarizing(double epsilon, int n_qubits) {
  return make_mixed_pauli(depolarizing_probabilities(epsilon, n_qubits));
}

int validate_pauli_probabilities(const PauliProbabilities& probs) {
  if (probs.empty()) throw InvalidArgument("empty Pauli probability map");
  const int n = probs.begin()->first.n_qubits();
  double sum = 0.0;
  for (const auto& [s, p] : probs) {
    if (s.n_qubits() != n) throw InvalidArgument("Pauli strings of unequal length in probability map");
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidArgument("negative or non-finite Pauli probability for " + s.str());
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-10) throw InvalidArgument("Pauli probabilities sum to " + std::to_string(sum));
  return n;
}

KrausChannel make_mixed_pauli(const PauliProbabilities& probs) {
  validate_pauli_probabilities(probs);
  std::vector<CMatrix> kraus;
  for (const auto& [s, p] : probs) {
    if (p > 0.0) kraus.push_back(std::sqrt(p) * s.matrix());
  }
  return KrausChannel(std::move(kraus));
}

KrausChannel make_unitary(const CMatrix& u) {
  if (u.rows() != u.cols() || u.rows() == 0) throw DimensionError("unitary must be square");
  require_finite(u, "unitary");
  const double dev = max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()));
  if (dev > 1e-8) throw InvalidArgument("matrix is not unitary (deviation " + std::to_string(dev) + ")");
  return KrausChannel({u});
}

KrausChannel make_case_study(int which) {
  const double r2 = std::sqrt(0.5);
  switch (which) {
    case 1:
      return KrausChannel({r2 * pauli_matrix('I'), r2 * pauli_matrix('X')});
    case 2:
      return KrausChannel({r2 * pauli_matrix('I'), 0.5 * pauli_matrix('X'), 0.5 * pauli_matrix('Y')});
    default:
      throw InvalidArgument("case-study channel must be 1 or 2");
  }
}

}  // namespace shadow
