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


#include "shadow/retrieving.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "shadow/errors.hpp"

namespace shadow {

namespace {

constexpr double kNegligibleWeight = 1e-7;

CMatrix identity_choi(int d) { return kraus_to_choi(make_identity_channel(d)).matrix(); }

CMatrix hermitize(const CMatrix& m) { return (m + m.adjoint()) / 2.0; }

CMatrix trace_out_output(const CMatrix& j, int d) {
  const std::array<int, 2> dims{d, d};
  const std::array<int, 1> keep{0};
  return partial_trace(j, dims, keep);
}

// Rescales a solver block to unit weight and removes the residual marginal
// error so the result is exactly trace preserving.
CMatrix normalize_component(const CMatrix& j, double c, int d) {
  CMatrix u = hermitize(j / c);
  const CMatrix defect = identity(d) - trace_out_output(u, d);
  u += kron(defect, identity(d) / static_cast<double>(d));
  return hermitize(u);
}

int channel_dim(const KrausChannel& noise, const HermitianOperator& o) {
  if (o.dim() != noise.dim()) throw DimensionError("observable dimension does not match the channel");
  if (o.matrix().norm() == 0.0) throw InvalidArgument("observable must be non-zero");
  return noise.dim();
}

SdpStatus map_status(conic::SolveStatus s) {
  switch (s) {
    case conic::SolveStatus::Optimal:
      return SdpStatus::Optimal;
    case conic::SolveStatus::Infeasible:
      return SdpStatus::Infeasible;
    default:
      return SdpStatus::NumericalTrouble;
  }
}

struct PrimalBlocks {
  int j1, j2, c1, c2;
};

PrimalBlocks add_two_channel_blocks(conic::Program& p, int d) {
  PrimalBlocks b{};
  b.j1 = p.add_hermitian_block(d * d);
  b.j2 = p.add_hermitian_block(d * d);
  b.c1 = p.add_scalar_block();
  b.c2 = p.add_scalar_block();
  p.add_scalar_objective(b.c1, 1.0);
  p.add_scalar_objective(b.c2, 1.0);
  // tr_out[J_j] = c_j·I, tested against every Hermitian basis element.
  for (const CMatrix& h : hermitian_basis(d)) {
    const CMatrix lifted = kron(h, identity(d));
    const double tr = h.trace().real();
    for (auto [jb, cb] : {std::pair{b.j1, b.c1}, std::pair{b.j2, b.c2}}) {
      const int row = p.add_constraint(0.0);
      p.add_coefficient(row, jb, lifted);
      p.add_scalar_coefficient(row, cb, -tr);
    }
  }
  return b;
}

SdpSolution finish_primal(const conic::Program& p, const PrimalBlocks& b, int d, const SdpOptions& opts) {
  const conic::Solution s = conic::solve(p, opts);
  SdpSolution out;
  out.status = map_status(s.status);
  out.iterations = s.iterations;
  out.message = s.message;
  out.primal_infeasibility = s.primal_infeasibility;
  if (out.status != SdpStatus::Optimal) return out;
  out.gamma = s.primal_objective;
  out.dual_value = s.dual_objective;
  out.decomposition = make_decomposition(s.x[b.j1], s.x[b.j2], s.x[b.c1](0, 0).real(), s.x[b.c2](0, 0).real(), d);
  return out;
}

}  // namespace

HPMap RetrieverDecomposition::combined() const {
  return HPMap::from_choi(c1 * d1.matrix() + c2 * d2.matrix(), dim());
}

RetrieverDecomposition make_decomposition(const CMatrix& j1, const CMatrix& j2, double c1, double c2_magnitude,
                                          int dim) {
  const double floor = kNegligibleWeight * std::max(1.0, c1 + c2_magnitude);
  RetrieverDecomposition r;
  r.c1 = std::max(c1, 0.0);
  r.c2 = -std::max(c2_magnitude, 0.0);
  r.d1 = ChoiMatrix(c1 > floor ? normalize_component(j1, c1, dim) : identity_choi(dim), dim, dim);
  r.d2 = ChoiMatrix(c2_magnitude > floor ? normalize_component(j2, c2_magnitude, dim) : identity_choi(dim), dim, dim);
  r.gamma = r.c1 - r.c2;
  return r;
}

RetrieverDecomposition identity_retriever(int dim) {
  RetrieverDecomposition r;
  r.c1 = 1.0;
  r.c2 = 0.0;
  r.d1 = ChoiMatrix(identity_choi(dim), dim, dim);
  r.d2 = r.d1;
  r.gamma = 1.0;
  return r;
}

const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal:
      return "Optimal";
    case SdpStatus::Infeasible:
      return "Infeasible";
    case SdpStatus::NumericalTrouble:
      return "NumericalTrouble";
  }
  return "?";
}

CMatrix composed_choi(const CMatrix& j_noise, const CMatrix& j_retriever, int dim) {
  return link_product(j_noise, j_retriever, dim);
}

CMatrix composed_choi_four_system(const CMatrix& j_noise, const CMatrix& j_retriever, int dim) {
  const CMatrix id = identity(dim);
  const CMatrix left = kron(kron(id, j_noise.transpose()), id);
  const CMatrix right = kron(identity_choi(dim), j_retriever);
  const std::array<int, 4> dims{dim, dim, dim, dim};
  const std::array<int, 2> keep{0, 3};
  return partial_trace(left * right, dims, keep);
}

CMatrix recovered_observable(const CMatrix& j_noise, const CMatrix& j_retriever, const CMatrix& o) {
  const int d = static_cast<int>(o.rows());
  const CMatrix jm = composed_choi(j_noise, j_retriever, d);
  return trace_out_output(kron(identity(d), o.transpose()) * jm.transpose(), d);
}

CMatrix dual_kernel(const CMatrix& j_noise, const CMatrix& k, const CMatrix& o) {
  const int d = static_cast<int>(o.rows());
  const CMatrix left = kron(kron(k.transpose(), j_noise.transpose()), o);
  const CMatrix right = kron(identity_choi(d), identity(d * d));
  const std::array<int, 4> dims{d, d, d, d};
  const std::array<int, 2> keep{2, 3};
  return partial_trace(left * right, dims, keep);
}

SdpSolution retrieving_cost_sdp(const KrausChannel& noise, const HermitianOperator& o, const SdpOptions& opts) {
  const int d = channel_dim(noise, o);
  const CMatrix jn = kraus_to_choi(noise).matrix();
  conic::Program p;
  const PrimalBlocks b = add_two_channel_blocks(p, d);
  // ⟨H, N†(D†(O))⟩ = tr[T(H)·J_D] for each Hermitian basis element H.
  for (const CMatrix& h : hermitian_basis(d)) {
    const CMatrix g = hermitize(dual_kernel(jn, h, o.matrix()));
    const int row = p.add_constraint(frobenius_inner(h, o.matrix()).real());
    p.add_coefficient(row, b.j1, g);
    p.add_coefficient(row, b.j2, -g);
  }
  return finish_primal(p, b, d, opts);
}

SdpSolution retrieving_cost_approx(const KrausChannel& noise, const HermitianOperator& o, double tau,
                                   const SdpOptions& opts) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidArgument("tau must be a non-negative number");
  if (tau == 0.0) return retrieving_cost_sdp(noise, o, opts);
  const int d = channel_dim(noise, o);
  const CMatrix jn = kraus_to_choi(noise).matrix();
  conic::Program p;
  const PrimalBlocks b = add_two_channel_blocks(p, d);
  const int upper = p.add_hermitian_block(d);
  const int lower = p.add_hermitian_block(d);
  // R(J_D) + S₊ = τI + O and −R(J_D) + S₋ = τI − O with S₊, S₋ ⪰ 0.
  for (const CMatrix& h : hermitian_basis(d)) {
    const CMatrix g = hermitize(dual_kernel(jn, h, o.matrix()));
    const double ho = frobenius_inner(h, o.matrix()).real();
    const double ht = tau * h.trace().real();
    const int r1 = p.add_constraint(ht + ho);
    p.add_coefficient(r1, b.j1, g);
    p.add_coefficient(r1, b.j2, -g);
    p.add_coefficient(r1, upper, h);
    const int r2 = p.add_constraint(ht - ho);
    p.add_coefficient(r2, b.j1, -g);
    p.add_coefficient(r2, b.j2, g);
    p.add_coefficient(r2, lower, h);
  }
  return finish_primal(p, b, d, opts);
}

DualSolution retrieving_cost_dual(const KrausChannel& noise, const HermitianOperator& o, const SdpOptions& opts) {
  const int d = channel_dim(noise, o);
  const CMatrix jn = kraus_to_choi(noise).matrix();
  const auto basis = hermitian_basis(d);
  const int nb = static_cast<int>(basis.size());

  // Dual variables y = (M, N, K) in basis coordinates; the slack blocks are
  // 1 − tr M, 1 − tr N, M⊗I + T(K) and N⊗I − T(K).
  conic::Program p;
  const int sm = p.add_scalar_block();
  const int sn = p.add_scalar_block();
  const int zp = p.add_hermitian_block(d * d);
  const int zm = p.add_hermitian_block(d * d);
  p.add_scalar_objective(sm, 1.0);
  p.add_scalar_objective(sn, 1.0);
  for (const CMatrix& h : basis) {
    const int row = p.add_constraint(0.0);
    p.add_scalar_coefficient(row, sm, h.trace().real());
    p.add_coefficient(row, zp, -kron(h, identity(d)));
  }
  for (const CMatrix& h : basis) {
    const int row = p.add_constraint(0.0);
    p.add_scalar_coefficient(row, sn, h.trace().real());
    p.add_coefficient(row, zm, -kron(h, identity(d)));
  }
  for (const CMatrix& h : basis) {
    const CMatrix t = hermitize(dual_kernel(jn, h, o.matrix()));
    const int row = p.add_constraint(-frobenius_inner(h, o.matrix()).real());
    p.add_coefficient(row, zp, -t);
    p.add_coefficient(row, zm, t);
  }

  const conic::Solution s = conic::solve(p, opts);
  DualSolution out;
  out.status = map_status(s.status);
  out.iterations = s.iterations;
  out.message = s.message;
  out.m = CMatrix::Zero(d, d);
  out.n = CMatrix::Zero(d, d);
  out.k = CMatrix::Zero(d, d);
  if (out.status != SdpStatus::Optimal) return out;
  for (int l = 0; l < nb; ++l) {
    out.m += s.y(l) * basis[l];
    out.n += s.y(nb + l) * basis[l];
    out.k += s.y(2 * nb + l) * basis[l];
  }
  out.value = s.dual_objective;
  return out;
}

DualCertificate evaluate_dual_certificate(const KrausChannel& noise, const HermitianOperator& o, const CMatrix& m,
                                          const CMatrix& n, const CMatrix& k, double tol) {
  const int d = channel_dim(noise, o);
  for (const CMatrix* x : {&m, &n, &k}) {
    if (x->rows() != d || x->cols() != d) throw DimensionError("dual certificate operators have the wrong size");
  }
  const CMatrix t = dual_kernel(kraus_to_choi(noise).matrix(), k, o.matrix());
  const CMatrix plus = hermitize(kron(m, identity(d)) + t);
  const CMatrix minus = hermitize(kron(n, identity(d)) - t);
  DualCertificate c;
  c.objective = -(k * o.matrix()).trace().real();
  c.trace_m = m.trace().real();
  c.trace_n = n.trace().real();
  c.min_eig_plus = Eigen::SelfAdjointEigenSolver<CMatrix>(plus, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  c.min_eig_minus = Eigen::SelfAdjointEigenSolver<CMatrix>(minus, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  c.feasible = c.trace_m <= 1.0 + tol && c.trace_n <= 1.0 + tol && c.min_eig_plus >= -tol && c.min_eig_minus >= -tol;
  return c;
}

SdpSolution gamma_min_hpts(const HPMap& map, const SdpOptions& opts) {
  if (!is_trace_scaling(map).has_value()) throw InvalidArgument("gamma_min_hpts: map is not trace-scaling");
  const int d = map.dim();
  conic::Program p;
  const PrimalBlocks b = add_two_channel_blocks(p, d);
  for (const CMatrix& e : hermitian_basis(d * d)) {
    const int row = p.add_constraint(frobenius_inner(e, map.matrix()).real());
    p.add_coefficient(row, b.j1, e);
    p.add_coefficient(row, b.j2, -e);
  }
  return finish_primal(p, b, d, opts);
}

AnalyticCost analytic_gad_cost(double epsilon, double p, char pauli) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InvalidArgument("GAD cost needs 0 <= epsilon < 1");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("GAD cost needs 0 <= p <= 1");
  const CMatrix id = identity(2);
  const CMatrix ii = identity(4);
  AnalyticCost a;
  RetrieverDecomposition& r = a.decomposition;
  CMatrix j1, j2;
  switch (pauli) {
    case 'X':
    case 'Y': {
      const CMatrix o = pauli_matrix(pauli);
      const CMatrix oo = kron(o.transpose(), o);
      r.c1 = 1.0 / (2.0 * std::sqrt(1.0 - epsilon));
      j1 = 0.5 * oo + 0.5 * ii;
      j2 = -0.5 * oo + 0.5 * ii;
      break;
    }
    case 'Z': {
      const CMatrix z = pauli_matrix('Z');
      const double s = std::abs(1.0 - 2.0 * p) * epsilon + 1.0;
      const double bias = epsilon * (1.0 - 2.0 * p) / (2.0 * s);
      r.c1 = s / (2.0 * (1.0 - epsilon));
      const CMatrix shape = kron(z, z) / (2.0 * s) + bias * kron(id, z);
      j1 = 0.5 * ii + shape;
      j2 = 0.5 * ii - shape;
      break;
    }
    default:
      throw InvalidArgument(std::string("GAD analytic cost needs X, Y or Z, got '") + pauli + "'");
  }
  r.c2 = -r.c1;
  r.d1 = ChoiMatrix(j1, 2, 2);
  r.d2 = ChoiMatrix(j2, 2, 2);
  r.gamma = 2.0 * r.c1;
  a.gamma = r.gamma;
  return a;
}

AnalyticCost analytic_pauli_cost(const PauliProbabilities& probs, const PauliString& observable) {
  const int n = validate_pauli_probabilities(probs);
  if (observable.n_qubits() != n) throw DimensionError("observable and channel act on different qubit counts");
  const int dim = 1 << n;
  AnalyticCost a;
  if (observable.is_identity()) {
    a.decomposition = identity_retriever(dim);
    return a;
  }
  double contrast = 0.0;
  for (const auto& [sigma, prob] : probs) contrast += sigma.commutes_with(observable) ? prob : -prob;
  if (std::abs(contrast) <= 1e-12) {
    throw InformationDestroyed("commuting minus anticommuting Pauli weight is " + std::to_string(contrast) +
                               "; the observable is not recoverable");
  }
  const double sign = contrast > 0.0 ? 1.0 : -1.0;
  const CMatrix o = observable.matrix();
  const CMatrix oo = sign * kron(o.transpose(), o);
  const CMatrix ii = identity(dim * dim);
  RetrieverDecomposition& r = a.decomposition;
  r.c1 = 1.0 / (2.0 * std::abs(contrast));
  r.c2 = -r.c1;
  r.d1 = ChoiMatrix((ii + oo) / static_cast<double>(dim), dim, dim);
  r.d2 = ChoiMatrix((ii - oo) / static_cast<double>(dim), dim, dim);
  r.gamma = 1.0 / std::abs(contrast);
  a.gamma = r.gamma;
  return a;
}

double analytic_depolarizing_cost(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InvalidArgument("depolarizing cost needs 0 <= epsilon < 1");
  return 1.0 / (1.0 - epsilon);
}

double conventional_pec_cost_gad(double epsilon, double p) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InvalidArgument("GAD cost needs 0 <= epsilon < 1");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("GAD cost needs 0 <= p <= 1");
  return (std::abs(1.0 - 2.0 * p) * epsilon + 1.0) / (1.0 - epsilon);
}

double conventional_pec_cost_depolarizing(double epsilon, int dim) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InvalidArgument("depolarizing cost needs 0 <= epsilon < 1");
  if (dim < 2) throw InvalidArgument("depolarizing cost needs dim >= 2");
  const double d2 = static_cast<double>(dim) * dim;
  return (1.0 + (1.0 - 2.0 / d2) * epsilon) / (1.0 - epsilon);
}

}  // namespace shadow
