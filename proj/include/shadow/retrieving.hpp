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

#include <optional>
#include <string>

#include "shadow/channel.hpp"
#include "shadow/conic.hpp"
#include "shadow/linalg.hpp"
#include "shadow/pauli.hpp"

namespace shadow {

/// D = c1·D1 + c2·D2 with CPTP D1, D2 stored as unit-marginal Choi
/// matrices, c1 ≥ 0 ≥ c2.
struct RetrieverDecomposition {
  double c1 = 1.0;
  double c2 = 0.0;
  ChoiMatrix d1{CMatrix::Ones(1, 1), 1, 1};
  ChoiMatrix d2{CMatrix::Ones(1, 1), 1, 1};
  double gamma = 1.0;  // |c1| + |c2|

  int dim() const { return d1.dim_in(); }
  /// Choi matrix of c1·D1 + c2·D2.
  HPMap combined() const;
};

/// Builds a decomposition from solver-scaled blocks j1 (marginal c1·I) and
/// j2 (marginal |c2|·I). Components with negligible weight are replaced by
/// the identity channel; the rest are normalized and their marginals
/// corrected to exactly I.
RetrieverDecomposition make_decomposition(const CMatrix& j1, const CMatrix& j2, double c1, double c2_magnitude,
                                          int dim);

RetrieverDecomposition identity_retriever(int dim);

enum class SdpStatus { Optimal, Infeasible, NumericalTrouble };

const char* to_string(SdpStatus s);

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalTrouble;
  double gamma = 0.0;
  std::optional<RetrieverDecomposition> decomposition;
  std::optional<double> dual_value;
  int iterations = 0;
  double primal_infeasibility = 0.0;
  std::string message;
};

using SdpOptions = conic::SolverOptions;

/// Choi matrix of D∘N from the Choi matrices of N and D.
CMatrix composed_choi(const CMatrix& j_noise, const CMatrix& j_retriever, int dim);

/// The same composition written out on the four systems (A_i, A_o, A'_i,
/// A'_o): tr_{A_o A'_i}[(I ⊗ J_Nᵀ ⊗ I)(J_id ⊗ J_D)].
CMatrix composed_choi_four_system(const CMatrix& j_noise, const CMatrix& j_retriever, int dim);

/// tr_out[(I ⊗ Oᵀ)·J_Mᵀ] with J_M the Choi matrix of D∘N; equals N†(D†(O)).
CMatrix recovered_observable(const CMatrix& j_noise, const CMatrix& j_retriever, const CMatrix& o);

/// The kernel T(K) = tr_{A_i A_o}[(Kᵀ ⊗ J_Nᵀ ⊗ O)(J_id ⊗ I)] on (A'_i, A'_o),
/// adjoint to the recovery map: tr[K·R(J)] = tr[T(K)·J].
CMatrix dual_kernel(const CMatrix& j_noise, const CMatrix& k, const CMatrix& o);

/// Minimizes |c1| + |c2| over two-channel retrievers with N†(D†(O)) = O.
SdpSolution retrieving_cost_sdp(const KrausChannel& noise, const HermitianOperator& o, const SdpOptions& opts = {});

/// Relaxes the recovery constraint to −τI ⪯ N†(D†(O)) − O ⪯ τI. τ = 0 is
/// the exact program.
SdpSolution retrieving_cost_approx(const KrausChannel& noise, const HermitianOperator& o, double tau,
                                   const SdpOptions& opts = {});

struct DualSolution {
  SdpStatus status = SdpStatus::NumericalTrouble;
  double value = 0.0;  // −tr[KO]
  CMatrix m, n, k;
  int iterations = 0;
  std::string message;
};

/// Maximizes −tr[KO] subject to tr M ≤ 1, tr N ≤ 1, M⊗I + T(K) ⪰ 0 and
/// N⊗I − T(K) ⪰ 0. An unbounded dual is reported as Infeasible.
DualSolution retrieving_cost_dual(const KrausChannel& noise, const HermitianOperator& o, const SdpOptions& opts = {});

struct DualCertificate {
  double objective = 0.0;  // −tr[KO]
  double trace_m = 0.0;
  double trace_n = 0.0;
  double min_eig_plus = 0.0;   // λ_min(M⊗I + T(K))
  double min_eig_minus = 0.0;  // λ_min(N⊗I − T(K))
  bool feasible = false;
};

DualCertificate evaluate_dual_certificate(const KrausChannel& noise, const HermitianOperator& o, const CMatrix& m,
                                          const CMatrix& n, const CMatrix& k, double tol = 1e-8);

/// Minimum |c1| + |c2| with J_D = c1·J1 − |c2|·J2 over CPTP J1, J2.
/// Throws InvalidArgument when d is not trace-scaling.
SdpSolution gamma_min_hpts(const HPMap& d, const SdpOptions& opts = {});

struct AnalyticCost {
  double gamma = 1.0;
  RetrieverDecomposition decomposition;
};

/// Closed-form cost and optimal retriever for GAD(ε, p) and O ∈ {X, Y, Z}.
AnalyticCost analytic_gad_cost(double epsilon, double p, char pauli);

/// Closed-form cost and retriever for a mixed-Pauli channel and a Pauli-string
/// observable, with γ = 1/|Σp₊ − Σp₋|. Throws InformationDestroyed when the
/// difference vanishes.
AnalyticCost analytic_pauli_cost(const PauliProbabilities& probs, const PauliString& observable);

/// 1/(1 − ε), the cost for any non-identity Pauli under n-qubit depolarizing noise.
double analytic_depolarizing_cost(double epsilon);

/// Cost of inverting the whole GAD channel.
double conventional_pec_cost_gad(double epsilon, double p);

/// Cost of inverting depolarizing noise on a d-dimensional system.
double conventional_pec_cost_depolarizing(double epsilon, int dim);

}  // namespace shadow
