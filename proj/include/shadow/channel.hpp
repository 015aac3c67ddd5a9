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

#include <map>
#include <optional>
#include <vector>

#include "shadow/linalg.hpp"
#include "shadow/pauli.hpp"

namespace shadow {

inline constexpr double kChannelTol = 1e-8;

/// A CPTP map N(ρ) = Σ_k E_k ρ E_k† with square Kraus operators.
class KrausChannel {
 public:
  /// Throws DimensionError for ragged or non-square operators and
  /// NotTracePreserving when ‖Σ E_k†E_k − I‖_max > tol.
  explicit KrausChannel(std::vector<CMatrix> kraus, double tol = kChannelTol);

  int dim() const { return static_cast<int>(kraus_.front().rows()); }
  const std::vector<CMatrix>& kraus() const { return kraus_; }

 private:
  std::vector<CMatrix> kraus_;
};

/// Choi matrix J = Σ_ij |i⟩⟨j| ⊗ N(|i⟩⟨j|), systems ordered (input, output).
class ChoiMatrix {
 public:
  ChoiMatrix(CMatrix m, int dim_in, int dim_out);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const CMatrix& matrix() const { return m_; }

  bool is_hermitian(double tol = kChannelTol) const;
  bool is_psd(double tol = kChannelTol) const;

 private:
  CMatrix m_;
  int dim_in_;
  int dim_out_;
};

/// A Hermitian-preserving map with equal input and output dimension, held
/// as its (Hermitian) Choi matrix.
class HPMap {
 public:
  explicit HPMap(const ChoiMatrix& choi, double tol = kChannelTol);
  static HPMap from_choi(const CMatrix& m, int dim, double tol = kChannelTol);

  int dim() const { return choi_.dim_in(); }
  const ChoiMatrix& choi() const { return choi_; }
  const CMatrix& matrix() const { return choi_.matrix(); }

  HPMap operator+(const HPMap& other) const;
  HPMap operator-(const HPMap& other) const;
  HPMap operator*(double scale) const;

 private:
  ChoiMatrix choi_;
};

ChoiMatrix kraus_to_choi(const KrausChannel& c);
HPMap to_hp_map(const KrausChannel& c);

/// Kraus operators from the scaled eigenvectors of a CPTP Choi matrix.
KrausChannel choi_to_kraus(const ChoiMatrix& j, double tol = kChannelTol);

CMatrix apply_map(const KrausChannel& c, const CMatrix& x);
CMatrix apply_map(const HPMap& map, const CMatrix& x);

// Unchecked kernels on raw d²×d² Choi matrices; linear over ℂ, so they also
// serve non-Hermitian probes.

/// N(x) = tr_in[(xᵀ ⊗ I) J].
CMatrix apply_choi(const CMatrix& j, const CMatrix& x);
/// Choi matrix of the adjoint: J'[(a,i),(b,j)] = conj(J[(i,a),(j,b)]).
CMatrix adjoint_choi(const CMatrix& j, int dim);
/// Link product tr_B[(J_innerᵀᴮ ⊗ I_C)(I_A ⊗ J_outer)] = Choi of outer∘inner.
CMatrix link_product(const CMatrix& j_inner, const CMatrix& j_outer, int dim);

/// The map satisfying ⟨N†(O), X⟩ = ⟨O, N(X)⟩.
HPMap adjoint(const HPMap& map);

HPMap compose(const HPMap& outer, const HPMap& inner);
KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner);

/// a ⊗ b with the joint Choi matrix ordered (A_in B_in, A_out B_out).
HPMap tensor(const HPMap& a, const HPMap& b);
KrausChannel tensor(const KrausChannel& a, const KrausChannel& b);

/// p if tr_out[J] = p·I within tol (max norm), with p = tr[J]/dim.
std::optional<double> is_trace_scaling(const HPMap& map, double tol = kChannelTol);

/// p if map(I) = p·I within tol.
std::optional<double> is_unit_scaling(const HPMap& map, double tol = kChannelTol);

/// Σ_k E_k ⊗ conj(E_k); acts on row-major vec(ρ).
CMatrix transfer_matrix(const KrausChannel& c);

/// Row-major vectorization: vec(|u⟩⟨v|) = |u⟩ ⊗ |v*⟩.
CVector vectorize(const CMatrix& m);

// Channel families.

using PauliProbabilities = std::map<PauliString, double>;

KrausChannel make_identity_channel(int dim);

/// Generalized amplitude damping with damping ε and temperature indicator p.
KrausChannel make_gad(double epsilon, double p);

/// n-qubit depolarizing N(ρ) = (1−ε)ρ + ε I/2ⁿ.
KrausChannel make_depolarizing(double epsilon, int n_qubits);

/// Σ_σ p_σ σρσ. Missing strings carry probability 0.
KrausChannel make_mixed_pauli(const PauliProbabilities& probs);

/// Pauli probabilities of the n-qubit depolarizing channel.
PauliProbabilities depolarizing_probabilities(double epsilon, int n_qubits);

/// Validates non-negativity, equal lengths and unit sum; returns the qubit count.
int validate_pauli_probabilities(const PauliProbabilities& probs);

KrausChannel make_unitary(const CMatrix& u);

/// which = 1: ½IρI + ½XρX;  which = 2: ½IρI + ¼XρX + ¼YρY.
KrausChannel make_case_study(int which);

}  // namespace shadow
