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

#include "shadow/channel.hpp"
#include "shadow/linalg.hpp"

namespace shadow {

inline constexpr double kPreservationTol = 1e-8;

struct PreservationReport {
  bool preserved = false;
  std::optional<HermitianOperator> witness_q;  // Q with N†(Q) = O
  double residual = 0.0;                       // min_Q ‖N†(Q) − O‖_F
};

struct ShadowProfile {
  int d_s = 0;
  double zeta = 0.0;  // bits
  int dim = 0;
};

/// Rank of the transfer matrix: the dimension of N†(L^H).
int effective_shadow_dimension(const KrausChannel& c, double tol = kRankTol);

/// log₂(d²/d_s).
double shadow_destructivity(const KrausChannel& c, double tol = kRankTol);

ShadowProfile shadow_profile(const KrausChannel& c, double tol = kRankTol);

bool is_invertible(const KrausChannel& c, double tol = kRankTol);

/// Least squares over Hermitian Q (d² real parameters). Preserved iff the
/// residual is at most tol·max(1, ‖O‖_F); the witness is the minimum-norm
/// solution, with singular values below kRankTol (relative) discarded.
PreservationReport check_preservation(const KrausChannel& c, const HermitianOperator& o,
                                      double tol = kPreservationTol);

/// A Hermitian-preserving, unit-scaling map D† with D†(o) = q, so that its
/// adjoint D is an HPTS retriever whenever N†(q) = o. When o is a multiple of
/// the identity the identity map is returned (which sends o to itself, and
/// o is then a valid choice of q for any channel).
HPMap construct_witness_retriever(const HermitianOperator& o, const HermitianOperator& q);

}  // namespace shadow
