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

#include <string>
#include <utility>
#include <vector>

#include "shadow/linalg.hpp"

/// Conic programs over Hermitian PSD cones and the non-negative orthant.
///
/// A program is stated in standard primal form
///
///     minimize    Σ_b Re tr[C_b X_b]
///     subject to  Σ_b Re tr[A_ib X_b] = rhs_i        for every constraint i
///                 X_b ⪰ 0  (Hermitian blocks),  X_b ≥ 0  (scalar blocks)
///
/// with the associated dual
///
///     maximize    Σ_i rhs_i y_i
///     subject to  Z_b = C_b − Σ_i y_i A_ib ⪰ 0.
///
/// Every coefficient matrix must be Hermitian. The solver adapter embeds each
/// Hermitian n×n block into a real symmetric 2n×2n block via
/// [[Re, −Im], [Im, Re]] and runs a real interior-point method; optimal values
/// are unchanged by the embedding.
namespace shadow::conic {

enum class BlockKind { Hermitian, Scalar };

struct BlockSpec {
  BlockKind kind;
  int size;  // matrix dimension; 1 for scalars
};

class Program {
 public:
  int add_hermitian_block(int size);
  int add_scalar_block();

  /// Returns the new constraint's index.
  int add_constraint(double rhs);

  /// Adds `coef` to the coefficient of block `block` in `constraint`.
  void add_coefficient(int constraint, int block, const CMatrix& coef);
  void add_scalar_coefficient(int constraint, int block, double coef);

  void add_objective(int block, const CMatrix& coef);
  void add_scalar_objective(int block, double coef);

  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  int num_constraints() const { return static_cast<int>(rhs_.size()); }
  const std::vector<BlockSpec>& blocks() const { return blocks_; }
  const std::vector<double>& rhs() const { return rhs_; }
  const std::vector<CMatrix>& objective() const { return objective_; }
  /// Non-zero (block, coefficient) terms of constraint i.
  const std::vector<std::pair<int, CMatrix>>& terms(int constraint) const { return terms_[constraint]; }

 private:
  void check_block(int block) const;

  std::vector<BlockSpec> blocks_;
  std::vector<CMatrix> objective_;
  std::vector<double> rhs_;
  std::vector<std::vector<std::pair<int, CMatrix>>> terms_;
};

enum class SolveStatus {
  Optimal,
  Infeasible,  // primal infeasible: Farkas certificate found
  Unbounded,   // primal unbounded (dual infeasible)
  NumericalTrouble,
};

const char* to_string(SolveStatus s);

struct SolverOptions {
  double feasibility_tol = 1e-8;
  double gap_tol = 1e-8;
  int max_iterations = 100;
  // Dual objective magnitude beyond which a diverging iterate is tested as an
  // infeasibility certificate.
  double infeasibility_cap = 1e6;
  // Relative tolerance for detecting dependent equality rows and for
  // checking that their right-hand sides are consistent.
  double presolve_tol = 1e-9;
  bool verbose = false;
};

struct Solution {
  SolveStatus status = SolveStatus::NumericalTrouble;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  std::vector<CMatrix> x;  // primal blocks (scalar blocks as 1×1)
  std::vector<CMatrix> z;  // dual slack blocks
  RVector y;               // one multiplier per constraint
  int iterations = 0;
  double primal_infeasibility = 0.0;  // ‖A(X) − rhs‖ / (1 + ‖rhs‖) over all rows
  double dual_infeasibility = 0.0;
  double relative_gap = 0.0;
  int dropped_constraints = 0;
  std::string message;
};

/// Primal-dual path-following solver (HKM search direction, Mehrotra
/// predictor-corrector, infeasible start). Linearly dependent constraints are
/// removed up front; an inconsistent dependent row is reported as Infeasible.
Solution solve(const Program& program, const SolverOptions& options = {});

}  // namespace shadow::conic
