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

#include "shadow/conic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "shadow/errors.hpp"

namespace shadow::conic {

// ---------------------------------------------------------------------------
// Program

void Program::check_block(int block) const {
  if (block < 0 || block >= num_blocks()) throw InvalidArgument("conic program: block index out of range");
}

int Program::add_hermitian_block(int size) {
  if (size <= 0) throw InvalidArgument("conic program: block size must be positive");
  blocks_.push_back({BlockKind::Hermitian, size});
  objective_.push_back(CMatrix::Zero(size, size));
  return num_blocks() - 1;
}

int Program::add_scalar_block() {
  blocks_.push_back({BlockKind::Scalar, 1});
  objective_.push_back(CMatrix::Zero(1, 1));
  return num_blocks() - 1;
}

int Program::add_constraint(double rhs) {
  rhs_.push_back(rhs);
  terms_.emplace_back();
  return num_constraints() - 1;
}

void Program::add_coefficient(int constraint, int block, const CMatrix& coef) {
  check_block(block);
  if (constraint < 0 || constraint >= num_constraints()) throw InvalidArgument("conic program: bad constraint index");
  const int n = blocks_[block].size;
  if (coef.rows() != n || coef.cols() != n) throw DimensionError("conic program: coefficient has the wrong size");
  if (max_abs(coef - coef.adjoint()) > 1e-10 * std::max(1.0, max_abs(coef))) {
    throw InvalidArgument("conic program: coefficient matrices must be Hermitian");
  }
  for (auto& [b, m] : terms_[constraint]) {
    if (b == block) {
      m += coef;
      return;
    }
  }
  terms_[constraint].emplace_back(block, coef);
}

void Program::add_scalar_coefficient(int constraint, int block, double coef) {
  add_coefficient(constraint, block, CMatrix::Constant(1, 1, coef));
}

void Program::add_objective(int block, const CMatrix& coef) {
  check_block(block);
  const int n = blocks_[block].size;
  if (coef.rows() != n || coef.cols() != n) throw DimensionError("conic program: objective has the wrong size");
  objective_[block] += coef;
}

void Program::add_scalar_objective(int block, double coef) { add_objective(block, CMatrix::Constant(1, 1, coef)); }

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "Optimal";
    case SolveStatus::Infeasible:
      return "Infeasible";
    case SolveStatus::Unbounded:
      return "Unbounded";
    case SolveStatus::NumericalTrouble:
      return "NumericalTrouble";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Real symmetric standard form

using Blocks = std::vector<RMatrix>;

struct Term {
  int row;
  RMatrix coef;
};

struct RealProblem {
  std::vector<int> sizes;
  Blocks c;
  // by_block[b] lists the rows with a coefficient in block b.
  std::vector<std::vector<Term>> by_block;
  RVector b;

  int rows() const { return static_cast<int>(b.size()); }
};

RMatrix embed(const CMatrix& h) {
  const Eigen::Index n = h.rows();
  RMatrix r(2 * n, 2 * n);
  r.topLeftCorner(n, n) = h.real();
  r.topRightCorner(n, n) = -h.imag();
  r.bottomLeftCorner(n, n) = h.imag();
  r.bottomRightCorner(n, n) = h.real();
  return r;
}

// Structured part of a real 2n×2n matrix read back as an n×n Hermitian matrix.
CMatrix unembed(const RMatrix& w) {
  const Eigen::Index n = w.rows() / 2;
  CMatrix out(n, n);
  out.real() = (w.topLeftCorner(n, n) + w.bottomRightCorner(n, n)) / 2.0;
  out.imag() = (w.bottomLeftCorner(n, n) - w.topRightCorner(n, n)) / 2.0;
  return out;
}

RMatrix real_coefficient(const BlockSpec& spec, const CMatrix& m) {
  if (spec.kind == BlockKind::Scalar) return RMatrix::Constant(1, 1, m(0, 0).real());
  return embed(m) / 2.0;
}

double inner(const RMatrix& a, const RMatrix& b) { return a.cwiseProduct(b).sum(); }

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += inner(a[k], b[k]);
  return s;
}

double frob(const Blocks& a) { return std::sqrt(inner(a, a)); }

RMatrix sym(const RMatrix& m) { return (m + m.transpose()) / 2.0; }

// Largest α with X + α dX ⪰ 0 (infinity when dX ⪰ 0).
double max_step(const RMatrix& x, const RMatrix& dx) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (x.rows() == 1) return dx(0, 0) < 0.0 ? -x(0, 0) / dx(0, 0) : kInf;
  Eigen::LLT<RMatrix> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  const auto l = llt.matrixL();
  RMatrix t = l.solve(dx);
  t = l.solve(t.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym(t), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  return lmin >= 0.0 ? kInf : -1.0 / lmin;
}

double min_eig(const RMatrix& m) {
  if (m.rows() == 1) return m(0, 0);
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

struct ReducedProblem {
  RealProblem problem;
  std::vector<int> original_row;  // reduced row -> original row
  std::vector<double> row_scale;  // reduced coefficient = original / scale
  int dropped = 0;
  bool inconsistent = false;
  double inconsistency = 0.0;
};

// Normalizes rows, removes numerically dependent ones and checks that their
// right-hand sides are implied by the kept rows.
ReducedProblem presolve(const RealProblem& full, const SolverOptions& opt) {
  const int m = full.rows();
  std::vector<Eigen::Index> offset(full.sizes.size() + 1, 0);
  for (std::size_t k = 0; k < full.sizes.size(); ++k) {
    offset[k + 1] = offset[k] + static_cast<Eigen::Index>(full.sizes[k]) * full.sizes[k];
  }
  RMatrix a = RMatrix::Zero(m, offset.back());
  for (std::size_t k = 0; k < full.by_block.size(); ++k) {
    for (const Term& t : full.by_block[k]) {
      a.row(t.row).segment(offset[k], t.coef.size()) += t.coef.reshaped().transpose();
    }
  }

  ReducedProblem out;
  RVector norms = a.rowwise().norm();
  const double bscale = std::max(1.0, full.b.cwiseAbs().maxCoeff());
  std::vector<int> nonzero;
  for (int i = 0; i < m; ++i) {
    if (norms(i) > 0.0) {
      nonzero.push_back(i);
    } else if (std::abs(full.b(i)) > opt.feasibility_tol * bscale) {
      out.inconsistent = true;
      out.inconsistency = std::max(out.inconsistency, std::abs(full.b(i)));
    }
  }
  const int mz = static_cast<int>(nonzero.size());
  RMatrix an(mz, a.cols());
  RVector bn(mz);
  for (int r = 0; r < mz; ++r) {
    an.row(r) = a.row(nonzero[r]) / norms(nonzero[r]);
    bn(r) = full.b(nonzero[r]) / norms(nonzero[r]);
  }

  std::vector<int> kept;
  if (mz > 0) {
    Eigen::ColPivHouseholderQR<RMatrix> qr(an.transpose());
    qr.setThreshold(opt.presolve_tol);
    const int rank = static_cast<int>(qr.rank());
    for (int r = 0; r < rank; ++r) kept.push_back(static_cast<int>(qr.colsPermutation().indices()(r)));
    std::sort(kept.begin(), kept.end());
    if (rank < mz) {
      RMatrix ak(rank, an.cols());
      RVector bk(rank);
      for (int r = 0; r < rank; ++r) {
        ak.row(r) = an.row(kept[r]);
        bk(r) = bn(kept[r]);
      }
      const RMatrix gram = ak * ak.transpose();
      const RVector x0 = ak.transpose() * gram.ldlt().solve(bk);
      const double res = (an * x0 - bn).cwiseAbs().maxCoeff();
      const double scale = std::max(1.0, bn.cwiseAbs().maxCoeff());
      if (res > opt.feasibility_tol * scale) {
        out.inconsistent = true;
        out.inconsistency = std::max(out.inconsistency, res);
      }
    }
  }

  const std::size_t nb = full.sizes.size();
  RealProblem& p = out.problem;
  p.sizes = full.sizes;
  p.c = full.c;
  p.by_block.assign(nb, {});
  p.b.resize(static_cast<Eigen::Index>(kept.size()));
  std::vector<int> reduced_index(m, -1);
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const int orig = nonzero[kept[r]];
    reduced_index[orig] = static_cast<int>(r);
    out.original_row.push_back(orig);
    out.row_scale.push_back(norms(orig));
    p.b(static_cast<Eigen::Index>(r)) = full.b(orig) / norms(orig);
  }
  for (std::size_t k = 0; k < nb; ++k) {
    for (const Term& t : full.by_block[k]) {
      const int r = reduced_index[t.row];
      if (r >= 0) p.by_block[k].push_back({r, t.coef / norms(t.row)});
    }
  }
  out.dropped = m - static_cast<int>(kept.size());
  return out;
}

// ---------------------------------------------------------------------------
// Interior-point iteration

struct Iterate {
  Blocks x, z;
  RVector y;
};

class InteriorPoint {
 public:
  InteriorPoint(const RealProblem& p, const SolverOptions& opt) : p_(p), opt_(opt) {}

  SolveStatus run(Iterate& it, int& iterations, std::string& message);

 private:
  Blocks apply_adjoint(const RVector& y) const;  // Σ_i y_i A_i
  RVector apply_forward(const Blocks& x) const;  // (⟨A_i, X⟩)_i
  bool certificate_of_infeasibility(const Iterate& it, double dobj) const;

  const RealProblem& p_;
  const SolverOptions& opt_;
};

Blocks InteriorPoint::apply_adjoint(const RVector& y) const {
  Blocks out(p_.sizes.size());
  for (std::size_t k = 0; k < p_.sizes.size(); ++k) {
    out[k] = RMatrix::Zero(p_.sizes[k], p_.sizes[k]);
    for (const Term& t : p_.by_block[k]) out[k] += y(t.row) * t.coef;
  }
  return out;
}

RVector InteriorPoint::apply_forward(const Blocks& x) const {
  RVector out = RVector::Zero(p_.rows());
  for (std::size_t k = 0; k < p_.sizes.size(); ++k) {
    for (const Term& t : p_.by_block[k]) out(t.row) += inner(t.coef, x[k]);
  }
  return out;
}

// y/(bᵀy) with −Aᵀ(y/(bᵀy)) ⪰ 0 proves the primal infeasible.
bool InteriorPoint::certificate_of_infeasibility(const Iterate& it, double dobj) const {
  if (!(dobj > 0.0)) return false;
  const Blocks aty = apply_adjoint(it.y / dobj);
  double worst = 0.0;
  for (const RMatrix& m : aty) worst = std::min(worst, min_eig(-m));
  return worst >= -1e3 * opt_.feasibility_tol;
}

SolveStatus InteriorPoint::run(Iterate& it, int& iterations, std::string& message) {
  const std::size_t nb = p_.sizes.size();
  const int m = p_.rows();
  double nu = 0.0;
  for (int s : p_.sizes) nu += s;
  const double bnorm = p_.b.norm();
  const double cnorm = frob(p_.c);

  // Starting point scaled to the data.
  double max_a = 0.0;
  std::vector<double> block_anorm(nb, 0.0);
  for (std::size_t k = 0; k < nb; ++k) {
    for (const Term& t : p_.by_block[k]) block_anorm[k] = std::max(block_anorm[k], t.coef.norm());
    max_a = std::max(max_a, block_anorm[k]);
  }
  const double bmax = m > 0 ? p_.b.cwiseAbs().maxCoeff() : 0.0;
  it.x.resize(nb);
  it.z.resize(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    const double n = p_.sizes[k];
    const double xi = std::max({10.0, std::sqrt(n), std::sqrt(n) * (1.0 + bmax) / (1.0 + block_anorm[k])});
    const double eta = std::max({10.0, std::sqrt(n), max_a, p_.c[k].norm()});
    it.x[k] = xi * RMatrix::Identity(p_.sizes[k], p_.sizes[k]);
    it.z[k] = eta * RMatrix::Identity(p_.sizes[k], p_.sizes[k]);
  }
  it.y = RVector::Zero(m);

  for (iterations = 0; iterations <= opt_.max_iterations; ++iterations) {
    const RVector rp = p_.b - apply_forward(it.x);
    const Blocks aty = apply_adjoint(it.y);
    Blocks rd(nb);
    for (std::size_t k = 0; k < nb; ++k) rd[k] = p_.c[k] - aty[k] - it.z[k];
    const double pobj = inner(p_.c, it.x);
    const double dobj = it.y.dot(p_.b);
    const double xz = inner(it.x, it.z);
    const double mu = xz / nu;
    const double relp = rp.norm() / (1.0 + bnorm);
    const double reld = frob(rd) / (1.0 + cnorm);
    const double denom = 1.0 + std::abs(pobj) + std::abs(dobj);
    const double relgap = std::max(std::abs(pobj - dobj), xz) / denom;

    if (opt_.verbose) {
      std::fprintf(stderr, "ipm %3d  pobj % .10e  dobj % .10e  pinf %.2e  dinf %.2e  gap %.2e\n", iterations, pobj,
                   dobj, relp, reld, relgap);
    }
    if (relp <= opt_.feasibility_tol && reld <= opt_.feasibility_tol && relgap <= opt_.gap_tol) {
      message = "converged";
      return SolveStatus::Optimal;
    }
    if (dobj > opt_.infeasibility_cap && certificate_of_infeasibility(it, dobj)) {
      message = "dual objective diverged along an improving ray";
      return SolveStatus::Infeasible;
    }
    if (pobj < -opt_.infeasibility_cap && relp * (1.0 + bnorm) / std::abs(pobj) < opt_.feasibility_tol) {
      message = "primal objective diverged along a recession direction";
      return SolveStatus::Unbounded;
    }
    if (iterations == opt_.max_iterations) break;

    Blocks zinv(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      Eigen::LLT<RMatrix> llt(it.z[k]);
      if (llt.info() != Eigen::Success) {
        message = "dual slack lost positive definiteness";
        return SolveStatus::NumericalTrouble;
      }
      zinv[k] = llt.solve(RMatrix::Identity(p_.sizes[k], p_.sizes[k]));
    }

    // Schur complement M_ij = ⟨A_i, Z⁻¹ A_j X⟩.
    RMatrix schur = RMatrix::Zero(m, m);
    for (std::size_t k = 0; k < nb; ++k) {
      const auto& terms = p_.by_block[k];
      for (const Term& tj : terms) {
        const RMatrix g = zinv[k] * tj.coef * it.x[k];
        for (const Term& ti : terms) schur(ti.row, tj.row) += inner(ti.coef, g);
      }
    }
    schur = (schur + schur.transpose()).eval() / 2.0;
    Eigen::LLT<RMatrix> schur_llt(schur);
    if (schur_llt.info() != Eigen::Success) {
      const double reg = 1e-13 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
      schur.diagonal().array() += reg;
      schur_llt.compute(schur);
      if (schur_llt.info() != Eigen::Success) {
        message = "Schur complement is not positive definite";
        return SolveStatus::NumericalTrouble;
      }
    }

    // Z dX + dZ X = target − Z X − corr, A(dX) = rp, Aᵀdy + dZ = rd.
    auto direction = [&](double sigma_mu, const Blocks* corr, Blocks& dx, RVector& dy, Blocks& dz) {
      Blocks t(nb);
      for (std::size_t k = 0; k < nb; ++k) {
        t[k] = sigma_mu * zinv[k] - it.x[k] - zinv[k] * rd[k] * it.x[k];
        if (corr) t[k] -= zinv[k] * (*corr)[k];
      }
      const RVector rhs = rp - apply_forward(t);
      dy = schur_llt.solve(rhs);
      const Blocks atdy = apply_adjoint(dy);
      dx.resize(nb);
      dz.resize(nb);
      for (std::size_t k = 0; k < nb; ++k) {
        dz[k] = rd[k] - atdy[k];
        dx[k] = sym(t[k] + zinv[k] * atdy[k] * it.x[k]);
      }
    };
    auto step_lengths = [&](const Blocks& dx, const Blocks& dz, double& ap, double& ad) {
      ap = std::numeric_limits<double>::infinity();
      ad = ap;
      for (std::size_t k = 0; k < nb; ++k) {
        ap = std::min(ap, max_step(it.x[k], dx[k]));
        ad = std::min(ad, max_step(it.z[k], dz[k]));
      }
    };

    Blocks dx, dz;
    RVector dy;
    direction(0.0, nullptr, dx, dy, dz);
    double ap, ad;
    step_lengths(dx, dz, ap, ad);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);
    double xz_aff = 0.0;
    for (std::size_t k = 0; k < nb; ++k) xz_aff += inner(it.x[k] + ap * dx[k], it.z[k] + ad * dz[k]);
    const double sigma = std::clamp(std::pow(std::max(xz_aff, 0.0) / xz, 3.0), 0.0, 1.0);

    Blocks corr(nb);
    for (std::size_t k = 0; k < nb; ++k) corr[k] = dz[k] * dx[k];
    direction(sigma * mu, &corr, dx, dy, dz);
    step_lengths(dx, dz, ap, ad);
    const double tau = 0.98;
    ap = std::min(1.0, tau * ap);
    ad = std::min(1.0, tau * ad);
    if (ap < 1e-12 && ad < 1e-12) {
      message = "step length collapsed";
      return SolveStatus::NumericalTrouble;
    }
    for (std::size_t k = 0; k < nb; ++k) {
      it.x[k] += ap * dx[k];
      it.z[k] += ad * dz[k];
    }
    it.y += ad * dy;
  }
  if (certificate_of_infeasibility(it, it.y.dot(p_.b)) && it.y.dot(p_.b) > 1e3) {
    message = "iteration limit reached; iterate certifies infeasibility";
    return SolveStatus::Infeasible;
  }
  message = "iteration limit reached";
  return SolveStatus::NumericalTrouble;
}

}  // namespace

Solution solve(const Program& program, const SolverOptions& options) {
  const auto& specs = program.blocks();
  const std::size_t nb = specs.size();
  const int m = program.num_constraints();

  RealProblem full;
  full.sizes.resize(nb);
  full.c.resize(nb);
  full.by_block.assign(nb, {});
  for (std::size_t k = 0; k < nb; ++k) {
    full.sizes[k] = specs[k].kind == BlockKind::Hermitian ? 2 * specs[k].size : 1;
    full.c[k] = real_coefficient(specs[k], program.objective()[k]);
  }
  full.b = Eigen::Map<const RVector>(program.rhs().data(), m);
  for (int i = 0; i < m; ++i) {
    for (const auto& [blk, coef] : program.terms(i)) {
      full.by_block[blk].push_back({i, real_coefficient(specs[blk], coef)});
    }
  }

  Solution sol;
  const ReducedProblem reduced = presolve(full, options);
  sol.dropped_constraints = reduced.dropped;
  sol.y = RVector::Zero(m);
  sol.x.assign(nb, CMatrix());
  sol.z.assign(nb, CMatrix());
  if (reduced.inconsistent) {
    sol.status = SolveStatus::Infeasible;
    sol.message = "equality constraints are inconsistent (residual " + std::to_string(reduced.inconsistency) + ")";
    sol.primal_infeasibility = reduced.inconsistency;
    return sol;
  }

  Iterate it;
  InteriorPoint ipm(reduced.problem, options);
  sol.status = ipm.run(it, sol.iterations, sol.message);

  for (std::size_t r = 0; r < reduced.original_row.size(); ++r) {
    sol.y(reduced.original_row[r]) = it.y(static_cast<Eigen::Index>(r)) / reduced.row_scale[r];
  }
  for (std::size_t k = 0; k < nb; ++k) {
    if (specs[k].kind == BlockKind::Hermitian) {
      sol.x[k] = unembed(it.x[k]);
      sol.z[k] = 2.0 * unembed(it.z[k]);
    } else {
      sol.x[k] = it.x[k].cast<Complex>();
      sol.z[k] = it.z[k].cast<Complex>();
    }
  }

  // Report measures against the original, unreduced program.
  double pobj = 0.0;
  for (std::size_t k = 0; k < nb; ++k) pobj += (program.objective()[k].cwiseProduct(sol.x[k].conjugate())).sum().real();
  double res2 = 0.0, rhs2 = 0.0;
  for (int i = 0; i < m; ++i) {
    double lhs = 0.0;
    for (const auto& [blk, coef] : program.terms(i)) lhs += (coef.cwiseProduct(sol.x[blk].conjugate())).sum().real();
    res2 += (lhs - program.rhs()[i]) * (lhs - program.rhs()[i]);
    rhs2 += program.rhs()[i] * program.rhs()[i];
  }
  double dres2 = 0.0, c2 = 0.0;
  for (std::size_t k = 0; k < nb; ++k) {
    CMatrix zk = program.objective()[k];
    c2 += zk.squaredNorm();
    for (int i = 0; i < m; ++i) {
      for (const auto& [blk, coef] : program.terms(i)) {
        if (blk == static_cast<int>(k)) zk -= sol.y(i) * coef;
      }
    }
    dres2 += (zk - sol.z[k]).squaredNorm();
  }
  sol.primal_objective = pobj;
  sol.dual_objective = sol.y.dot(Eigen::Map<const RVector>(program.rhs().data(), m));
  sol.primal_infeasibility = std::sqrt(res2) / (1.0 + std::sqrt(rhs2));
  sol.dual_infeasibility = std::sqrt(dres2) / (1.0 + std::sqrt(c2));
  sol.relative_gap = std::abs(sol.primal_objective - sol.dual_objective) /
                     (1.0 + std::abs(sol.primal_objective) + std::abs(sol.dual_objective));
  return sol;
}

}  // namespace shadow::conic
