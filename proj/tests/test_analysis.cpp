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


#include <cmath>
#include <vector>

#include "doctest.h"
#include "shadow/analysis.hpp"
#include "shadow/errors.hpp"
#include "test_util.hpp"

using namespace shadow;
using shadow::testing::dist;
using shadow::testing::Rng;

namespace {

HermitianOperator herm(const CMatrix& m) { return HermitianOperator(m); }

CMatrix diag(std::initializer_list<double> v) {
  CMatrix m = CMatrix::Zero(static_cast<int>(v.size()), static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

void check_witness(const CMatrix& o, const CMatrix& q) {
  const HPMap w = construct_witness_retriever(herm(o), herm(q));
  CHECK(dist(apply_map(w, o), q) < 1e-8);
  CHECK(is_unit_scaling(w).has_value());
  CHECK(is_trace_scaling(adjoint(w)).has_value());
}

}  // namespace

TEST_CASE("case-study channels") {
  CHECK(effective_shadow_dimension(make_case_study(1)) == 2);
  CHECK(effective_shadow_dimension(make_case_study(2)) == 3);
  CHECK(shadow_destructivity(make_case_study(1)) == 1.0);
  CHECK(std::abs(shadow_destructivity(make_case_study(2)) - std::log2(4.0 / 3.0)) < 1e-12);
  CHECK_FALSE(is_invertible(make_case_study(1)));
  CHECK_FALSE(is_invertible(make_case_study(2)));
  const ShadowProfile s = shadow_profile(make_case_study(1));
  CHECK(s.d_s == 2);
  CHECK(s.dim == 2);
}

TEST_CASE("invertible and destroying channels") {
  Rng rng(41);
  CHECK(effective_shadow_dimension(make_unitary(rng.unitary(3))) == 9);
  CHECK(is_invertible(make_unitary(rng.unitary(2))));
  CHECK(shadow_destructivity(make_identity_channel(2)) == 0.0);
  CHECK(effective_shadow_dimension(make_depolarizing(0.7, 1)) == 4);
  CHECK(effective_shadow_dimension(make_depolarizing(1.0, 1)) == 1);
  CHECK_FALSE(is_invertible(make_depolarizing(1.0, 1)));
  CHECK(shadow_destructivity(make_depolarizing(1.0, 1)) == 2.0);
}

TEST_CASE("destructivity is additive under tensor products") {
  Rng rng(42);
  for (int t = 0; t < 10; ++t) {
    const KrausChannel a = t % 2 ? rng.channel(2, 2) : make_case_study(1);
    const KrausChannel b = t % 3 ? make_case_study(2) : rng.channel(2, 1);
    const double lhs = shadow_destructivity(tensor(a, b));
    CHECK(std::abs(lhs - shadow_destructivity(a) - shadow_destructivity(b)) < 1e-9);
  }
  const KrausChannel dep = make_depolarizing(0.2, 1);
  CHECK(effective_shadow_dimension(tensor(dep, dep)) == 16);
}

TEST_CASE("preservation") {
  const KrausChannel n1 = make_case_study(1);
  const PreservationReport x = check_preservation(n1, herm(pauli_matrix('X')));
  CHECK(x.preserved);
  REQUIRE(x.witness_q.has_value());
  CHECK(dist(x.witness_q->matrix(), pauli_matrix('X')) < 1e-10);
  CHECK(x.residual < 1e-12);

  const PreservationReport z = check_preservation(n1, herm(pauli_matrix('Z')));
  CHECK_FALSE(z.preserved);
  CHECK_FALSE(z.witness_q.has_value());
  CHECK(z.residual == doctest::Approx(std::sqrt(2.0)));

  Rng rng(43);
  const CMatrix o = rng.hermitian(3);
  const PreservationReport id = check_preservation(make_identity_channel(3), herm(o));
  CHECK(id.preserved);
  CHECK(dist(id.witness_q->matrix(), o) < 1e-10);

  for (int t = 0; t < 20; ++t) {
    const KrausChannel c = rng.channel(2, rng.integer(1, 4));
    const CMatrix q = rng.hermitian(2);
    const CMatrix target = apply_map(adjoint(to_hp_map(c)), q);
    const PreservationReport r = check_preservation(c, herm(target));
    CHECK(r.preserved);
    CHECK(dist(apply_map(adjoint(to_hp_map(c)), r.witness_q->matrix()), target) <= 1e-7 * std::max(1.0, target.norm()));
  }
  CHECK_THROWS_AS(check_preservation(n1, herm(identity(3))), DimensionError);
}

TEST_CASE("witness retriever cases") {
  Rng rng(44);
  SUBCASE("rank deficient with trace") {
    check_witness(diag({1.0, 0.0}), rng.hermitian(2));
    check_witness(diag({2.0, -0.5, 0.0}), rng.hermitian(3));
  }
  SUBCASE("rank deficient and traceless") {
    check_witness(diag({1.0, -1.0, 0.0}), rng.hermitian(3));
    const CMatrix u = rng.unitary(4);
    check_witness(u * diag({0.4, 0.3, -0.7, 0.0}) * u.adjoint(), rng.hermitian(4));
  }
  SUBCASE("full rank") {
    check_witness(pauli_matrix('Z'), pauli_matrix('Z'));
    check_witness(rng.hermitian(3), rng.hermitian(3));
    const CMatrix u = rng.unitary(3);
    check_witness(u * diag({1.0, -2.0, -2.0}) * u.adjoint(), rng.hermitian(3));
    const HPMap w = construct_witness_retriever(herm(pauli_matrix('Z')), herm(pauli_matrix('Z')));
    const CMatrix img = apply_map(w, identity(2));
    CHECK(std::abs(img(0, 1)) < 1e-12);
    CHECK(std::abs(img(0, 0) - img(1, 1)) < 1e-12);
  }
  SUBCASE("multiple of identity") {
    const HPMap w = construct_witness_retriever(herm(2.5 * identity(2)), herm(rng.hermitian(2)));
    CHECK(dist(w.matrix(), to_hp_map(make_identity_channel(2)).matrix()) < 1e-14);
  }
  CHECK_THROWS_AS(construct_witness_retriever(herm(CMatrix::Zero(2, 2)), herm(identity(2))), InvalidArgument);
}

TEST_CASE("witness chain recovers the observable") {
  Rng rng(45);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + t % 2;
    const KrausChannel c = rng.channel(d, rng.integer(1, 3));
    const HPMap dag = adjoint(to_hp_map(c));
    const CMatrix o = apply_map(dag, rng.hermitian(d));
    const PreservationReport r = check_preservation(c, herm(o));
    REQUIRE(r.preserved);
    const HPMap w = construct_witness_retriever(herm(o), *r.witness_q);
    CHECK(dist(apply_map(dag, apply_map(w, o)), o) <= 1e-7);
  }
}
