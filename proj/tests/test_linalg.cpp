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


#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "shadow/errors.hpp"
#include "shadow/linalg.hpp"
#include "shadow/pauli.hpp"
#include "test_util.hpp"

using namespace shadow;
using shadow::testing::dist;
using shadow::testing::Rng;

TEST_CASE("kron of Paulis") {
  const CMatrix x = pauli_matrix('X');
  const CMatrix z = pauli_matrix('Z');
  CHECK(dist(kron(identity(2), identity(2)), identity(4)) == 0.0);

  CMatrix anti = CMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) anti(i, 3 - i) = 1.0;
  CHECK(dist(kron(x, x), anti) == 0.0);

  CMatrix zx = CMatrix::Zero(4, 4);
  zx.topLeftCorner(2, 2) = x;
  zx.bottomRightCorner(2, 2) = -x;
  CHECK(dist(kron(z, x), zx) == 0.0);
}

TEST_CASE("kron is associative, bilinear and multiplies traces") {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const CMatrix a = rng.ginibre(2, 2), b = rng.ginibre(3, 3), c = rng.ginibre(2, 2), a2 = rng.ginibre(2, 2);
    CHECK(dist(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-12);
    const Complex s(0.3, -1.2);
    CHECK(dist(kron(s * a + a2, b), s * kron(a, b) + kron(a2, b)) < 1e-12);
    CHECK(std::abs(kron(a, b).trace() - a.trace() * b.trace()) < 1e-12);
  }
}

TEST_CASE("partial trace") {
  Rng rng(12);
  const CMatrix rho = rng.density(2), sigma = rng.ginibre(2, 2);
  const std::array<int, 2> dims{2, 2};
  const std::array<int, 1> keep0{0}, keep1{1};
  CHECK(dist(partial_trace(kron(rho, sigma), dims, keep0), rho * sigma.trace()) < 1e-12);
  CHECK(dist(partial_trace(identity(4), dims, keep1), 2.0 * identity(2)) < 1e-12);

  CMatrix jid = CMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) jid(3 * i, 3 * j) = 1.0;
  }
  CHECK(dist(partial_trace(jid, dims, keep0), identity(2)) < 1e-12);

  const CMatrix m = rng.ginibre(12, 12);
  const std::array<int, 3> d3{2, 3, 2};
  const std::array<int, 3> all{0, 1, 2};
  CHECK(dist(partial_trace(m, d3, all), m) < 1e-12);
  const CMatrix scalar = partial_trace(m, d3, std::span<const int>());
  REQUIRE(scalar.rows() == 1);
  CHECK(std::abs(scalar(0, 0) - m.trace()) < 1e-12);

  // Linearity and ordering against a kron oracle.
  const CMatrix a = rng.ginibre(2, 2), b = rng.ginibre(3, 3), c = rng.ginibre(2, 2);
  const std::array<int, 2> keep02{0, 2};
  CHECK(dist(partial_trace(kron(kron(a, b), c), d3, keep02), kron(a, c) * b.trace()) < 1e-12);

  CHECK_THROWS_AS(partial_trace(identity(3), dims, keep0), DimensionError);
}

TEST_CASE("partial transpose and permutation on product operators") {
  Rng rng(13);
  const CMatrix a = rng.ginibre(2, 2), b = rng.ginibre(3, 3);
  const std::array<int, 2> dims{2, 3};
  const std::array<int, 1> sys1{1};
  CHECK(dist(partial_transpose(kron(a, b), dims, sys1), kron(a, b.transpose())) < 1e-12);
  const std::array<int, 2> swap{1, 0};
  CHECK(dist(permute_systems(kron(a, b), dims, swap), kron(b, a)) < 1e-12);
}

TEST_CASE("hermitian eigendecomposition") {
  const auto ez = hermitian_eig(HermitianOperator(pauli_matrix('Z')));
  CHECK(ez.values(0) == doctest::Approx(1.0));
  CHECK(ez.values(1) == doctest::Approx(-1.0));
  CHECK(std::abs(ez.vectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(ez.vectors(1, 1)) == doctest::Approx(1.0));

  const auto ex = hermitian_eig(HermitianOperator(pauli_matrix('X')));
  CHECK(ex.values(0) == doctest::Approx(1.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(ex.vectors.col(0).dot(CVector::Constant(2, r))) == doctest::Approx(1.0));

  Rng rng(14);
  for (int t = 0; t < 10; ++t) {
    const CMatrix h = rng.hermitian(5);
    const auto e = hermitian_eig(HermitianOperator(h));
    const CMatrix rec = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    CHECK(dist(rec, h) < 1e-9);
    CHECK(std::abs(e.values.sum() - h.trace().real()) < 1e-9);
    for (int i = 1; i < 5; ++i) CHECK(e.values(i - 1) >= e.values(i));
  }
}

TEST_CASE("numerical rank") {
  CHECK(numerical_rank(identity(4)) == 4);
  CHECK(numerical_rank(CMatrix::Zero(3, 3)) == 0);
  Rng rng(15);
  for (int t = 0; t < 10; ++t) {
    const int ra = rng.integer(1, 3), rb = rng.integer(1, 3);
    const CMatrix a = rng.ginibre(4, ra) * rng.ginibre(ra, 4);
    const CMatrix b = rng.ginibre(3, rb) * rng.ginibre(rb, 3);
    CHECK(numerical_rank(a) == ra);
    CHECK(numerical_rank(kron(a, b)) == ra * rb);
  }
}

TEST_CASE("frobenius inner product") {
  CHECK(frobenius_inner(identity(2), identity(2)) == Complex(2.0, 0.0));
  CHECK(std::abs(frobenius_inner(pauli_matrix('X'), pauli_matrix('Z'))) == 0.0);
  const double a = 0.37;
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(0, 0) = a;
  rho(1, 1) = 1.0 - a;
  CHECK(frobenius_inner(pauli_matrix('Z'), rho).real() == doctest::Approx(2 * a - 1));
  Rng rng(16);
  const CMatrix x = rng.ginibre(3, 3), y = rng.ginibre(3, 3);
  CHECK(std::abs(frobenius_inner(x, y) - std::conj(frobenius_inner(y, x))) < 1e-12);
  CHECK(std::abs(frobenius_inner(rng.hermitian(3), rng.hermitian(3)).imag()) < 1e-12);
  CHECK_THROWS_AS(frobenius_inner(identity(2), identity(3)), DimensionError);
}

TEST_CASE("validated operator types") {
  CMatrix h = pauli_matrix('Y');
  h(0, 1) += 1e-12;
  const HermitianOperator op(h);
  CHECK(max_abs(op.matrix() - op.matrix().adjoint()) == 0.0);
  CMatrix upper = CMatrix::Zero(2, 2);
  upper(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianOperator{upper}, InvalidArgument);

  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(HermitianOperator{bad}, InvalidArgument);

  CHECK_NOTHROW(DensityMatrix(identity(2) / 2.0));
  CHECK_THROWS_AS(DensityMatrix(identity(2)), InvalidArgument);
  CHECK_THROWS_AS(DensityMatrix(pauli_matrix('Z')), InvalidArgument);
  const DensityMatrix plus = DensityMatrix::pure(CVector::Ones(2));
  CHECK(plus.matrix()(0, 1).real() == doctest::Approx(0.5));
}

TEST_CASE("hermitian basis coordinates round trip") {
  Rng rng(17);
  for (int d : {1, 2, 3, 4}) {
    const auto basis = hermitian_basis(d);
    REQUIRE(static_cast<int>(basis.size()) == d * d);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const double expect = i == j ? 1.0 : 0.0;
        CHECK(std::abs(frobenius_inner(basis[i], basis[j]) - expect) < 1e-12);
      }
    }
    const CMatrix h = rng.hermitian(d);
    const RVector v = hermitian_to_real(h);
    CHECK(dist(real_to_hermitian(v, d), h) < 1e-12);
    for (int k = 0; k < d * d; ++k) CHECK(std::abs(v(k) - frobenius_inner(basis[k], h).real()) < 1e-12);
  }
}
