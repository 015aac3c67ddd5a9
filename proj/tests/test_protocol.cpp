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


#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "shadow/errors.hpp"
#include "shadow/protocol.hpp"
#include "shadow/retrieving.hpp"
#include "test_util.hpp"

using namespace shadow;
using shadow::testing::Rng;

namespace {

DensityMatrix plus_state() { return DensityMatrix::pure(CVector::Ones(2)); }

DensityMatrix zero_state() {
  CVector k = CVector::Zero(2);
  k(0) = 1.0;
  return DensityMatrix::pure(k);
}

HermitianOperator pauli_obs(char c) { return HermitianOperator(pauli_matrix(c)); }

}  // namespace

TEST_CASE("sampling rounds") {
  CHECK(sampling_rounds(1.0, 0.01, 0.01) == 105967);
  CHECK(sampling_rounds(1.0, 1.0, 2.0 / std::exp(2.0)) == 4);
  const double a = sampling_rounds_real(1.3, 0.02, 0.05);
  CHECK(sampling_rounds_real(2.6, 0.02, 0.05) == doctest::Approx(4.0 * a).epsilon(1e-14));
  CHECK(sampling_rounds_real(1.0, 0.1, 0.5, 2.0) == doctest::Approx(200.0 * 2.0));
  CHECK_THROWS_AS(sampling_rounds(1.0, 0.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(sampling_rounds(1.0, 0.1, 1.0), InvalidArgument);
}

TEST_CASE("noiseless protocol is exact") {
  const KrausChannel id = make_identity_channel(2);
  const RetrieverDecomposition r = identity_retriever(2);
  ProtocolConfig cfg;
  cfg.epsilon_hat = 0.1;
  cfg.delta = 0.1;
  for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
    cfg.seed = seed;
    const EstimateReport rep = simulate_protocol(zero_state(), id, r, pauli_obs('Z'), cfg);
    CHECK(rep.xi == 1.0);
    CHECK(*rep.abs_error == 0.0);
    CHECK(rep.gamma == 1.0);
  }
  CHECK(exact_recovery(zero_state(), id, r, pauli_obs('Z')) == doctest::Approx(1.0));
}

TEST_CASE("estimator mean equals exact recovery") {
  Rng rng(61);
  for (double eps : {0.1, 0.5}) {
    for (char c : {'X', 'Y', 'Z'}) {
      const KrausChannel gad = make_gad(eps, 0.3);
      const AnalyticCost a = analytic_gad_cost(eps, 0.3, c);
      for (int t = 0; t < 10; ++t) {
        const DensityMatrix rho(rng.density(2));
        const ProtocolSampler s(rho, gad, a.decomposition, pauli_obs(c));
        const double exact = exact_recovery(rho, gad, a.decomposition, pauli_obs(c));
        CHECK(std::abs(s.mean() - exact) < 1e-12);
        CHECK(std::abs(exact - (rho.matrix() * pauli_matrix(c)).trace().real()) < 1e-10);
      }
    }
  }
  PauliProbabilities two{{PauliString("II"), 0.8}, {PauliString("XY"), 0.1}, {PauliString("ZI"), 0.1}};
  const HermitianOperator xz(PauliString("XZ").matrix());
  const AnalyticCost a = analytic_pauli_cost(two, PauliString("XZ"));
  for (int t = 0; t < 50; ++t) {
    const DensityMatrix rho(rng.density(4));
    CHECK(std::abs(exact_recovery(rho, make_mixed_pauli(two), a.decomposition, xz) -
                   (rho.matrix() * xz.matrix()).trace().real()) < 1e-10);
  }
}

TEST_CASE("protocol is deterministic and bounded") {
  const AnalyticCost a = analytic_gad_cost(0.3, 1.0, 'X');
  ProtocolConfig cfg;
  cfg.seed = 1234;
  cfg.rounds_override = 2000;
  const EstimateReport r1 = simulate_protocol(plus_state(), make_gad(0.3, 1.0), a.decomposition, pauli_obs('X'), cfg);
  const EstimateReport r2 = simulate_protocol(plus_state(), make_gad(0.3, 1.0), a.decomposition, pauli_obs('X'), cfg);
  CHECK(r1.xi == r2.xi);
  CHECK(std::abs(r1.xi) <= r1.gamma);
  CHECK(r1.rounds == 2000);
  cfg.seed = 1235;
  const EstimateReport r3 = simulate_protocol(plus_state(), make_gad(0.3, 1.0), a.decomposition, pauli_obs('X'), cfg);
  CHECK(r3.xi != r1.xi);
}

TEST_CASE("estimates concentrate around the truth") {
  const double eps = 0.3;
  const AnalyticCost a = analytic_gad_cost(eps, 1.0, 'X');
  const ProtocolSampler s(plus_state(), make_gad(eps, 1.0), a.decomposition, pauli_obs('X'));
  const int runs = 200;
  const std::int64_t rounds = 400;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < runs; ++i) {
    const double xi = s.estimate(rounds, StreamRng::derive_seed(7, i));
    sum += xi;
    sq += xi * xi;
  }
  const double mean = sum / runs;
  const double var = sq / runs - mean * mean;
  const double bound = a.gamma * a.gamma / rounds;
  CHECK(std::abs(mean - 1.0) < 3.0 * std::sqrt(bound / runs));
  CHECK(var <= bound * 1.3);
}

TEST_CASE("coverage") {
  ProtocolConfig cfg;
  cfg.epsilon_hat = 0.1;
  cfg.delta = 0.1;
  cfg.seed = 5;
  const CoverageResult id =
      coverage_trial(zero_state(), make_identity_channel(2), identity_retriever(2), pauli_obs('Z'), cfg, 100);
  CHECK(id.failure_fraction == 0.0);

  const AnalyticCost a = analytic_gad_cost(0.3, 1.0, 'X');
  ProtocolConfig wide = cfg;
  wide.epsilon_hat = 2.0 * a.gamma;
  wide.rounds_override = 3;
  const CoverageResult loose =
      coverage_trial(plus_state(), make_gad(0.3, 1.0), a.decomposition, pauli_obs('X'), wide, 50);
  CHECK(loose.trials == 50);
  CHECK(loose.failures == 0);

  cfg.epsilon_hat = 0.1;
  cfg.delta = 0.1;
  const CoverageResult c = coverage_trial(plus_state(), make_gad(0.3, 1.0), a.decomposition, pauli_obs('X'), cfg, 100);
  CHECK(c.failure_fraction <= 0.1 + 3.0 * std::sqrt(0.1 * 0.9 / 100));
}

TEST_CASE("observable normalization") {
  const HermitianOperator big(2.0 * pauli_matrix('Z'));
  ProtocolConfig cfg;
  cfg.rounds_override = 10;
  CHECK_THROWS_AS(simulate_protocol(zero_state(), make_identity_channel(2), identity_retriever(2), big, cfg),
                  ObservableNotNormalized);
  const EstimateReport r =
      simulate_protocol_rescaled(zero_state(), make_identity_channel(2), identity_retriever(2), big, cfg);
  CHECK(r.xi == doctest::Approx(2.0));
  CHECK(*r.true_value == doctest::Approx(2.0));
  ProtocolConfig bad;
  bad.epsilon_hat = 0.0;
  CHECK_THROWS_AS(simulate_protocol(zero_state(), make_identity_channel(2), identity_retriever(2), pauli_obs('Z'), bad),
                  InvalidArgument);
}

TEST_CASE("stream seeds are distinct") {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.push_back(StreamRng::derive_seed(42, i));
  std::sort(seeds.begin(), seeds.end());
  CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
  StreamRng a(3), b(3);
  for (int i = 0; i < 10; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
