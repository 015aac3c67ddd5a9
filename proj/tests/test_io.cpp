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
#include <filesystem>

#include "doctest.h"
#include "shadow/io.hpp"
#include "shadow/protocol.hpp"
#include "test_util.hpp"

using namespace shadow;
using namespace shadow::io;
using shadow::testing::dist;
using shadow::testing::Rng;

namespace {

std::string data(const char* name) { return std::string(SHADOW_TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("matrix JSON round trip") {
  Rng rng(3);
  const CMatrix m = rng.ginibre(3, 2);
  CHECK(dist(matrix_from_json(matrix_to_json(m)), m) == 0.0);
  CHECK(matrix_from_json(json::parse("[[1, 2], [3, 4]]"))(1, 0) == Complex(3.0, 0.0));
  CHECK(matrix_from_json(json::parse("[[[0, 1]]]"))(0, 0) == Complex(0.0, 1.0));
  CHECK_THROWS_AS(matrix_from_json(json::parse("[[1, 2], [3]]")), InputError);
  CHECK_THROWS_AS(matrix_from_json(json::parse("[[\"a\"]]")), InputError);
  CHECK_THROWS_AS(matrix_from_json(json::parse("[]")), InputError);
}

TEST_CASE("channel families from JSON") {
  const ChannelSpec gad = channel_from_json(load_json_file(data("gad_036.json")));
  CHECK(gad.type == "gad");
  CHECK(gad.epsilon == 0.36);
  CHECK(dist(kraus_to_choi(gad.channel).matrix(), kraus_to_choi(make_gad(0.36, 0.3)).matrix()) < 1e-14);

  const ChannelSpec dep = channel_from_json(json::parse(R"({"type": "depolarizing", "epsilon": 0.2, "qubits": 2})"));
  CHECK(dep.channel.dim() == 4);
  REQUIRE(dep.probs.has_value());
  CHECK(dep.probs->size() == 16);

  const ChannelSpec mp = channel_from_json(json::parse(R"({"type": "mixed_pauli", "probs": {"I": 0.9, "z": 0.1}})"));
  CHECK(mp.qubits == 1);
  CHECK(mp.probs->at(PauliString("Z")) == 0.1);

  const ChannelSpec id = channel_from_json(load_json_file(data("identity.json")));
  CHECK(id.type == "kraus");
  CHECK(dist(kraus_to_choi(id.channel).matrix(), kraus_to_choi(make_identity_channel(2)).matrix()) == 0.0);

  CHECK(channel_from_json(load_json_file(data("case_study1.json"))).channel.dim() == 2);
  CHECK(channel_from_json(json::parse(R"({"type": "identity", "dim": 3})")).channel.dim() == 3);
  CHECK(channel_from_json(json::parse(R"({"type": "unitary", "matrix": [[0, 1], [1, 0]]})")).channel.dim() == 2);
}

TEST_CASE("channel JSON errors") {
  CHECK_THROWS_AS(load_json_file(data("malformed.json")), InputError);
  CHECK_THROWS_AS(load_json_file(data("does_not_exist.json")), InputError);
  CHECK_THROWS_AS(channel_from_json(json::parse(R"({"type": "bogus"})")), InputError);
  CHECK_THROWS_AS(channel_from_json(json::parse(R"({"type": "gad", "epsilon": 0.1})")), InputError);
  CHECK_THROWS_AS(channel_from_json(json::parse(R"({"dim": 3, "kraus": [[[1, 0], [0, 1]]]})")), InputError);
  CHECK_THROWS_AS(channel_from_json(json::parse(R"({"kraus": [[[1, 0], [0, 0.5]]]})")), NotTracePreserving);
  CHECK_THROWS_AS(channel_from_json(json::parse(R"({"type": "gad", "epsilon": 1.5, "p": 0.2})")), InvalidArgument);
  CHECK_THROWS_AS(channel_from_json(json::parse("[1, 2]")), InputError);
}

TEST_CASE("observables and states") {
  const ObservableSpec x = observable_from_json(load_json_file(data("obs_x.json")));
  REQUIRE(x.pauli.has_value());
  CHECK(x.pauli->str() == "X");
  CHECK(dist(x.op.matrix(), pauli_matrix('X')) == 0.0);

  const ObservableSpec scaled = observable_from_json(json::parse(R"({"pauli": "ZZ", "coeff": -0.5})"));
  CHECK(scaled.coeff == -0.5);
  CHECK(dist(scaled.op.matrix(), -0.5 * PauliString("ZZ").matrix()) == 0.0);

  const ObservableSpec m = observable_from_json(json::parse(R"({"matrix": [[1, [0, -1]], [[0, 1], -1]]})"));
  CHECK(!m.pauli.has_value());
  CHECK(m.op.matrix()(1, 0) == Complex(0.0, 1.0));
  CHECK_THROWS(observable_from_json(json::parse(R"({"matrix": [[0, 1], [0, 0]]})")));
  CHECK_THROWS_AS(observable_from_json(json::parse(R"({"pauli": "X", "coeff": 0})")), InputError);

  const DensityMatrix plus = state_from_json(load_json_file(data("state_plus.json")));
  CHECK(std::abs(plus.matrix()(0, 1).real() - 0.5) < 1e-12);
  const DensityMatrix zero = state_from_json(load_json_file(data("state_zero.json")));
  CHECK(zero.matrix()(0, 0).real() == 1.0);
  CHECK_THROWS(state_from_json(json::parse(R"({"matrix": [[1, 0], [0, 1]]})")));
}

TEST_CASE("retriever JSON round trip preserves recovery") {
  Rng rng(11);
  const KrausChannel noise = make_gad(0.3, 0.8);
  for (char p : {'X', 'Z'}) {
    const RetrieverDecomposition r = analytic_gad_cost(0.3, 0.8, p).decomposition;
    const std::string path = (std::filesystem::temp_directory_path() / "shadow_retriever_rt.json").string();
    save_json_file(path, retriever_to_json(r));
    const RetrieverDecomposition back = retriever_from_json(load_json_file(path));
    std::filesystem::remove(path);
    CHECK(back.gamma == doctest::Approx(r.gamma));
    const HermitianOperator o(pauli_matrix(p));
    for (int i = 0; i < 10; ++i) {
      const DensityMatrix rho(rng.density(2));
      CHECK(std::abs(exact_recovery(rho, noise, back, o) - frobenius_inner(o.matrix(), rho.matrix()).real()) < 1e-8);
    }
  }
  CHECK_THROWS_AS(retriever_from_json(json::parse(R"({"c1": 1})")), InputError);
}

TEST_CASE("report JSON fields") {
  EstimateReport r;
  r.xi = 0.25;
  r.rounds = 7;
  r.gamma = 1.5;
  r.seed = 9;
  json j = report_to_json(r);
  CHECK(j["xi"] == 0.25);
  CHECK(j["rounds"] == 7);
  CHECK(j["true_value"].is_null());
  r.true_value = 0.2;
  r.abs_error = 0.05;
  j = report_to_json(r);
  CHECK(j["abs_error"] == 0.05);
}
