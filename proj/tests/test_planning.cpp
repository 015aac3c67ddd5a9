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
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "shadow/errors.hpp"
#include "shadow/planning.hpp"
#include "shadow/retrieving.hpp"

using namespace shadow;

namespace {

std::string data(const char* name) { return std::string(SHADOW_TEST_DATA_DIR) + "/" + name; }

double formula_rounds(double gamma, double eps, double delta) {
  return 2.0 * gamma * gamma * std::log(2.0 / delta) / (eps * eps);
}

}  // namespace

TEST_CASE("Hamiltonian parsing") {
  std::istringstream in("# comment\n0.5 XZ\n\n  -1.25 zz  # trailing\n1 II\n");
  const Hamiltonian h = Hamiltonian::parse(in);
  CHECK(h.n_qubits() == 2);
  REQUIRE(h.terms().size() == 3);
  CHECK(h.terms()[1].coefficient == -1.25);
  CHECK(h.terms()[1].pauli.str() == "ZZ");

  std::istringstream ragged("1 XZ\n1 X\n");
  CHECK_THROWS_AS(Hamiltonian::parse(ragged), InvalidArgument);
  std::istringstream junk("abc XZ\n");
  CHECK_THROWS_AS(Hamiltonian::parse(junk), InvalidArgument);
  std::istringstream extra("1 XZ 3\n");
  CHECK_THROWS_AS(Hamiltonian::parse(extra), InvalidArgument);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(Hamiltonian::parse(empty), InvalidArgument);

  const Hamiltonian h2 = Hamiltonian::load(data("h2_sto3g.txt"));
  CHECK(h2.n_qubits() == 4);
  CHECK(h2.terms().size() == 15);
}

TEST_CASE("noise specs") {
  const NoiseSpec d = NoiseSpec::parse("depolarizing:0.1");
  CHECK(d.family == NoiseFamily::Depolarizing);
  CHECK(d.epsilon == 0.1);
  const NoiseSpec g = NoiseSpec::parse("gad:0.2,0.3");
  CHECK(g.family == NoiseFamily::Gad);
  CHECK(g.p == 0.3);
  for (const char* bad : {"depolarizing", "dephasing:0.1", "gad:0.1", "gad:0.1;0.2", "depolarizing:1.0",
                          "depolarizing:0.1x", "gad:0.1,1.5"}) {
    CHECK_THROWS_AS(NoiseSpec::parse(bad), InvalidArgument);
  }
}

TEST_CASE("single Z term under depolarizing noise") {
  PlanOptions opt;
  opt.noise = NoiseSpec::parse("depolarizing:0.1");
  opt.epsilon_hat = 0.01;
  opt.delta = 0.01;
  const PlanReport r = plan(Hamiltonian({{1.0, PauliString("Z")}}), opt);
  REQUIRE(r.terms.size() == 1);
  const double expected = formula_rounds(1.0 / 0.9, 0.01, 0.01);
  CHECK(std::abs(r.terms[0].rounds_pro_real - expected) < 1e-6 * expected);
  CHECK(r.terms[0].rounds_pro == static_cast<std::int64_t>(std::ceil(expected)));
  CHECK(r.total_pro == 130823);
  CHECK(r.terms[0].gamma_con == doctest::Approx((1.0 + 0.5 * 0.1) / 0.9));
}

TEST_CASE("noiseless plans coincide") {
  const Hamiltonian h = Hamiltonian::load(data("h2_sto3g.txt"));
  for (const char* noise : {"depolarizing:0", "gad:0,0.3"}) {
    PlanOptions opt;
    opt.noise = NoiseSpec::parse(noise);
    const PlanReport r = plan(h, opt);
    for (const auto& t : r.terms) {
      CHECK(t.gamma_pro == 1.0);
      CHECK(t.rounds_pro == t.rounds_con);
    }
    CHECK(r.total_pro == r.total_con);
  }
}

TEST_CASE("fixture Hamiltonian ratios") {
  const Hamiltonian h = Hamiltonian::load(data("h2_sto3g.txt"));
  PlanOptions opt;
  opt.noise = NoiseSpec::parse("depolarizing:0.1");
  const PlanReport r = plan(h, opt);
  CHECK(r.terms.size() == 14);
  CHECK(r.total_pro < r.total_con);
  std::int64_t sum_pro = 0, sum_con = 0;
  for (const auto& t : r.terms) {
    const double ratio = t.gamma_con / t.gamma_pro;
    CHECK(std::abs(t.rounds_con_real / t.rounds_pro_real - ratio * ratio) < 1e-9);
    CHECK(t.gamma_pro == doctest::Approx(std::pow(1.0 / 0.9, t.pauli.weight())));
    CHECK(t.rounds_pro <= t.rounds_con);
    sum_pro += t.rounds_pro;
    sum_con += t.rounds_con;
  }
  CHECK(sum_pro == r.total_pro);
  CHECK(sum_con == r.total_con);
}

TEST_CASE("weighted aggregation") {
  const Hamiltonian h = Hamiltonian::load(data("h2_sto3g.txt"));
  PlanOptions opt;
  opt.noise = NoiseSpec::parse("gad:0.1,0.2");
  opt.aggregation = Aggregation::Weighted;
  const PlanReport r = plan(h, opt);
  double range = 0.0, share = 0.0;
  for (const auto& t : r.terms) {
    range += t.abs_coeff * t.gamma_pro;
    share += t.rounds_pro_real;
  }
  CHECK(std::abs(r.total_pro_real - formula_rounds(range, opt.epsilon_hat, opt.delta)) < 1e-6 * r.total_pro_real);
  CHECK(std::abs(share - r.total_pro_real) < 1e-6 * r.total_pro_real);
  CHECK(r.total_pro < r.total_con);

  PlanOptions per = opt;
  per.aggregation = Aggregation::PerTerm;
  CHECK(plan(h, per).total_pro_real <= r.total_pro_real);
}

TEST_CASE("uniform coefficient and global scope") {
  const Hamiltonian h({{0.5, PauliString("XZ")}, {-2.0, PauliString("ZI")}, {3.0, PauliString("II")}});
  PlanOptions opt;
  opt.noise = NoiseSpec::parse("depolarizing:0.2");
  opt.uniform_coefficient = true;
  const PlanReport r = plan(h, opt);
  REQUIRE(r.terms.size() == 2);
  CHECK(r.terms[0].rounds_pro_real == doctest::Approx(formula_rounds(2.0 / 0.64, opt.epsilon_hat, opt.delta)));

  opt.uniform_coefficient = false;
  opt.scope = NoiseScope::Global;
  const PlanReport g = plan(h, opt);
  CHECK(g.terms[0].gamma_pro == doctest::Approx(1.0 / 0.8));
  CHECK(g.terms[0].gamma_con == doctest::Approx((1.0 + (1.0 - 2.0 / 16.0) * 0.2) / 0.8));

  opt.noise = NoiseSpec::parse("gad:0.2,0.1");
  CHECK_THROWS_AS(plan(h, opt), InvalidArgument);
}

TEST_CASE("per-qubit costs match two-qubit SDPs") {
  const double eps = 0.25, p = 0.3;
  const KrausChannel gad2 = tensor(make_gad(eps, p), make_gad(eps, p));
  const NoiseSpec gad{NoiseFamily::Gad, eps, p};
  for (const char* s : {"XZ", "ZZ", "IY"}) {
    const PauliString o(s);
    const SdpSolution sol = retrieving_cost_sdp(gad2, HermitianOperator(o.matrix()));
    REQUIRE(sol.status == SdpStatus::Optimal);
    CHECK(std::abs(sol.gamma - term_cost_retrieving(o, gad, NoiseScope::PerQubit)) < 1e-5);
  }
  const KrausChannel dep2 = tensor(make_depolarizing(eps, 1), make_depolarizing(eps, 1));
  const NoiseSpec dep{NoiseFamily::Depolarizing, eps, 0.0};
  const SdpSolution sol = retrieving_cost_sdp(dep2, HermitianOperator(PauliString("XY").matrix()));
  REQUIRE(sol.status == SdpStatus::Optimal);
  CHECK(std::abs(sol.gamma - term_cost_retrieving(PauliString("XY"), dep, NoiseScope::PerQubit)) < 1e-5);
}

TEST_CASE("ranges") {
  const auto r = parse_range("0:0.9:0.05");
  CHECK(r.size() == 19);
  CHECK(r.back() == doctest::Approx(0.9));
  CHECK(parse_range("0.5:0.5:0.1").size() == 1);
  for (const char* bad : {"0:1", "1:0:0.1", "0:1:0", "0:1:-0.1", "a:b:c", "0:1:0.1:2"}) {
    CHECK_THROWS_AS(parse_range(bad), InvalidArgument);
  }
}

TEST_CASE("GAD cost grid") {
  const auto rows = gad_cost_grid({0.0, 0.5}, {0.5}, 'X');
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].gamma_pro == 1.0);
  CHECK(rows[0].gamma_con == 1.0);
  CHECK(std::abs(rows[1].gamma_pro - std::numbers::sqrt2) < 1e-12);
  CHECK(std::abs(rows[1].gamma_con - 2.0) < 1e-12);
  for (const auto& row : gad_cost_grid(parse_range("0:0.9:0.05"), parse_range("0:0.5:0.05"), 'X')) {
    CHECK(row.gamma_pro <= row.gamma_con);
    if (row.epsilon > 0) CHECK(row.gamma_pro < row.gamma_con);
  }
  CHECK_THROWS_AS(gad_cost_grid({1.0}, {0.1}, 'X'), InvalidArgument);
}
