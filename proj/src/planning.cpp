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


#include "shadow/planning.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "shadow/errors.hpp"
#include "shadow/protocol.hpp"
#include "shadow/retrieving.hpp"

namespace shadow {

Hamiltonian::Hamiltonian(std::vector<HamiltonianTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw InvalidArgument("Hamiltonian has no terms");
  n_qubits_ = terms_.front().pauli.n_qubits();
  for (const auto& t : terms_) {
    if (t.pauli.n_qubits() != n_qubits_) throw InvalidArgument("Hamiltonian terms act on different qubit counts");
    if (!std::isfinite(t.coefficient)) throw InvalidArgument("Hamiltonian coefficient is not finite");
  }
}

Hamiltonian Hamiltonian::parse(std::istream& in) {
  std::vector<HamiltonianTerm> terms;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double c;
    std::string label, extra;
    if (!(ls >> c)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw InvalidArgument("line " + std::to_string(lineno) + ": expected a coefficient");
    }
    if (!(ls >> label) || (ls >> extra)) {
      throw InvalidArgument("line " + std::to_string(lineno) + ": expected `<coefficient> <pauli>`");
    }
    terms.push_back({c, PauliString(label)});
  }
  return Hamiltonian(std::move(terms));
}

Hamiltonian Hamiltonian::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  return parse(in);
}

NoiseSpec NoiseSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("noise must look like depolarizing:<eps> or gad:<eps>,<p>");
  const std::string family = text.substr(0, colon);
  std::istringstream args(text.substr(colon + 1));
  NoiseSpec spec;
  char comma = 0;
  if (family == "depolarizing") {
    spec.family = NoiseFamily::Depolarizing;
    if (!(args >> spec.epsilon) || !args.eof()) throw InvalidArgument("bad depolarizing noise \"" + text + "\"");
  } else if (family == "gad") {
    spec.family = NoiseFamily::Gad;
    if (!(args >> spec.epsilon >> comma >> spec.p) || comma != ',' || !args.eof()) {
      throw InvalidArgument("bad gad noise \"" + text + "\"");
    }
    if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw InvalidArgument("gad p must lie in [0, 1]");
  } else {
    throw InvalidArgument("unknown noise family \"" + family + "\"");
  }
  if (!(spec.epsilon >= 0.0 && spec.epsilon < 1.0)) throw InvalidArgument("noise epsilon must lie in [0, 1)");
  return spec;
}

double term_cost_retrieving(const PauliString& pauli, const NoiseSpec& noise, NoiseScope scope) {
  if (pauli.is_identity()) return 1.0;
  if (scope == NoiseScope::Global) {
    if (noise.family != NoiseFamily::Depolarizing) throw InvalidArgument("global scope supports depolarizing noise only");
    return analytic_depolarizing_cost(noise.epsilon);
  }
  double g = 1.0;
  for (int q = 0; q < pauli.n_qubits(); ++q) {
    if (pauli[q] == 'I') continue;
    g *= noise.family == NoiseFamily::Depolarizing ? analytic_depolarizing_cost(noise.epsilon)
                                                   : analytic_gad_cost(noise.epsilon, noise.p, pauli[q]).gamma;
  }
  return g;
}

double term_cost_conventional(const PauliString& pauli, const NoiseSpec& noise, NoiseScope scope) {
  if (pauli.is_identity()) return 1.0;
  if (scope == NoiseScope::Global) {
    if (noise.family != NoiseFamily::Depolarizing) throw InvalidArgument("global scope supports depolarizing noise only");
    return conventional_pec_cost_depolarizing(noise.epsilon, 1 << pauli.n_qubits());
  }
  const double site = noise.family == NoiseFamily::Depolarizing ? conventional_pec_cost_depolarizing(noise.epsilon, 2)
                                                                : conventional_pec_cost_gad(noise.epsilon, noise.p);
  return std::pow(site, pauli.weight());
}

PlanReport plan(const Hamiltonian& h, const PlanOptions& options) {
  ProtocolConfig cfg;
  cfg.epsilon_hat = options.epsilon_hat;
  cfg.delta = options.delta;
  cfg.validate();
  if (options.scope == NoiseScope::Global && h.n_qubits() > 12) throw InvalidArgument("global scope supports at most 12 qubits");

  double max_coeff = 0.0;
  for (const auto& t : h.terms()) {
    if (!t.pauli.is_identity()) max_coeff = std::max(max_coeff, std::abs(t.coefficient));
  }

  PlanReport report;
  for (const auto& t : h.terms()) {
    if (t.pauli.is_identity()) continue;
    PlanTerm row{t.pauli, std::abs(t.coefficient), term_cost_retrieving(t.pauli, options.noise, options.scope),
                 term_cost_conventional(t.pauli, options.noise, options.scope), 0, 0, 0, 0};
    const double c = options.uniform_coefficient ? max_coeff : row.abs_coeff;
    row.rounds_pro_real = sampling_rounds_real(c * row.gamma_pro, cfg.epsilon_hat, cfg.delta);
    row.rounds_con_real = sampling_rounds_real(c * row.gamma_con, cfg.epsilon_hat, cfg.delta);
    report.terms.push_back(row);
  }

  if (options.aggregation == Aggregation::PerTerm) {
    for (auto& r : report.terms) {
      const double c = options.uniform_coefficient ? max_coeff : r.abs_coeff;
      r.rounds_pro = sampling_rounds(c * r.gamma_pro, cfg.epsilon_hat, cfg.delta);
      r.rounds_con = sampling_rounds(c * r.gamma_con, cfg.epsilon_hat, cfg.delta);
      report.total_pro_real += r.rounds_pro_real;
      report.total_con_real += r.rounds_con_real;
      report.total_pro += r.rounds_pro;
      report.total_con += r.rounds_con;
    }
    return report;
  }

  double range_pro = 0.0, range_con = 0.0;
  for (const auto& r : report.terms) {
    const double c = options.uniform_coefficient ? max_coeff : r.abs_coeff;
    range_pro += c * r.gamma_pro;
    range_con += c * r.gamma_con;
  }
  if (report.terms.empty()) return report;
  report.total_pro_real = sampling_rounds_real(range_pro, cfg.epsilon_hat, cfg.delta);
  report.total_con_real = sampling_rounds_real(range_con, cfg.epsilon_hat, cfg.delta);
  report.total_pro = sampling_rounds(range_pro, cfg.epsilon_hat, cfg.delta);
  report.total_con = sampling_rounds(range_con, cfg.epsilon_hat, cfg.delta);
  for (auto& r : report.terms) {
    const double c = options.uniform_coefficient ? max_coeff : r.abs_coeff;
    r.rounds_pro_real = report.total_pro_real * c * r.gamma_pro / range_pro;
    r.rounds_con_real = report.total_con_real * c * r.gamma_con / range_con;
    r.rounds_pro = static_cast<std::int64_t>(std::ceil(r.rounds_pro_real * (1.0 - 1e-12)));
    r.rounds_con = static_cast<std::int64_t>(std::ceil(r.rounds_con_real * (1.0 - 1e-12)));
  }
  return report;
}

std::vector<double> parse_range(const std::string& text) {
  std::istringstream in(text);
  double start, stop, step;
  char c1 = 0, c2 = 0;
  if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !in.eof()) {
    throw InvalidArgument("range must look like start:stop:step");
  }
  if (!std::isfinite(start) || !std::isfinite(stop) || !(step > 0.0) || !std::isfinite(step) || stop < start) {
    throw InvalidArgument("range \"" + text + "\" needs start <= stop and step > 0");
  }
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  if (n > 1000000) throw InvalidArgument("range \"" + text + "\" is too long");
  std::vector<double> out;
  for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

std::vector<GridRow> gad_cost_grid(const std::vector<double>& epsilons, const std::vector<double>& ps, char pauli) {
  for (double e : epsilons) {
    if (!(e >= 0.0 && e < 1.0)) throw InvalidArgument("grid epsilon values must lie in [0, 1)");
  }
  for (double p : ps) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("grid p values must lie in [0, 1]");
  }
  std::vector<GridRow> rows;
  rows.reserve(epsilons.size() * ps.size());
  for (double e : epsilons) {
    for (double p : ps) {
      rows.push_back({e, p, analytic_gad_cost(e, p, pauli).gamma, conventional_pec_cost_gad(e, p)});
    }
  }
  return rows;
}

}  // namespace shadow
