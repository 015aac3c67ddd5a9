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

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "shadow/pauli.hpp"

namespace shadow {

struct HamiltonianTerm {
  double coefficient;
  PauliString pauli;
};

/// A real linear combination of Pauli strings on a fixed number of qubits.
class Hamiltonian {
 public:
  explicit Hamiltonian(std::vector<HamiltonianTerm> terms);

  /// One `<coefficient> <pauli>` pair per line; `#` starts a comment.
  static Hamiltonian parse(std::istream& in);
  static Hamiltonian load(const std::string& path);

  int n_qubits() const { return n_qubits_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }

 private:
  std::vector<HamiltonianTerm> terms_;
  int n_qubits_;
};

enum class NoiseFamily { Depolarizing, Gad };

struct NoiseSpec {
  NoiseFamily family = NoiseFamily::Depolarizing;
  double epsilon = 0.0;
  double p = 0.0;

  /// "depolarizing:<eps>" or "gad:<eps>,<p>".
  static NoiseSpec parse(const std::string& text);
};

/// PerTerm estimates every term to accuracy ε̂ separately; Weighted samples
/// terms with probability ∝ |h_j|·γ_j and estimates the whole energy to ε̂.
enum class Aggregation { PerTerm, Weighted };

/// PerQubit applies the noise independently to every qubit; Global treats it
/// as one channel on all n qubits (depolarizing only).
enum class NoiseScope { PerQubit, Global };

struct PlanOptions {
  NoiseSpec noise;
  double epsilon_hat = 0.01;
  double delta = 0.01;
  Aggregation aggregation = Aggregation::PerTerm;
  NoiseScope scope = NoiseScope::PerQubit;
  /// Count rounds with max_j |h_j| for every term.
  bool uniform_coefficient = false;
};

struct PlanTerm {
  PauliString pauli;
  double abs_coeff;
  double gamma_pro;
  double gamma_con;
  double rounds_pro_real;
  double rounds_con_real;
  std::int64_t rounds_pro;
  std::int64_t rounds_con;
};

struct PlanReport {
  std::vector<PlanTerm> terms;  // identity terms are omitted
  double total_pro_real = 0.0;
  double total_con_real = 0.0;
  std::int64_t total_pro = 0;
  std::int64_t total_con = 0;
};

/// Per-term retrieving and conventional costs for a noise model.
double term_cost_retrieving(const PauliString& pauli, const NoiseSpec& noise, NoiseScope scope);
double term_cost_conventional(const PauliString& pauli, const NoiseSpec& noise, NoiseScope scope);

PlanReport plan(const Hamiltonian& h, const PlanOptions& options);

/// Inclusive arithmetic range start, start+step, … ≤ stop.
std::vector<double> parse_range(const std::string& text);

struct GridRow {
  double epsilon;
  double p;
  double gamma_pro;
  double gamma_con;
};

/// Retrieving and conventional costs of a single-qubit Pauli under GAD noise.
std::vector<GridRow> gad_cost_grid(const std::vector<double>& epsilons, const std::vector<double>& ps, char pauli);

}  // namespace shadow
