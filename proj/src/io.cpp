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


#include "shadow/io.hpp"

#include <fstream>
#include <sstream>

#include "shadow/errors.hpp"

namespace shadow::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw InputError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

ChannelSpec make_spec(KrausChannel channel, const std::string& type) {
  return ChannelSpec{std::move(channel), type, 0.0, 0.0, 0, std::nullopt};
}

Complex entry(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw InputError("matrix entries must be numbers or [re, im] pairs");
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << '\n';
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    throw InputError("a matrix must be a non-empty array of rows");
  }
  const std::size_t rows = j.size(), cols = j[0].size();
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw InputError("matrix rows have unequal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = entry(j[r][c]);
  }
  return m;
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CVector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("a vector must be a non-empty array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = entry(j[i]);
  return v;
}

ChannelSpec channel_from_json(const json& j) {
  if (!j.is_object()) throw InputError("channel must be a JSON object");
  const std::string type = j.contains("type") ? field(j, "type").get<std::string>() : "kraus";
  if (type == "kraus") {
    const json& ks = field(j, "kraus");
    if (!ks.is_array() || ks.empty()) throw InputError("\"kraus\" must be a non-empty array of matrices");
    std::vector<CMatrix> ops;
    for (const json& k : ks) ops.push_back(matrix_from_json(k));
    if (j.contains("dim") && number(j, "dim") != static_cast<double>(ops.front().rows())) {
      throw InputError("\"dim\" does not match the Kraus operators");
    }
    return make_spec(KrausChannel(std::move(ops)), type);
  }
  if (type == "identity") {
    return make_spec(make_identity_channel(static_cast<int>(number(j, "dim"))), type);
  }
  if (type == "unitary") return make_spec(make_unitary(matrix_from_json(field(j, "matrix"))), type);
  if (type == "gad") {
    ChannelSpec s = make_spec(make_gad(number(j, "epsilon"), number(j, "p")), type);
    s.epsilon = number(j, "epsilon");
    s.p = number(j, "p");
    s.qubits = 1;
    return s;
  }
  if (type == "depolarizing") {
    const int n = j.contains("qubits") ? static_cast<int>(number(j, "qubits")) : 1;
    if (n <= 0 || n > 6) throw InputError("depolarizing \"qubits\" must be between 1 and 6");
    ChannelSpec s = make_spec(make_depolarizing(number(j, "epsilon"), n), type);
    s.epsilon = number(j, "epsilon");
    s.qubits = n;
    s.probs = depolarizing_probabilities(s.epsilon, n);
    return s;
  }
  if (type == "mixed_pauli") {
    const json& pj = field(j, "probs");
    if (!pj.is_object() || pj.empty()) throw InputError("\"probs\" must be an object of Pauli strings");
    PauliProbabilities probs;
    for (const auto& [k, v] : pj.items()) {
      if (!v.is_number()) throw InputError("Pauli probabilities must be numbers");
      probs[PauliString(k)] += v.get<double>();
    }
    ChannelSpec s = make_spec(make_mixed_pauli(probs), type);
    s.qubits = probs.begin()->first.n_qubits();
    s.probs = std::move(probs);
    return s;
  }
  if (type == "case_study") {
    return make_spec(make_case_study(static_cast<int>(number(j, "which"))), type);
  }
  throw InputError("unknown channel type \"" + type + "\"");
}

ObservableSpec observable_from_json(const json& j) {
  if (!j.is_object()) throw InputError("observable must be a JSON object");
  if (j.contains("pauli")) {
    const PauliString p(field(j, "pauli").get<std::string>());
    const double c = j.contains("coeff") ? number(j, "coeff") : 1.0;
    if (c == 0.0) throw InputError("observable coefficient must be non-zero");
    return ObservableSpec{HermitianOperator(c * p.matrix()), p, c};
  }
  return ObservableSpec{HermitianOperator(matrix_from_json(field(j, "matrix"))), std::nullopt, 1.0};
}

DensityMatrix state_from_json(const json& j) {
  if (!j.is_object()) throw InputError("state must be a JSON object");
  if (j.contains("ket")) return DensityMatrix::pure(vector_from_json(j.at("ket")));
  return DensityMatrix(matrix_from_json(field(j, "matrix")));
}

json retriever_to_json(const RetrieverDecomposition& r) {
  auto kraus = [](const ChoiMatrix& c) {
    const KrausChannel channel = choi_to_kraus(c, 1e-6);
    json ks = json::array();
    for (const CMatrix& k : channel.kraus()) ks.push_back(matrix_to_json(k));
    return ks;
  };
  return json{{"c1", r.c1}, {"c2", r.c2}, {"d1_kraus", kraus(r.d1)}, {"d2_kraus", kraus(r.d2)}, {"gamma", r.gamma}};
}

RetrieverDecomposition retriever_from_json(const json& j) {
  auto channel = [&](const char* key) {
    const json& ks = field(j, key);
    if (!ks.is_array() || ks.empty()) throw InputError(std::string("\"") + key + "\" must list Kraus operators");
    std::vector<CMatrix> ops;
    for (const json& k : ks) ops.push_back(matrix_from_json(k));
    return kraus_to_choi(KrausChannel(std::move(ops), 1e-6));
  };
  RetrieverDecomposition r;
  r.c1 = number(j, "c1");
  r.c2 = number(j, "c2");
  if (r.c1 < 0.0 || r.c2 > 0.0) throw InputError("retriever needs c1 >= 0 and c2 <= 0");
  r.d1 = channel("d1_kraus");
  r.d2 = channel("d2_kraus");
  if (r.d1.dim_in() != r.d2.dim_in()) throw InputError("retriever components differ in dimension");
  r.gamma = r.c1 - r.c2;
  return r;
}

json report_to_json(const EstimateReport& r) {
  json j{{"xi", r.xi}, {"rounds", r.rounds}, {"gamma", r.gamma}, {"seed", r.seed}};
  j["true_value"] = r.true_value ? json(*r.true_value) : json(nullptr);
  j["abs_error"] = r.abs_error ? json(*r.abs_error) : json(nullptr);
  return j;
}

}  // namespace shadow::io
