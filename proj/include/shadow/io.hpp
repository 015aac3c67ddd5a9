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

#include <optional>
#include <string>

#include "json.hpp"
#include "shadow/errors.hpp"
#include "shadow/channel.hpp"
#include "shadow/linalg.hpp"
#include "shadow/pauli.hpp"
#include "shadow/protocol.hpp"
#include "shadow/retrieving.hpp"

namespace shadow::io {

using nlohmann::json;

/// Malformed or unreadable input.
class InputError : public Error {
 public:
  using Error::Error;
};

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

/// Complex entries are [re, im] pairs; plain numbers are read as reals.
CMatrix matrix_from_json(const json& j);
json matrix_to_json(const CMatrix& m);
CVector vector_from_json(const json& j);

/// A channel together with the family parameters it was built from.
struct ChannelSpec {
  KrausChannel channel;
  std::string type;  // "kraus", "identity", "unitary", "gad", "depolarizing", "mixed_pauli", "case_study"
  double epsilon = 0.0;
  double p = 0.0;
  int qubits = 0;
  std::optional<PauliProbabilities> probs;  // mixed_pauli and depolarizing
};

/// {"dim", "kraus"} or {"type": "gad" | "depolarizing" | "mixed_pauli" |
/// "case_study" | "unitary" | "identity", ...}.
ChannelSpec channel_from_json(const json& j);

struct ObservableSpec {
  HermitianOperator op;
  std::optional<PauliString> pauli;
  double coeff = 1.0;
};

/// {"matrix": ...} or {"pauli": "XZ", "coeff": c}.
ObservableSpec observable_from_json(const json& j);

/// {"matrix": ...} or {"ket": [...]}.
DensityMatrix state_from_json(const json& j);

/// {"c1", "c2", "d1_kraus", "d2_kraus", "gamma"}.
json retriever_to_json(const RetrieverDecomposition& r);
RetrieverDecomposition retriever_from_json(const json& j);

/// {"xi", "rounds", "gamma", "true_value", "abs_error", "seed"}.
json report_to_json(const EstimateReport& r);

}  // namespace shadow::io
