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

#include <string>
#include <string_view>
#include <vector>

#include "shadow/linalg.hpp"

namespace shadow {

/// Single-qubit Pauli matrix for 'I', 'X', 'Y' or 'Z'.
CMatrix pauli_matrix(char label);

/// An n-qubit Pauli string such as "XZI"; qubit 0 is the leftmost character.
class PauliString {
 public:
  /// Accepts upper- or lower-case I/X/Y/Z; throws InvalidArgument otherwise.
  explicit PauliString(std::string_view labels);

  int n_qubits() const { return static_cast<int>(labels_.size()); }
  const std::string& str() const { return labels_; }
  char operator[](int qubit) const { return labels_[qubit]; }

  /// Number of non-identity factors.
  int weight() const;
  bool is_identity() const { return weight() == 0; }

  /// Pauli strings either commute or anticommute; true for the former.
  bool commutes_with(const PauliString& other) const;

  CMatrix matrix() const;

  bool operator==(const PauliString& other) const = default;
  auto operator<=>(const PauliString& other) const = default;

 private:
  std::string labels_;
};

/// All 4^n strings in lexicographic I < X < Y < Z order.
std::vector<PauliString> all_pauli_strings(int n_qubits);

}  // namespace shadow
