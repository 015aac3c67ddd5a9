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

#include "shadow/pauli.hpp"

#include <algorithm>
#include <cctype>

#include "shadow/errors.hpp"

namespace shadow {

CMatrix pauli_matrix(char label) {
  CMatrix m = CMatrix::Zero(2, 2);
  switch (label) {
    case 'I':
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      break;
    case 'X':
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 'Y':
      m(0, 1) = Complex(0.0, -1.0);
      m(1, 0) = Complex(0.0, 1.0);
      break;
    case 'Z':
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw InvalidArgument(std::string("unknown Pauli label '") + label + "'");
  }
  return m;
}

PauliString::PauliString(std::string_view labels) {
  if (labels.empty()) throw InvalidArgument("empty Pauli string");
  labels_.reserve(labels.size());
  for (char c : labels) {
    const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (u != 'I' && u != 'X' && u != 'Y' && u != 'Z') {
      throw InvalidArgument("invalid Pauli string '" + std::string(labels) + "'");
    }
    labels_.push_back(u);
  }
}

int PauliString::weight() const {
  return static_cast<int>(std::count_if(labels_.begin(), labels_.end(), [](char c) { return c != 'I'; }));
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.n_qubits() != n_qubits()) throw DimensionError("Pauli strings have different lengths");
  int clashes = 0;
  for (int q = 0; q < n_qubits(); ++q) {
    const char a = labels_[q];
    const char b = other.labels_[q];
    if (a != 'I' && b != 'I' && a != b) ++clashes;
  }
  return clashes % 2 == 0;
}

CMatrix PauliString::matrix() const {
  CMatrix m = pauli_matrix(labels_[0]);
  for (int q = 1; q < n_qubits(); ++q) m = kron(m, pauli_matrix(labels_[q]));
  return m;
}

std::vector<PauliString> all_pauli_strings(int n_qubits) {
  if (n_qubits <= 0) throw InvalidArgument("all_pauli_strings: n_qubits must be positive");
  static constexpr char kLabels[] = {'I', 'X', 'Y', 'Z'};
  std::vector<PauliString> out;
  std::size_t total = 1;
  for (int q = 0; q < n_qubits; ++q) total *= 4;
  out.reserve(total);
  std::string s(n_qubits, 'I');
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (int q = n_qubits - 1; q >= 0; --q) {
      s[q] = kLabels[c % 4];
      c /= 4;
    }
    out.emplace_back(s);
  }
  return out;
}

}  // namespace shadow
