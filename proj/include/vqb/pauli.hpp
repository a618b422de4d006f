// Copyright 2026 The vqe-bayes authors.
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

#include <Eigen/Core>
#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace vqb {

/// One Pauli operator per qubit, encoded as a string over {I, X, Y, Z}.
/// Character 0 acts on qubit 0, which is the leftmost tensor factor (the most
/// significant bit of a basis-state index).
using PauliString = std::string;

struct PauliTerm {
  double coefficient = 0.0;
  PauliString ops;
};

/// Pure state on `qubit_count` qubits; length 2^q, unit norm.
using Statevector = Eigen::VectorXcd;

/// Real-weighted sum of Pauli strings on a fixed qubit register. Duplicate
/// strings are merged at construction and terms with |coefficient| < 1e-15
/// are dropped.
class PauliSumHamiltonian {
 public:
  PauliSumHamiltonian(int qubit_count, std::vector<PauliTerm> terms);

  int qubit_count() const { return qubit_count_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }

 private:
  int qubit_count_;
  std::vector<PauliTerm> terms_;
};

struct SpectralResult {
  double ground_energy = 0.0;
  Statevector ground_state;
};

/// Dense 2^q x 2^q Hermitian matrix of the Pauli sum. Guarded to q <= 12.
Eigen::MatrixXcd build_matrix(const PauliSumHamiltonian& h);

/// Lowest eigenpair by dense diagonalization. The eigenvector's global phase
/// is fixed so its largest-magnitude amplitude is real and positive.
SpectralResult ground_state(const PauliSumHamiltonian& h);

/// Two-qubit transverse-field Ising Hamiltonian with unit coupling:
/// terms (-1, XX), (-1, ZI), (-1, IZ).
PauliSumHamiltonian ising_hamiltonian();

/// Parses the text format `<coefficient> <pauli-string>`, one term per line.
/// `#` starts a comment; blank lines are skipped.
PauliSumHamiltonian parse_hamiltonian(std::istream& in);
PauliSumHamiltonian parse_hamiltonian_text(const std::string& text);

}  // namespace vqb
