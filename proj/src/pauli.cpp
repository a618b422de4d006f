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

#include "vqb/pauli.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vqb {

namespace {

constexpr double kCoefficientDropTolerance = 1e-15;
constexpr int kMaxDenseQubits = 12;

bool valid_op(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

}  // namespace

PauliSumHamiltonian::PauliSumHamiltonian(int qubit_count,
                                         std::vector<PauliTerm> terms)
    : qubit_count_(qubit_count) {
  if (qubit_count < 1) {
    throw std::invalid_argument("PauliSumHamiltonian: qubit_count must be >= 1");
  }
  // Merge duplicates, keeping first-occurrence order.
  std::vector<PauliString> order;
  std::map<PauliString, double> merged;
  for (const PauliTerm& term : terms) {
    if (static_cast<int>(term.ops.size()) != qubit_count) {
      throw std::invalid_argument(
          "PauliSumHamiltonian: string length must equal qubit_count");
    }
    for (char c : term.ops) {
      if (!valid_op(c)) {
        throw std::invalid_argument(
            "PauliSumHamiltonian: operators must be one of I, X, Y, Z");
      }
    }
    if (!std::isfinite(term.coefficient)) {
      throw std::invalid_argument("PauliSumHamiltonian: non-finite coefficient");
    }
    auto [it, inserted] = merged.emplace(term.ops, term.coefficient);
    if (inserted) {
      order.push_back(term.ops);
    } else {
      it->second += term.coefficient;
    }
  }
  for (const PauliString& ops : order) {
    const double c = merged.at(ops);
    if (std::abs(c) >= kCoefficientDropTolerance) {
      terms_.push_back({c, ops});
    }
  }
}

Eigen::MatrixXcd build_matrix(const PauliSumHamiltonian& h) {
  const int q = h.qubit_count();
  if (q > kMaxDenseQubits) {
    throw std::length_error("build_matrix: dense construction limited to 12 qubits");
  }
  const std::int64_t dim = std::int64_t{1} << q;
  Eigen::MatrixXcd matrix = Eigen::MatrixXcd::Zero(dim, dim);
  const std::complex<double> im(0.0, 1.0);

  // Each Pauli string maps basis state |col> to phase * |row> with row a
  // bit-flip pattern of col; accumulate column by column.
  for (const PauliTerm& term : h.terms()) {
    for (std::int64_t col = 0; col < dim; ++col) {
      std::int64_t row = col;
      std::complex<double> phase(1.0, 0.0);
      for (int k = 0; k < q; ++k) {
        const std::int64_t mask = std::int64_t{1} << (q - 1 - k);
        const bool bit = (col & mask) != 0;
        switch (term.ops[static_cast<std::size_t>(k)]) {
          case 'I':
            break;
          case 'X':
            row ^= mask;
            break;
          case 'Y':
            row ^= mask;
            phase *= bit ? -im : im;
            break;
          case 'Z':
            if (bit) phase = -phase;
            break;
          default:
            break;
        }
      }
      matrix(row, col) += term.coefficient * phase;
    }
  }
  return matrix;
}

SpectralResult ground_state(const PauliSumHamiltonian& h) {
  const Eigen::MatrixXcd matrix = build_matrix(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("ground_state: eigensolver failed");
  }
  SpectralResult result;
  result.ground_energy = solver.eigenvalues()(0);
  result.ground_state = solver.eigenvectors().col(0);

  // Deterministic global phase: largest-magnitude amplitude real positive.
  Eigen::Index pivot = 0;
  result.ground_state.cwiseAbs().maxCoeff(&pivot);
  const std::complex<double> a = result.ground_state(pivot);
  result.ground_state *= std::abs(a) / a;
  return result;
}

PauliSumHamiltonian ising_hamiltonian() {
  return PauliSumHamiltonian(2, {{-1.0, "XX"}, {-1.0, "ZI"}, {-1.0, "IZ"}});
}

PauliSumHamiltonian parse_hamiltonian(std::istream& in) {
  std::vector<PauliTerm> terms;
  int qubit_count = -1;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    double coefficient = 0.0;
    std::string ops;
    if (!(row >> coefficient)) {
      if (row.eof()) continue;  // blank or comment-only line
      throw std::invalid_argument("parse_hamiltonian: bad coefficient on line " +
                                  std::to_string(line_number));
    }
    if (!(row >> ops)) {
      throw std::invalid_argument("parse_hamiltonian: missing Pauli string on line " +
                                  std::to_string(line_number));
    }
    std::string extra;
    if (row >> extra) {
      throw std::invalid_argument("parse_hamiltonian: trailing tokens on line " +
                                  std::to_string(line_number));
    }
    if (qubit_count < 0) {
      qubit_count = static_cast<int>(ops.size());
    } else if (static_cast<int>(ops.size()) != qubit_count) {
      throw std::invalid_argument(
          "parse_hamiltonian: inconsistent string length on line " +
          std::to_string(line_number));
    }
    terms.push_back({coefficient, ops});
  }
  if (terms.empty()) {
    throw std::invalid_argument("parse_hamiltonian: no terms found");
  }
  return PauliSumHamiltonian(qubit_count, std::move(terms));
}

PauliSumHamiltonian parse_hamiltonian_text(const std::string& text) {
  std::istringstream in(text);
  return parse_hamiltonian(in);
}

}  // namespace vqb
