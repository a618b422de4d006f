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

#include "vqb/circuit.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace vqb {

namespace {

using Complex = std::complex<double>;

// Applies the 2x2 unitary [[a, b], [c, d]] to one qubit of psi.
void apply_single_qubit(Statevector& psi, int qubit_count, int qubit,
                        Complex a, Complex b, Complex c, Complex d) {
  const Eigen::Index dim = psi.size();
  const Eigen::Index mask = Eigen::Index{1} << (qubit_count - 1 - qubit);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (i & mask) continue;
    const Complex lo = psi(i);
    const Complex hi = psi(i | mask);
    psi(i) = a * lo + b * hi;
    psi(i | mask) = c * lo + d * hi;
  }
}

void apply_ry(Statevector& psi, int qubit_count, int qubit, double theta) {
  const double cs = std::cos(0.5 * theta);
  const double sn = std::sin(0.5 * theta);
  apply_single_qubit(psi, qubit_count, qubit, cs, -sn, sn, cs);
}

void apply_rz(Statevector& psi, int qubit_count, int qubit, double theta) {
  const Complex phase(std::cos(0.5 * theta), std::sin(0.5 * theta));
  apply_single_qubit(psi, qubit_count, qubit, std::conj(phase), 0.0, 0.0,
                     phase);
}

void apply_cnot(Statevector& psi, int qubit_count, int control, int target) {
  const Eigen::Index dim = psi.size();
  const Eigen::Index cmask = Eigen::Index{1} << (qubit_count - 1 - control);
  const Eigen::Index tmask = Eigen::Index{1} << (qubit_count - 1 - target);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if ((i & cmask) && !(i & tmask)) {
      std::swap(psi(i), psi(i | tmask));
    }
  }
}

void apply_hadamard(Statevector& psi, int qubit_count, int qubit) {
  const double r = 1.0 / std::sqrt(2.0);
  apply_single_qubit(psi, qubit_count, qubit, r, r, r, -r);
}

void apply_sdg(Statevector& psi, int qubit_count, int qubit) {
  apply_single_qubit(psi, qubit_count, qubit, 1.0, 0.0, 0.0,
                     Complex(0.0, -1.0));
}

void depolarize_1q(Statevector& psi, int qubit, double p, Rng& rng) {
  if (p <= 0.0 || !rng.bernoulli(p)) return;
  const char paulis[] = {'X', 'Y', 'Z'};
  apply_pauli(psi, kAnsatzQubitCount, qubit, paulis[rng.below(3)]);
}

void depolarize_2q(Statevector& psi, int qubit_a, int qubit_b, double p,
                   Rng& rng) {
  if (p <= 0.0 || !rng.bernoulli(p)) return;
  // Uniform over the 15 non-identity pairs (P_a, P_b) != (I, I).
  const std::uint64_t idx = rng.below(15) + 1;
  const char paulis[] = {'I', 'X', 'Y', 'Z'};
  const char op_a = paulis[idx / 4];
  const char op_b = paulis[idx % 4];
  if (op_a != 'I') apply_pauli(psi, kAnsatzQubitCount, qubit_a, op_a);
  if (op_b != 'I') apply_pauli(psi, kAnsatzQubitCount, qubit_b, op_b);
}

Statevector run_gates(const Eigen::VectorXd& theta, const NoiseConfig* noise,
                      Rng* rng) {
  if (theta.size() != kParameterCount) {
    throw std::invalid_argument("apply_circuit: expected 6 parameters");
  }
  if (!theta.allFinite()) {
    throw std::invalid_argument("apply_circuit: non-finite parameter");
  }
  Statevector psi = Statevector::Zero(4);
  psi(0) = 1.0;
  for (const Gate& gate : ansatz_gates()) {
    switch (gate.kind) {
      case GateKind::kRy:
        apply_ry(psi, kAnsatzQubitCount, gate.qubit, theta(gate.param));
        if (noise) depolarize_1q(psi, gate.qubit, noise->depolarizing_1q, *rng);
        break;
      case GateKind::kRz:
        apply_rz(psi, kAnsatzQubitCount, gate.qubit, theta(gate.param));
        if (noise) depolarize_1q(psi, gate.qubit, noise->depolarizing_1q, *rng);
        break;
      case GateKind::kCnot:
        apply_cnot(psi, kAnsatzQubitCount, gate.qubit, gate.target);
        if (noise) {
          depolarize_2q(psi, gate.qubit, gate.target, noise->depolarizing_2q,
                        *rng);
        }
        break;
    }
  }
  return psi;
}

}  // namespace

const std::vector<Gate>& ansatz_gates() {
  static const std::vector<Gate> gates = {
      {GateKind::kRy, 0, -1, 0},  {GateKind::kRy, 1, -1, 1},
      {GateKind::kCnot, 0, 1, -1}, {GateKind::kRy, 0, -1, 2},
      {GateKind::kRy, 1, -1, 3},  {GateKind::kRz, 0, -1, 4},
      {GateKind::kRz, 1, -1, 5},
  };
  return gates;
}

NoiseConfig mild_noise() { return {0.001, 0.01, 0.02}; }

void validate_noise(const NoiseConfig& cfg) {
  const double probs[] = {cfg.depolarizing_1q, cfg.depolarizing_2q,
                          cfg.readout_flip};
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("NoiseConfig: probabilities must be in [0, 1]");
    }
  }
}

Statevector apply_circuit(const Eigen::VectorXd& theta) {
  return run_gates(theta, nullptr, nullptr);
}

Statevector apply_circuit_noisy(const Eigen::VectorXd& theta,
                                const NoiseConfig& noise, Rng& rng) {
  validate_noise(noise);
  return run_gates(theta, &noise, &rng);
}

double expectation_exact(const Statevector& psi,
                         const PauliSumHamiltonian& h) {
  const Eigen::Index dim = Eigen::Index{1} << h.qubit_count();
  if (psi.size() != dim) {
    throw std::invalid_argument("expectation_exact: dimension mismatch");
  }
  Complex value = 0.0;
  Statevector scratch(dim);
  for (const PauliTerm& term : h.terms()) {
    scratch = psi;
    for (int k = 0; k < h.qubit_count(); ++k) {
      const char op = term.ops[static_cast<std::size_t>(k)];
      if (op != 'I') apply_pauli(scratch, h.qubit_count(), k, op);
    }
    value += term.coefficient * psi.dot(scratch);
  }
  return value.real();
}

double fidelity(const Statevector& psi, const Statevector& phi) {
  if (psi.size() != phi.size()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  return std::norm(psi.dot(phi));
}

void apply_pauli(Statevector& psi, int qubit_count, int qubit, char op) {
  const Complex im(0.0, 1.0);
  switch (op) {
    case 'X':
      apply_single_qubit(psi, qubit_count, qubit, 0.0, 1.0, 1.0, 0.0);
      break;
    case 'Y':
      apply_single_qubit(psi, qubit_count, qubit, 0.0, -im, im, 0.0);
      break;
    case 'Z':
      apply_single_qubit(psi, qubit_count, qubit, 1.0, 0.0, 0.0, -1.0);
      break;
    case 'I':
      break;
    default:
      throw std::invalid_argument("apply_pauli: unknown operator");
  }
}

void rotate_to_measurement_basis(Statevector& psi, int qubit_count,
                                 const PauliString& basis) {
  if (static_cast<int>(basis.size()) != qubit_count) {
    throw std::invalid_argument(
        "rotate_to_measurement_basis: basis length mismatch");
  }
  for (int k = 0; k < qubit_count; ++k) {
    switch (basis[static_cast<std::size_t>(k)]) {
      case 'X':
        apply_hadamard(psi, qubit_count, k);
        break;
      case 'Y':
        apply_sdg(psi, qubit_count, k);
        apply_hadamard(psi, qubit_count, k);
        break;
      case 'I':
      case 'Z':
        break;
      default:
        throw std::invalid_argument(
            "rotate_to_measurement_basis: unknown basis axis");
    }
  }
}

}  // namespace vqb
