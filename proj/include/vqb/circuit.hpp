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

// Statevector simulation of the fixed two-qubit ansatz circuit:
//   Ry(t1) (x) Ry(t2),  CNOT(0 -> 1),  Ry(t3) (x) Ry(t4),  Rz(t5) (x) Rz(t6)
// Rotation convention is exp(-i*theta*sigma/2). Qubit 0 is the leftmost
// tensor factor (most significant bit of the basis index).

#ifndef VQB_CIRCUIT_HPP_
#define VQB_CIRCUIT_HPP_

#include <Eigen/Dense>
#include <vector>

#include "vqb/pauli.hpp"
#include "vqb/rng.hpp"

namespace vqb {

inline constexpr int kAnsatzQubitCount = 2;
inline constexpr int kParameterCount = 6;

enum class GateKind { kRy, kRz, kCnot };

// One gate of the ansatz. Rotations read angle theta[param]; CNOT uses
// qubit as control and target as target.
struct Gate {
  GateKind kind;
  int qubit;
  int target = -1;
  int param = -1;
};

// The ansatz gate sequence in application order.
const std::vector<Gate>& ansatz_gates();

// Per-gate depolarizing probabilities plus a per-bit readout flip
// probability applied at sampling time. Each must lie in [0, 1].
struct NoiseConfig {
  double depolarizing_1q = 0.0;
  double depolarizing_2q = 0.0;
  double readout_flip = 0.0;

  bool has_depolarizing() const {
    return depolarizing_1q > 0.0 || depolarizing_2q > 0.0;
  }
};

// Mild preset used by the harness when noise is enabled.
NoiseConfig mild_noise();

void validate_noise(const NoiseConfig& cfg);

// Applies the ansatz to |00> without noise. theta must have 6 finite entries.
Statevector apply_circuit(const Eigen::VectorXd& theta);

// One Monte-Carlo noise trajectory: after each gate, with the configured
// probability, a uniformly random non-identity Pauli (pair) hits the touched
// qubit(s). Readout flips are not applied here.
Statevector apply_circuit_noisy(const Eigen::VectorXd& theta,
                                const NoiseConfig& noise, Rng& rng);

// <psi|H|psi>; the imaginary residual (below 1e-10 for Hermitian sums) is
// discarded.
double expectation_exact(const Statevector& psi, const PauliSumHamiltonian& h);

// |<psi|phi>|^2.
double fidelity(const Statevector& psi, const Statevector& phi);

// In-place single-qubit Pauli application, for noise and tests.
void apply_pauli(Statevector& psi, int qubit_count, int qubit, char op);

// Rotates psi so that a computational-basis sample measures each qubit along
// the axis basis[k]: X applies H, Y applies H * Sdg, I and Z do nothing.
void rotate_to_measurement_basis(Statevector& psi, int qubit_count,
                                 const PauliString& basis);

}  // namespace vqb

#endif  // VQB_CIRCUIT_HPP_
