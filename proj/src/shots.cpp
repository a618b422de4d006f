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

#include "vqb/shots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vqb {

namespace {

bool all_identity(const PauliString& ops) {
  return std::all_of(ops.begin(), ops.end(), [](char c) { return c == 'I'; });
}

// A term fits a group when every non-identity op matches the basis or lands
// on a still-unconstrained ('I') basis slot.
bool fits_basis(const PauliString& ops, const PauliString& basis) {
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (ops[k] != 'I' && basis[k] != 'I' && basis[k] != ops[k]) return false;
  }
  return true;
}

void extend_basis(PauliString& basis, const PauliString& ops) {
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (ops[k] != 'I') basis[k] = ops[k];
  }
}

std::int64_t sample_bitstring(const Eigen::VectorXd& probs, Rng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    cumulative += probs(i);
    if (u < cumulative) return i;
  }
  return probs.size() - 1;
}

double sample_group_value(const Eigen::VectorXd& probs,
                          const MeasurementGroup& group, int qubit_count,
                          double readout_flip, Rng& rng) {
  std::int64_t bits = sample_bitstring(probs, rng);
  if (readout_flip > 0.0) {
    for (int k = 0; k < qubit_count; ++k) {
      if (rng.bernoulli(readout_flip)) {
        bits ^= std::int64_t{1} << (qubit_count - 1 - k);
      }
    }
  }
  double value = 0.0;
  for (const PauliTerm& member : group.members) {
    int eigenvalue = 1;
    for (int k = 0; k < qubit_count; ++k) {
      if (member.ops[static_cast<std::size_t>(k)] == 'I') continue;
      if ((bits >> (qubit_count - 1 - k)) & 1) eigenvalue = -eigenvalue;
    }
    value += member.coefficient * eigenvalue;
  }
  return value;
}

Eigen::VectorXd basis_probabilities(const Statevector& psi, int qubit_count,
                                    const PauliString& basis) {
  Statevector rotated = psi;
  rotate_to_measurement_basis(rotated, qubit_count, basis);
  return rotated.cwiseAbs2();
}

}  // namespace

GroupedTerms group_terms(const PauliSumHamiltonian& h) {
  GroupedTerms grouped;
  for (const PauliTerm& term : h.terms()) {
    if (all_identity(term.ops)) {
      grouped.offset += term.coefficient;
      continue;
    }
    bool placed = false;
    for (MeasurementGroup& group : grouped.groups) {
      if (fits_basis(term.ops, group.basis)) {
        extend_basis(group.basis, term.ops);
        group.members.push_back(term);
        placed = true;
        break;
      }
    }
    if (!placed) {
      grouped.groups.push_back({term.ops, {term}});
    }
  }
  return grouped;
}

double sample_shot(const Statevector& psi, const GroupedTerms& grouped,
                   double readout_flip, Rng& rng) {
  const int qubit_count = grouped.groups.empty()
                              ? 0
                              : static_cast<int>(grouped.groups[0].basis.size());
  double energy = grouped.offset;
  for (const MeasurementGroup& group : grouped.groups) {
    const Eigen::VectorXd probs =
        basis_probabilities(psi, qubit_count, group.basis);
    energy += sample_group_value(probs, group, qubit_count, readout_flip, rng);
  }
  return energy;
}

MeasurementRecord measure_energy(const Eigen::VectorXd& theta, int shots,
                                 const PauliSumHamiltonian& h,
                                 const NoiseConfig& noise, Rng& rng) {
  if (shots < 2) {
    throw std::invalid_argument(
        "measure_energy: need at least 2 shots for the variance estimate");
  }
  validate_noise(noise);
  const GroupedTerms grouped = group_terms(h);
  const int qubit_count = h.qubit_count();

  std::vector<double> energies(static_cast<std::size_t>(shots),
                               grouped.offset);
  if (!noise.has_depolarizing()) {
    // The prepared state is shot-independent, so rotate once per group.
    const Statevector psi = apply_circuit(theta);
    std::vector<Eigen::VectorXd> probs;
    probs.reserve(grouped.groups.size());
    for (const MeasurementGroup& group : grouped.groups) {
      probs.push_back(basis_probabilities(psi, qubit_count, group.basis));
    }
    for (int m = 0; m < shots; ++m) {
      for (std::size_t g = 0; g < grouped.groups.size(); ++g) {
        energies[static_cast<std::size_t>(m)] +=
            sample_group_value(probs[g], grouped.groups[g], qubit_count,
                               noise.readout_flip, rng);
      }
    }
  } else {
    // Every circuit execution is its own noise trajectory.
    for (int m = 0; m < shots; ++m) {
      for (const MeasurementGroup& group : grouped.groups) {
        const Statevector psi = apply_circuit_noisy(theta, noise, rng);
        const Eigen::VectorXd probs =
            basis_probabilities(psi, qubit_count, group.basis);
        energies[static_cast<std::size_t>(m)] += sample_group_value(
            probs, group, qubit_count, noise.readout_flip, rng);
      }
    }
  }

  MeasurementRecord record;
  record.theta = theta;
  record.shots = shots;
  double sum = 0.0;
  for (double e : energies) sum += e;
  record.energy = sum / shots;
  double squares = 0.0;
  for (double e : energies) {
    const double d = e - record.energy;
    squares += d * d;
  }
  record.std_error =
      std::sqrt(squares / (static_cast<double>(shots) * (shots - 1)));
  return record;
}

}  // namespace vqb
