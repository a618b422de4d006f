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

// Shot-sampled energy estimation. One shot is one joint sample of every
// measurement group, yielding one per-shot energy E^m; the estimator returns
// the sample mean and the standard error of the mean over S shots.

#ifndef VQB_SHOTS_HPP_
#define VQB_SHOTS_HPP_

#include <Eigen/Dense>
#include <vector>

#include "vqb/circuit.hpp"
#include "vqb/pauli.hpp"
#include "vqb/rng.hpp"

namespace vqb {

// Terms measurable in one shared per-qubit basis. Every member op is either
// 'I' or equal to the basis op on that qubit; 'I' in the basis means the
// qubit is ignored by all members.
struct MeasurementGroup {
  PauliString basis;
  std::vector<PauliTerm> members;
};

// Greedy qubit-wise-commuting grouping in term order. Identity terms carry
// no variance and end up in offset.
struct GroupedTerms {
  std::vector<MeasurementGroup> groups;
  double offset = 0.0;
};

GroupedTerms group_terms(const PauliSumHamiltonian& h);

// One noisy energy estimate: mean of S per-shot energies, with the standard
// error sqrt(sum (E^m - mean)^2 / (S(S-1))).
struct MeasurementRecord {
  Eigen::VectorXd theta;
  double energy = 0.0;
  double std_error = 0.0;
  int shots = 0;
};

// Draws one per-shot energy: for each group, rotate psi into the group
// basis, sample a bitstring from the Born distribution (flipping each bit
// with probability readout_flip), and sum the member eigenvalues weighted by
// their coefficients. Returns offset plus the group contributions.
double sample_shot(const Statevector& psi, const GroupedTerms& grouped,
                   double readout_flip, Rng& rng);

// Runs exactly S shot samples of the ansatz at theta. With depolarizing
// noise active, every group of every shot gets a fresh circuit trajectory;
// otherwise the noiseless state is prepared once. Requires S >= 2 so the
// variance estimator is defined.
MeasurementRecord measure_energy(const Eigen::VectorXd& theta, int shots,
                                 const PauliSumHamiltonian& h,
                                 const NoiseConfig& noise, Rng& rng);

}  // namespace vqb

#endif  // VQB_SHOTS_HPP_
