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
#include <array>
#include <cstdint>
#include <vector>

namespace vqb {

/// Gray-code Sobol sequence over [0,1)^d, up to 6 dimensions, unscrambled.
/// The first emitted point is the all-zeros corner.
class SobolSequence {
 public:
  static constexpr int kMaxDim = 6;

  explicit SobolSequence(int dim);

  Eigen::VectorXd next();

  int dim() const { return dim_; }

 private:
  static constexpr int kMaxBits = 30;

  int dim_;
  std::uint64_t emitted_ = 0;
  std::array<std::uint32_t, kMaxDim> state_{};
  // direction_[bit][dim], already shifted into the top kMaxBits positions
  std::array<std::array<std::uint32_t, kMaxDim>, kMaxBits> direction_{};
};

/// First n Sobol points scaled to [0,2pi]^d. The sequence is unscrambled and
/// deterministic; `seed` is accepted for interface stability but does not
/// alter the points.
std::vector<Eigen::VectorXd> sobol_points(int n, int dim, std::uint64_t seed);

}  // namespace vqb
