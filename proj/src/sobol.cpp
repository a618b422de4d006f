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

#include "vqb/sobol.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace vqb {

namespace {

// Primitive polynomial degrees, encoded interior coefficients, and initial
// direction numbers for dimensions 2..6 (Antonov-Saleev tabulation).
// Dimension 1 is the identity van der Corput dimension and has no
// polynomial; every standard tabulation special-cases it with m_j = 1.
constexpr std::array<int, SobolSequence::kMaxDim - 1> kDegree = {1, 2, 3, 3, 4};
constexpr std::array<std::uint32_t, SobolSequence::kMaxDim - 1> kPoly = {
    0, 1, 1, 2, 1};
constexpr std::uint32_t kInit[4][SobolSequence::kMaxDim - 1] = {
    {1, 1, 1, 1, 1},
    {3, 1, 3, 3, 1},
    {5, 7, 7, 3, 3},
    {15, 11, 5, 15, 13},
};

}  // namespace

SobolSequence::SobolSequence(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("SobolSequence: dimension must be in [1, 6]");
  }
  for (int j = 0; j < kMaxBits; ++j) {
    direction_[j][0] = 1U << (kMaxBits - 1 - j);
  }
  for (int k = 1; k < dim_; ++k) {
    const int degree = kDegree[k - 1];
    for (int j = 0; j < degree; ++j) {
      direction_[j][k] = kInit[j][k - 1] << (kMaxBits - 1 - j);
    }
    for (int j = degree; j < kMaxBits; ++j) {
      std::uint32_t poly = kPoly[k - 1];
      std::uint32_t value = direction_[j - degree][k];
      value ^= value >> degree;
      for (int l = degree - 1; l >= 1; --l) {
        if (poly & 1U) value ^= direction_[j - l][k];
        poly >>= 1;
      }
      direction_[j][k] = value;
    }
  }
}

Eigen::VectorXd SobolSequence::next() {
  constexpr double scale = 1.0 / static_cast<double>(1U << kMaxBits);
  Eigen::VectorXd point(dim_);
  if (emitted_ == 0) {
    point.setZero();
    emitted_ = 1;
    return point;
  }
  const int bit = std::countr_one(emitted_ - 1);
  if (bit >= kMaxBits) {
    throw std::length_error("SobolSequence: sequence exhausted");
  }
  for (int k = 0; k < dim_; ++k) {
    state_[k] ^= direction_[bit][k];
    point[k] = static_cast<double>(state_[k]) * scale;
  }
  ++emitted_;
  return point;
}

std::vector<Eigen::VectorXd> sobol_points(int n, int dim, std::uint64_t /*seed*/) {
  if (n < 1) throw std::invalid_argument("sobol_points: n must be >= 1");
  constexpr double two_pi = 2.0 * M_PI;
  SobolSequence seq(dim);
  std::vector<Eigen::VectorXd> points;
  points.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    points.push_back(two_pi * seq.next());
  }
  return points;
}

}  // namespace vqb
