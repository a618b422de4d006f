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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "vqb/sobol.hpp"

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
}

TEST_CASE("first point is the origin, all points stay in [0, 2pi]") {
  const auto pts = vqb::sobol_points(512, 6, 0);
  REQUIRE(pts.size() == 512);
  CHECK(pts[0].norm() == 0.0);
  for (const auto& p : pts) {
    REQUIRE(p.size() == 6);
    for (int i = 0; i < 6; ++i) {
      CHECK(p(i) >= 0.0);
      CHECK(p(i) <= kTau);
    }
  }
}

TEST_CASE("dimension 0 reproduces the Gray-code van der Corput sequence") {
  const auto pts = vqb::sobol_points(5, 1, 0);
  const double expected[5] = {0.0, 0.5, 0.75, 0.25, 0.375};
  for (int i = 0; i < 5; ++i) {
    CHECK(std::abs(pts[i](0) / kTau - expected[i]) < 1e-12);
  }
}

TEST_CASE("deterministic and independent of the seed argument") {
  const auto a = vqb::sobol_points(64, 6, 0);
  const auto b = vqb::sobol_points(64, 6, 0);
  const auto c = vqb::sobol_points(64, 6, 987654321);
  for (int i = 0; i < 64; ++i) {
    CHECK(a[i] == b[i]);
    CHECK(a[i] == c[i]);
  }
}

TEST_CASE("256 points fill every quadrant of the square with 64 +- 8") {
  const auto pts = vqb::sobol_points(256, 2, 0);
  int counts[4] = {0, 0, 0, 0};
  for (const auto& p : pts) {
    const int qx = p(0) < std::numbers::pi ? 0 : 1;
    const int qy = p(1) < std::numbers::pi ? 0 : 1;
    ++counts[2 * qx + qy];
  }
  for (int q = 0; q < 4; ++q) {
    CHECK(counts[q] >= 56);
    CHECK(counts[q] <= 72);
  }
}

TEST_CASE("power-of-two prefixes balance the halves of every coordinate") {
  const auto pts = vqb::sobol_points(256, 6, 0);
  for (int d = 0; d < 6; ++d) {
    int low = 0;
    for (const auto& p : pts) low += p(d) < std::numbers::pi ? 1 : 0;
    CHECK(low == 128);
  }
}

TEST_CASE("successive prefixes are nested") {
  const auto a = vqb::sobol_points(16, 3, 0);
  const auto b = vqb::sobol_points(64, 3, 0);
  for (int i = 0; i < 16; ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("dimension bounds are enforced") {
  CHECK_THROWS_AS(vqb::sobol_points(4, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(vqb::sobol_points(4, 7, 0), std::invalid_argument);
  CHECK_NOTHROW(vqb::sobol_points(4, 6, 0));
}
