// Copyright 2026 The ldptest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldp/alternatives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ldp {

bool is_discrete(Family family) {
  return family == Family::kDiscreteL1 || family == Family::kDiscreteL2;
}

std::vector<double> make_discrete_alternative(int d, double gamma, int kind) {
  if (d < 1) {
    throw std::invalid_argument("make_discrete_alternative: d must be >= 1");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument(
        "make_discrete_alternative: gamma must lie in [0, 1]");
  }
  const double base = 1.0 / static_cast<double>(d);
  std::vector<double> probs(static_cast<std::size_t>(d), base);
  if (kind == 1) {
    if (d % 2 != 0) {
      throw std::invalid_argument(
          "make_discrete_alternative: kind 1 needs even d");
    }
    for (int j = 0; j < d; ++j) {
      probs[static_cast<std::size_t>(j)] +=
          (j % 2 == 0 ? gamma : -gamma) * base;
    }
  } else if (kind == 2) {
    probs[0] += static_cast<double>(d - 1) * gamma * base;
    for (int j = 1; j < d; ++j) {
      probs[static_cast<std::size_t>(j)] -= gamma * base;
    }
  } else {
    throw std::invalid_argument("make_discrete_alternative: kind must be 1|2");
  }
  return probs;
}

double continuous_density(const AlternativeSpec& spec, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("continuous_density: x outside [0,1]");
  }
  const double g = spec.gamma;
  switch (spec.family) {
    case Family::kBeta:
      return (1.0 - g) + 5.0 * g * std::pow(1.0 - x, 4);
    case Family::kTriangle:
      return (1.0 - g) + g * (x < 0.5 ? 4.0 * x : 4.0 * (1.0 - x));
    case Family::kCosine:
      return 1.0 + g * std::cos(2.0 * std::numbers::pi * spec.k * x);
    default:
      throw std::invalid_argument("continuous_density: discrete family");
  }
}

double continuous_density_max(const AlternativeSpec& spec) {
  switch (spec.family) {
    case Family::kBeta:
      return 1.0 + 4.0 * spec.gamma;
    case Family::kTriangle:
    case Family::kCosine:
      return 1.0 + spec.gamma;
    default:
      throw std::invalid_argument("continuous_density_max: discrete family");
  }
}

std::vector<double> sample_continuous(const AlternativeSpec& spec,
                                      std::size_t n, RngStream& stream) {
  if (!(spec.gamma >= 0.0 && spec.gamma <= 1.0)) {
    throw std::invalid_argument("sample_continuous: gamma must be in [0, 1]");
  }
  const double bound = continuous_density_max(spec);
  std::vector<double> out;
  out.reserve(n);
  while (out.size() < n) {
    const double x = stream.uniform01();
    const double u = stream.uniform01();
    if (u * bound <= continuous_density(spec, x)) {
      out.push_back(x);
    }
  }
  return out;
}

std::vector<int> sample_multinomial(const std::vector<double>& probs,
                                    std::size_t n, RngStream& stream) {
  if (probs.empty()) {
    throw std::invalid_argument("sample_multinomial: empty pmf");
  }
  std::vector<int> out;
  out.reserve(n);
  const int d = static_cast<int>(probs.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double u = stream.uniform01();
    double cum = 0.0;
    int value = d;  // guard against accumulated rounding
    for (int j = 0; j < d; ++j) {
      cum += probs[static_cast<std::size_t>(j)];
      if (u < cum) {
        value = j + 1;
        break;
      }
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace ldp
