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

#include "ldp/trig_basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ldp {

namespace {

void enumerate(int d, double radius_sq, std::vector<int>& current,
               double norm_sq, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == d) {
    if (norm_sq > 0.0) {
      out.push_back(current);
    }
    return;
  }
  for (int l = 0;; ++l) {
    const double next = norm_sq + static_cast<double>(l) * l;
    if (next > radius_sq) {
      break;
    }
    current.push_back(l);
    enumerate(d, radius_sq, current, next, out);
    current.pop_back();
  }
}

}  // namespace

MultiIndexSet multi_index_set(int d, double radius) {
  if (d < 1) {
    throw std::invalid_argument("multi_index_set: d must be >= 1");
  }
  MultiIndexSet set;
  set.radius = radius;
  if (radius < 1.0) {
    return set;  // no nonzero lattice point fits; callers clamp
  }
  std::vector<int> current;
  current.reserve(static_cast<std::size_t>(d));
  enumerate(d, radius * radius, current, 0.0, set.indices);
  return set;
}

double trig_basis_eval_1d(int index, double t) {
  if (index < 0) {
    throw std::invalid_argument("trig_basis_eval: negative index");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("trig_basis_eval: point outside [0,1]");
  }
  if (index == 0) {
    return 1.0;
  }
  const double sqrt2 = std::numbers::sqrt2;
  const int j = (index + 1) / 2;
  const double angle = 2.0 * std::numbers::pi * j * t;
  return index % 2 == 1 ? sqrt2 * std::sin(angle) : sqrt2 * std::cos(angle);
}

double trig_basis_eval(const std::vector<int>& index, const double* x) {
  double prod = 1.0;
  for (std::size_t j = 0; j < index.size(); ++j) {
    prod *= trig_basis_eval_1d(index[j], x[j]);
  }
  return prod;
}

double trig_basis_eval(const std::vector<int>& index,
                       const std::vector<double>& x) {
  if (index.size() != x.size()) {
    throw std::invalid_argument("trig_basis_eval: dimension mismatch");
  }
  return trig_basis_eval(index, x.data());
}

}  // namespace ldp
