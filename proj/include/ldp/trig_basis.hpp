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

#ifndef LDP_TRIG_BASIS_HPP_
#define LDP_TRIG_BASIS_HPP_

#include <cstddef>
#include <vector>

namespace ldp {

// Smoothness class parameters for the continuous tests.
struct SobolevConfig {
  double s = 1.0;            // smoothness
  double r = 1.0;            // class radius
  int d = 1;                 // dimension of the sample space [0,1]^d
  double beta_target = 0.05; // type-II error target entering the R formulas
};

// Lattice points l in N_0^d with 0 < ||l||_2 <= R, listed in lexicographic
// order. The position of an index in `indices` is its iota value.
struct MultiIndexSet {
  double radius = 0.0;
  std::vector<std::vector<int>> indices;

  std::size_t cardinality() const { return indices.size(); }
};

MultiIndexSet multi_index_set(int d, double radius);

// Univariate orthonormal trigonometric basis:
//   phi_0 = 1, phi_{2j-1}(t) = sqrt(2) sin(2 pi j t),
//   phi_{2j}(t) = sqrt(2) cos(2 pi j t).
double trig_basis_eval_1d(int index, double t);

// Tensor-product evaluation phi_l(x) = prod_j phi_{l_j}(x_j) for x in
// [0,1]^d. |phi_l(x)| <= 2^{d/2} everywhere.
double trig_basis_eval(const std::vector<int>& index, const double* x);
double trig_basis_eval(const std::vector<int>& index,
                       const std::vector<double>& x);

}  // namespace ldp

#endif  // LDP_TRIG_BASIS_HPP_
