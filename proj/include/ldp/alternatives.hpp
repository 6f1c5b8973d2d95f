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

#ifndef LDP_ALTERNATIVES_HPP_
#define LDP_ALTERNATIVES_HPP_

#include <cstddef>
#include <vector>

#include "ldp/rng.hpp"

namespace ldp {

// Alternative families used by the simulation harness. The discrete ones
// perturb the uniform pmf; the continuous ones interpolate between the
// uniform density on [0,1] and a fixed shape, so gamma = 0 is the null in
// every family.
enum class Family {
  kDiscreteL1,  // alternating 1/d +- gamma/d; L1 distance gamma
  kDiscreteL2,  // spike on cell 1;  L2 distance sqrt((d-1)/d) gamma
  kBeta,        // (1-gamma) + 5 gamma (1-x)^4
  kTriangle,    // (1-gamma) + gamma * symmetric tent with peak 2
  kCosine       // 1 + gamma cos(2 pi k x)
};

struct AlternativeSpec {
  Family family = Family::kCosine;
  double gamma = 0.0;
  int d = 1;  // category count (discrete families only)
  int k = 1;  // frequency (cosine family only)
};

bool is_discrete(Family family);

// Perturbed pmf of the discrete families; kind 1 alternates 1/d +- gamma/d
// (requires even d), kind 2 loads 1/d + (d-1)gamma/d onto the first cell.
std::vector<double> make_discrete_alternative(int d, double gamma, int kind);

// Density of the continuous families at x in [0,1].
double continuous_density(const AlternativeSpec& spec, double x);

// Largest density value, the bound of the uniform rejection envelope.
double continuous_density_max(const AlternativeSpec& spec);

// n i.i.d. draws via rejection sampling against the uniform envelope.
std::vector<double> sample_continuous(const AlternativeSpec& spec,
                                      std::size_t n, RngStream& stream);

// n i.i.d. categories in [1, d] from the given pmf (inverse CDF).
std::vector<int> sample_multinomial(const std::vector<double>& probs,
                                    std::size_t n, RngStream& stream);

}  // namespace ldp

#endif  // LDP_ALTERNATIVES_HPP_
