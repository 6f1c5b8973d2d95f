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

#ifndef LDP_MECHANISMS_HPP_
#define LDP_MECHANISMS_HPP_

#include <cstdint>
#include <vector>

#include "ldp/rng.hpp"

namespace ldp {

/**
 * Privacy parameter epsilon with the constants that appear in hot loops,
 * computed once in extended precision.
 *
 *   omega_half = e^{eps/2} / (e^{eps/2} + 1)   keep-probability of unary bits
 *   c_eps      = (e^eps + 1) / (e^eps - 1)     binary randomized-response scale
 *   c_eps_half = (e^{eps/2} + 1) / (e^{eps/2} - 1)
 *   keep_full  = e^eps / (e^eps + 1)
 */
struct PrivacyBudget {
  double eps;
  double omega_half;
  double c_eps;
  double c_eps_half;
  double keep_full;

  explicit PrivacyBudget(double epsilon);
};

// Per-category bit vector released by the unary-encoding mechanism.
struct PrivatizedBitVector {
  std::vector<std::uint8_t> bits;
};

// Hypercube vertex released by the vector mechanisms below: every coordinate
// is +-A, except the first coordinate in the even case which is rescaled.
struct SignedVertexVector {
  std::vector<double> values;
};

// Unary encoding of category x in [1, d]: bit j equals 1{x == j} with
// probability omega_half, its complement otherwise, independently over j.
// The d-bit vector as a whole satisfies eps-LDP.
PrivatizedBitVector unary_encode(int x, int d, const PrivacyBudget& budget,
                                 RngStream& stream);

// Binary randomized response releasing +-t*c_eps with
// P(+) = (1 + proj_[-t,t](x) / (t*c_eps)) / 2. Unbiased for proj_[-t,t](x)
// and eps-LDP for every real input.
double rr_truncated(double x, double t, const PrivacyBudget& budget,
                    RngStream& stream);

// Randomized rounding of x in [-t, t] to a sign: +1 with probability
// (1 + x/t)/2, so that E[t * sign] = x. Not private by itself; used as the
// pre-rounding stage feeding the vertex samplers.
int rr_round_bounded(double x, double t, RngStream& stream);

// x plus scale * (standard Laplace draw). `scale` is sensitivity/eps.
double laplace_mechanism(double x, double scale, RngStream& stream);

// Vertex magnitudes. `v_len` is the vector length V, `bound` the magnitude
// of the rounded input coordinates.
double vertex_magnitude_odd(int v_len, double bound,
                            const PrivacyBudget& budget);
double vertex_magnitude_even(int v_len, double bound,
                             const PrivacyBudget& budget);

// Vertex mechanism for odd V: draws T ~ Bernoulli(e^eps/(e^eps+1)) and a
// uniform vertex a of {-A, A}^V with a.v >= 0 when T = 1, a.v <= 0 when
// T = 0. Input `v` must already be rounded to {-bound, +bound}^V. The
// composite round-then-sample pipeline is eps-LDP and unbiased.
SignedVertexVector vertex_sample_odd(const std::vector<double>& v,
                                     double bound,
                                     const PrivacyBudget& budget,
                                     RngStream& stream);

// Even-V variant (V >= 4). Ties a.v = 0 join the T = 1 class when the sign
// of a_1 matches the sign of v_1, and the first output coordinate is
// rescaled by (V-2)/{2(V-1)} so the mechanism stays unbiased.
SignedVertexVector vertex_sample_even(const std::vector<double>& v,
                                      double bound,
                                      const PrivacyBudget& budget,
                                      RngStream& stream);

// Parity dispatch. V = 2 is handled by padding with a constant +bound
// coordinate, running the odd V = 3 sampler and dropping the pad, which
// preserves both eps-LDP and unbiasedness.
SignedVertexVector vertex_sample(const std::vector<double>& v, double bound,
                                 const PrivacyBudget& budget,
                                 RngStream& stream);

}  // namespace ldp

#endif  // LDP_MECHANISMS_HPP_
