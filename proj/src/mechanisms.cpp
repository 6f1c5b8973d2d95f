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

#include "ldp/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ldp {

PrivacyBudget::PrivacyBudget(double epsilon) : eps(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("PrivacyBudget: eps must be finite and > 0");
  }
  const long double e = static_cast<long double>(epsilon);
  omega_half = static_cast<double>(1.0L / (1.0L + std::exp(-e / 2.0L)));
  c_eps = static_cast<double>(1.0L / std::tanh(e / 2.0L));
  c_eps_half = static_cast<double>(1.0L / std::tanh(e / 4.0L));
  keep_full = static_cast<double>(1.0L / (1.0L + std::exp(-e)));
}

PrivatizedBitVector unary_encode(int x, int d, const PrivacyBudget& budget,
                                 RngStream& stream) {
  if (d < 1) {
    throw std::invalid_argument("unary_encode: d must be >= 1");
  }
  if (x < 1 || x > d) {
    throw std::invalid_argument("unary_encode: category out of [1, d]");
  }
  PrivatizedBitVector out;
  out.bits.resize(static_cast<std::size_t>(d));
  for (int j = 1; j <= d; ++j) {
    const std::uint8_t truth = (x == j) ? 1 : 0;
    const bool keep = stream.uniform01() < budget.omega_half;
    out.bits[static_cast<std::size_t>(j - 1)] =
        keep ? truth : static_cast<std::uint8_t>(1 - truth);
  }
  return out;
}

double rr_truncated(double x, double t, const PrivacyBudget& budget,
                    RngStream& stream) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("rr_truncated: width t must be > 0");
  }
  const double proj = std::clamp(x, -t, t);
  const double magnitude = t * budget.c_eps;
  const double p_plus = 0.5 * (1.0 + proj / magnitude);
  return stream.uniform01() < p_plus ? magnitude : -magnitude;
}

int rr_round_bounded(double x, double t, RngStream& stream) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("rr_round_bounded: width t must be > 0");
  }
  if (std::abs(x) > t) {
    throw std::invalid_argument("rr_round_bounded: |x| must be <= t");
  }
  const double p_plus = 0.5 * (1.0 + x / t);
  return stream.uniform01() < p_plus ? 1 : -1;
}

double laplace_mechanism(double x, double scale, RngStream& stream) {
  if (!(scale >= 0.0)) {
    throw std::invalid_argument("laplace_mechanism: scale must be >= 0");
  }
  if (scale == 0.0) {
    return x;
  }
  return x + scale * stream.laplace_std();
}

double vertex_magnitude_odd(int v_len, double bound,
                            const PrivacyBudget& budget) {
  if (v_len < 1 || v_len % 2 == 0) {
    throw std::invalid_argument("vertex_magnitude_odd: V must be odd, >= 1");
  }
  // 2^{V-1} [((V-1)/2)!]^2 / (V-1)!  ==  4^k / C(2k, k) with k = (V-1)/2.
  const int k = (v_len - 1) / 2;
  double binom = 1.0;
  for (int i = 1; i <= k; ++i) {
    binom *= static_cast<double>(k + i) / static_cast<double>(i);
  }
  return bound * budget.c_eps * std::pow(4.0, k) / binom;
}

double vertex_magnitude_even(int v_len, double bound,
                             const PrivacyBudget& budget) {
  if (v_len < 4 || v_len % 2 != 0) {
    throw std::invalid_argument("vertex_magnitude_even: V must be even, >= 4");
  }
  // 2^{V-1} [(V/2 - 1)!]^2 (V/2) / {(V-2)! (V-2)}
  //   == 2^{V-1} (V/2) / {(V-2) C(V-2, V/2-1)},
  // the constant that makes the tie-breaking mechanism unbiased (verified
  // against exhaustive enumeration for V in {4, 6, 8}).
  const int k = v_len / 2 - 1;
  double binom = 1.0;  // C(2k, k)
  for (int i = 1; i <= k; ++i) {
    binom *= static_cast<double>(k + i) / static_cast<double>(i);
  }
  const double f = std::ldexp(1.0, v_len - 1) * (v_len / 2.0) /
                   (static_cast<double>(v_len - 2) * binom);
  return bound * budget.c_eps * f;
}

namespace {

std::vector<int> sign_pattern(const std::vector<double>& v) {
  std::vector<int> signs(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] == 0.0) {
      throw std::invalid_argument(
          "vertex sampler: input coordinates must be pre-rounded to +-bound");
    }
    signs[j] = v[j] > 0.0 ? 1 : -1;
  }
  return signs;
}

// Uniform vertex of {-1, +1}^V conditioned on the positive (T = 1) or
// negative (T = 0) class. Rejection sampling; each class holds exactly half
// of the 2^V vertices, so two draws are expected.
std::vector<int> draw_conditioned_vertex(const std::vector<int>& signs,
                                         bool positive_class, bool even_case,
                                         RngStream& stream) {
  const std::size_t v_len = signs.size();
  std::vector<int> vertex(v_len);
  for (;;) {
    std::uint64_t word = 0;
    int bits_left = 0;
    long dot = 0;
    for (std::size_t j = 0; j < v_len; ++j) {
      if (bits_left == 0) {
        word = stream.next_u64();
        bits_left = 64;
      }
      vertex[j] = (word & 1u) ? 1 : -1;
      word >>= 1;
      --bits_left;
      dot += vertex[j] * signs[j];
    }
    bool in_positive;
    if (dot != 0) {
      in_positive = dot > 0;
    } else {
      // Odd V cannot tie (dot is a sum of an odd number of +-1 terms).
      in_positive = even_case && vertex[0] == signs[0];
    }
    if (in_positive == positive_class) {
      return vertex;
    }
  }
}

}  // namespace

SignedVertexVector vertex_sample_odd(const std::vector<double>& v,
                                     double bound,
                                     const PrivacyBudget& budget,
                                     RngStream& stream) {
  const int v_len = static_cast<int>(v.size());
  if (v_len < 1 || v_len % 2 == 0) {
    throw std::invalid_argument(
        "vertex_sample_odd: V must be odd (use the even variant)");
  }
  const std::vector<int> signs = sign_pattern(v);
  const bool positive = stream.uniform01() < budget.keep_full;
  const std::vector<int> vertex =
      draw_conditioned_vertex(signs, positive, /*even_case=*/false, stream);
  const double magnitude = vertex_magnitude_odd(v_len, bound, budget);
  SignedVertexVector out;
  out.values.resize(static_cast<std::size_t>(v_len));
  for (int j = 0; j < v_len; ++j) {
    out.values[static_cast<std::size_t>(j)] =
        magnitude * vertex[static_cast<std::size_t>(j)];
  }
  return out;
}

SignedVertexVector vertex_sample_even(const std::vector<double>& v,
                                      double bound,
                                      const PrivacyBudget& budget,
                                      RngStream& stream) {
  const int v_len = static_cast<int>(v.size());
  if (v_len % 2 != 0) {
    throw std::invalid_argument(
        "vertex_sample_even: V must be even (use the odd variant)");
  }
  if (v_len < 4) {
    throw std::invalid_argument(
        "vertex_sample_even: V = 2 is handled by vertex_sample via padding");
  }
  const std::vector<int> signs = sign_pattern(v);
  const bool positive = stream.uniform01() < budget.keep_full;
  const std::vector<int> vertex =
      draw_conditioned_vertex(signs, positive, /*even_case=*/true, stream);
  const double magnitude = vertex_magnitude_even(v_len, bound, budget);
  SignedVertexVector out;
  out.values.resize(static_cast<std::size_t>(v_len));
  for (int j = 0; j < v_len; ++j) {
    out.values[static_cast<std::size_t>(j)] =
        magnitude * vertex[static_cast<std::size_t>(j)];
  }
  out.values[0] *= static_cast<double>(v_len - 2) / (2.0 * (v_len - 1));
  return out;
}

SignedVertexVector vertex_sample(const std::vector<double>& v, double bound,
                                 const PrivacyBudget& budget,
                                 RngStream& stream) {
  if (v.empty()) {
    throw std::invalid_argument("vertex_sample: empty input");
  }
  if (v.size() == 2) {
    std::vector<double> padded = v;
    padded.push_back(bound);
    SignedVertexVector out = vertex_sample_odd(padded, bound, budget, stream);
    out.values.pop_back();
    return out;
  }
  return v.size() % 2 == 1 ? vertex_sample_odd(v, bound, budget, stream)
                           : vertex_sample_even(v, bound, budget, stream);
}

}  // namespace ldp
