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

#ifndef LDP_CONTINUOUS_TESTS_HPP_
#define LDP_CONTINUOUS_TESTS_HPP_

#include <optional>
#include <vector>

#include "ldp/errors.hpp"
#include "ldp/mechanisms.hpp"
#include "ldp/permutation_test.hpp"
#include "ldp/rng.hpp"
#include "ldp/trig_basis.hpp"

namespace ldp {

// Points in [0,1]^d, row-major.
struct ContinuousSample {
  std::vector<double> data;
  std::size_t n = 0;
  int d = 1;

  ContinuousSample() = default;
  ContinuousSample(std::vector<double> points, int dim);

  const double* row(std::size_t i) const {
    return data.data() + i * static_cast<std::size_t>(d);
  }
  // Copy of rows [begin, end).
  ContinuousSample slice(std::size_t begin, std::size_t end) const;
};

// Basis-coefficient estimates aligned to a MultiIndexSet ordering.
struct CoefficientEstimates {
  std::vector<double> theta_x;
  std::vector<double> theta_y;
};

enum class InteractivityMode { kNonInteractive, kInteractive };

// Coefficient estimation shared by the interactive sub-procedures: the
// first-fold users are partitioned into one group per retained index, each
// releases a truncated randomized response of their basis evaluation, and
// the group average (scaled by V/n) estimates that coefficient.
struct FirstStageEstimates {
  MultiIndexSet set;
  CoefficientEstimates coeffs;
};

FirstStageEstimates first_stage_estimates(const ContinuousSample& x_first,
                                          const ContinuousSample& y_first,
                                          double radius,
                                          const PrivacyBudget& budget,
                                          Diagnostics& diag,
                                          RngStream& stream);

// Position of the largest |x[i] - y[i]|; ties go to the smallest position.
std::size_t argmax_abs_difference(const std::vector<double>& x,
                                  const std::vector<double>& y);

// Release stage of the first interactive sub-procedure: the estimated
// difference function evaluated at each point, projected onto [-eta, eta],
// plus (2 eta / eps) standard Laplace noise per user.
std::vector<double> trunc_release_values(const FirstStageEstimates& fs,
                                         const ContinuousSample& points,
                                         double eta,
                                         const PrivacyBudget& budget,
                                         Diagnostics& diag,
                                         RngStream& stream);

// Truncation radii from the sample sizes; eps^2 is replaced by
// min(eps^2, 1) throughout, and radii below 1 are clamped to 1 (the
// smallest nonzero lattice norm) with a diagnostic note.
double radius_noninteractive(std::size_t n1, double eps, double alpha,
                             const SobolevConfig& sobolev);
double radius_trunc(std::size_t n1, std::size_t n2, double eps, double alpha,
                    const SobolevConfig& sobolev);
double radius_local(std::size_t n1, std::size_t n2, double eps, double alpha,
                    const SobolevConfig& sobolev);

// Non-interactive test: each user's basis evaluations are rounded to signs
// and passed through the parity-matched hypercube-vertex mechanism; the
// calibration is a permutation test on the cross-sample U-statistic.
TestOutcome test_cont_noninteractive(const ContinuousSample& x,
                                     const ContinuousSample& y,
                                     const PrivacyBudget& budget,
                                     const SobolevConfig& sobolev,
                                     int n_permutations, double alpha,
                                     RngStream& stream,
                                     std::optional<double> manual_radius = {});

// First interactive sub-procedure: coefficient estimates from the first
// fold (one index per user group, truncated randomized response), then each
// second-fold user releases the estimated difference function evaluated at
// their point, truncated at eta, plus (2 eta / eps) Laplace noise. Linear
// statistic, permutation calibrated at alpha_level.
TestOutcome proc_trunc(const ContinuousSample& x_first,
                       const ContinuousSample& y_first,
                       const ContinuousSample& x_second,
                       const ContinuousSample& y_second, double eta,
                       const PrivacyBudget& budget,
                       const SobolevConfig& sobolev, int n_permutations,
                       double alpha_level, RngStream& stream,
                       std::optional<double> manual_radius = {});

// Second interactive sub-procedure: picks the index with the largest
// estimated coefficient difference (ties go to the smallest position in the
// lexicographic order) and runs a U-statistic permutation test on
// randomized responses of that single basis function.
TestOutcome proc_local(const ContinuousSample& x_first,
                       const ContinuousSample& y_first,
                       const ContinuousSample& x_second,
                       const ContinuousSample& y_second,
                       const PrivacyBudget& budget,
                       const SobolevConfig& sobolev, int n_permutations,
                       double alpha_level, RngStream& stream,
                       std::optional<double> manual_radius = {});

// Combined interactive test: proc_local at level alpha/2 on the first half
// of the data, and proc_trunc at level alpha/(2|J|) on one slice per
// truncation level eta_j, j in {1..log2(V)}. Rejects when any sub-test
// rejects; the reported p-value is the Bonferroni-style diagnostic
// min(2 p_local, 2|J| p_trunc_j) clamped to (0, 1].
TestOutcome test_cont_interactive(const ContinuousSample& x,
                                  const ContinuousSample& y,
                                  const PrivacyBudget& budget,
                                  const SobolevConfig& sobolev,
                                  int n_permutations, double alpha,
                                  double constant_c, RngStream& stream,
                                  std::optional<double> manual_radius = {});

// Smoothness-adaptive wrapper: splits the data into k_max folds, forces the
// radius to 2^k on fold k, and Bonferroni-corrects the level. A fold too
// small for the underlying test contributes a non-rejection and a
// diagnostic note.
TestOutcome test_adaptive(const ContinuousSample& x,
                          const ContinuousSample& y,
                          const PrivacyBudget& budget,
                          const SobolevConfig& sobolev, int n_permutations,
                          double alpha, InteractivityMode mode,
                          RngStream& stream, double constant_c = 1.0);

int adaptive_fold_count(std::size_t n1, double eps, InteractivityMode mode);

}  // namespace ldp

#endif  // LDP_CONTINUOUS_TESTS_HPP_
