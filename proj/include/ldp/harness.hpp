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

#ifndef LDP_HARNESS_HPP_
#define LDP_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ldp/alternatives.hpp"
#include "ldp/permutation_test.hpp"
#include "ldp/rng.hpp"

namespace ldp {

// Test methods exposed by the harness and the CLI. kStubCoin rejects with
// probability exactly gamma; it exists to exercise the harness itself.
enum class Method {
  kDiscreteNonInteractive,
  kDiscreteInteractive,
  kContNonInteractive,
  kContInteractive,
  kContAdaptiveNonInteractive,
  kContAdaptiveInteractive,
  kStubCoin
};

std::string method_name(Method method);
std::optional<Method> method_from_name(const std::string& name);
bool method_is_discrete(Method method);

// One fully specified test invocation: which test, which simulated
// distributions, and the tuning knobs.
struct RunConfig {
  Method method = Method::kDiscreteNonInteractive;
  Family family = Family::kDiscreteL1;
  int k = 1;               // cosine frequency
  int d = 2;               // categories (discrete) or dimension (continuous)
  double eps = 1.0;
  double gamma = 0.0;
  std::size_t n1 = 100;
  std::size_t n2 = 100;
  int n_permutations = 199;
  double alpha = 0.05;
  double s = 1.0;               // Sobolev smoothness
  double sobolev_radius = 1.0;  // Sobolev class radius
  double beta_target = 0.05;
  double trunc_const = 1.0;
  std::optional<double> manual_radius;
};

// Draws fresh data from the configured null/alternative pair and runs the
// configured test once.
TestOutcome run_single_test(const RunConfig& config, RngStream& stream);

// Per-cell experiment summary with a 95% Wilson interval on the rejection
// rate.
struct ExperimentResult {
  RunConfig config;
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  std::size_t rejections = 0;
  double rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Wilson score interval for k successes out of n at the given z.
std::pair<double, double> wilson_interval(std::size_t successes,
                                          std::size_t trials,
                                          double z = 1.959963984540054);

// Runs `test` once per replication on the substream derived from the
// replication index and counts rejections. Replications may run in
// parallel; the result is independent of the schedule.
std::size_t count_rejections(
    const std::function<bool(RngStream&)>& test, std::size_t reps,
    const RngStream& stream, int n_threads = 1);

ExperimentResult estimate_power(const RunConfig& config, std::size_t reps,
                                std::uint64_t seed, const RngStream& stream,
                                int n_threads = 1);

// One probe of the separation search: the tried gamma and the estimated
// type-II error at that gamma.
struct SeparationProbe {
  double gamma = 0.0;
  double beta_hat = 0.0;
};

struct SeparationResult {
  double gamma_star = 0.0;
  int iterations = 0;
  std::vector<SeparationProbe> probes;
};

// Bisection for the gamma with type-II error 1/2. Runs `test(gamma, rng)`
// r times per probe on fresh substreams, estimates beta_hat = 1 - rejection
// rate, returns early once |beta_hat - 1/2| <= delta, and otherwise probes
// the midpoint of the surviving interval for J = ceil(2 log2(1/delta))
// rounds. Assumes power is increasing in gamma; runs exactly J rounds even
// if it is not.
SeparationResult binary_search_separation(
    double delta, std::size_t reps_per_probe,
    const std::function<bool(double, RngStream&)>& test,
    const RngStream& stream, int n_threads = 1);

// Exact permutation distribution for small pools (n1 + n2 <= 8): every
// statistic value over all (n1+n2)! permutations, plus the exact p-value of
// the identity labeling.
struct ExhaustivePermutationDistribution {
  std::vector<double> statistics;
  double observed = 0.0;
  double exact_p_value = 0.0;
};

ExhaustivePermutationDistribution exhaustive_permutation_oracle(
    const PooledSample& pool, StatisticKind kind);

}  // namespace ldp

#endif  // LDP_HARNESS_HPP_
