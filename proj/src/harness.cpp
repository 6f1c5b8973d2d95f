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

#include "ldp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ldp/continuous_tests.hpp"
#include "ldp/discrete_tests.hpp"
#include "ldp/parallel.hpp"

namespace ldp {

std::string method_name(Method method) {
  switch (method) {
    case Method::kDiscreteNonInteractive: return "discrete-ni";
    case Method::kDiscreteInteractive: return "discrete-i";
    case Method::kContNonInteractive: return "cont-ni";
    case Method::kContInteractive: return "cont-i";
    case Method::kContAdaptiveNonInteractive: return "cont-adapt-ni";
    case Method::kContAdaptiveInteractive: return "cont-adapt-i";
    case Method::kStubCoin: return "stub-coin";
  }
  return "unknown";
}

std::optional<Method> method_from_name(const std::string& name) {
  for (const Method m :
       {Method::kDiscreteNonInteractive, Method::kDiscreteInteractive,
        Method::kContNonInteractive, Method::kContInteractive,
        Method::kContAdaptiveNonInteractive,
        Method::kContAdaptiveInteractive, Method::kStubCoin}) {
    if (method_name(m) == name) {
      return m;
    }
  }
  return std::nullopt;
}

bool method_is_discrete(Method method) {
  return method == Method::kDiscreteNonInteractive ||
         method == Method::kDiscreteInteractive;
}

namespace {

int discrete_kind(Family family) {
  return family == Family::kDiscreteL1 ? 1 : 2;
}

TestOutcome run_discrete(const RunConfig& config, RngStream& stream) {
  const std::vector<double> null_pmf(static_cast<std::size_t>(config.d),
                                     1.0 / config.d);
  const std::vector<double> alt_pmf = make_discrete_alternative(
      config.d, config.gamma, discrete_kind(config.family));
  RngStream data_stream = stream.derive(1);
  const DiscreteSample x(sample_multinomial(null_pmf, config.n1, data_stream),
                         config.d);
  const DiscreteSample y(sample_multinomial(alt_pmf, config.n2, data_stream),
                         config.d);
  const PrivacyBudget budget(config.eps);
  RngStream test_stream = stream.derive(2);
  if (config.method == Method::kDiscreteNonInteractive) {
    return test_discrete_noninteractive(x, y, budget, config.n_permutations,
                                        config.alpha, test_stream);
  }
  return test_discrete_interactive(x, y, budget, config.n_permutations,
                                   config.alpha, test_stream,
                                   config.trunc_const);
}

TestOutcome run_continuous(const RunConfig& config, RngStream& stream) {
  if (config.d != 1) {
    throw std::invalid_argument(
        "harness: the continuous simulation families are univariate");
  }
  AlternativeSpec null_spec{Family::kCosine, 0.0, 1, 1};
  AlternativeSpec alt_spec{config.family, config.gamma, 1, config.k};
  RngStream data_stream = stream.derive(1);
  const ContinuousSample x(sample_continuous(null_spec, config.n1, data_stream),
                           1);
  const ContinuousSample y(sample_continuous(alt_spec, config.n2, data_stream),
                           1);
  const PrivacyBudget budget(config.eps);
  const SobolevConfig sobolev{config.s, config.sobolev_radius, 1,
                              config.beta_target};
  RngStream test_stream = stream.derive(2);
  switch (config.method) {
    case Method::kContNonInteractive:
      return test_cont_noninteractive(x, y, budget, sobolev,
                                      config.n_permutations, config.alpha,
                                      test_stream, config.manual_radius);
    case Method::kContInteractive:
      return test_cont_interactive(x, y, budget, sobolev,
                                   config.n_permutations, config.alpha,
                                   config.trunc_const, test_stream,
                                   config.manual_radius);
    case Method::kContAdaptiveNonInteractive:
      return test_adaptive(x, y, budget, sobolev, config.n_permutations,
                           config.alpha, InteractivityMode::kNonInteractive,
                           test_stream, config.trunc_const);
    case Method::kContAdaptiveInteractive:
      return test_adaptive(x, y, budget, sobolev, config.n_permutations,
                           config.alpha, InteractivityMode::kInteractive,
                           test_stream, config.trunc_const);
    default:
      throw std::invalid_argument("harness: not a continuous method");
  }
}

}  // namespace

TestOutcome run_single_test(const RunConfig& config, RngStream& stream) {
  if (config.method == Method::kStubCoin) {
    TestOutcome out;
    out.reject = stream.bernoulli(config.gamma);
    out.p_value = out.reject ? 0.0 : 1.0;
    return out;
  }
  if (method_is_discrete(config.method)) {
    if (!is_discrete(config.family)) {
      throw std::invalid_argument(
          "harness: discrete method needs family l1 or l2");
    }
    return run_discrete(config, stream);
  }
  if (is_discrete(config.family)) {
    throw std::invalid_argument(
        "harness: continuous method needs family beta/triangle/cosine");
  }
  return run_continuous(config, stream);
}

std::pair<double, double> wilson_interval(std::size_t successes,
                                          std::size_t trials, double z) {
  if (trials == 0) {
    throw std::invalid_argument("wilson_interval: trials must be >= 1");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // The endpoints are exact at the boundary rates; keep them free of
  // floating-point residue so degenerate experiments report [x, 1] / [0, x].
  const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double high =
      successes == trials ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

std::size_t count_rejections(const std::function<bool(RngStream&)>& test,
                             std::size_t reps, const RngStream& stream,
                             int n_threads) {
  if (reps == 0) {
    throw std::invalid_argument("count_rejections: reps must be >= 1");
  }
  std::vector<std::uint8_t> rejected(reps, 0);
  parallel_for(reps, n_threads, [&](std::size_t rep) {
    RngStream rep_stream = stream.derive(rep);
    rejected[rep] = test(rep_stream) ? 1 : 0;
  });
  return static_cast<std::size_t>(
      std::accumulate(rejected.begin(), rejected.end(), std::size_t{0}));
}

ExperimentResult estimate_power(const RunConfig& config, std::size_t reps,
                                std::uint64_t seed, const RngStream& stream,
                                int n_threads) {
  ExperimentResult result;
  result.config = config;
  result.seed = seed;
  result.reps = reps;
  result.rejections = count_rejections(
      [&config](RngStream& rep_stream) {
        return run_single_test(config, rep_stream).reject;
      },
      reps, stream, n_threads);
  result.rate =
      static_cast<double>(result.rejections) / static_cast<double>(reps);
  const auto ci = wilson_interval(result.rejections, reps);
  result.ci_low = ci.first;
  result.ci_high = ci.second;
  return result;
}

SeparationResult binary_search_separation(
    double delta, std::size_t reps_per_probe,
    const std::function<bool(double, RngStream&)>& test,
    const RngStream& stream, int n_threads) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument(
        "binary_search_separation: delta must be in (0, 1)");
  }
  if (reps_per_probe == 0) {
    throw std::invalid_argument(
        "binary_search_separation: reps_per_probe must be >= 1");
  }
  const int max_iters =
      static_cast<int>(std::ceil(2.0 * std::log2(1.0 / delta)));

  SeparationResult result;
  double lower = 0.0;
  double upper = 1.0;
  double gamma = 0.5;
  for (int j = 1; j <= max_iters; ++j) {
    gamma = 0.5 * (lower + upper);
    const RngStream probe_stream = stream.derive(static_cast<std::uint64_t>(j));
    const std::size_t rejections = count_rejections(
        [&test, gamma](RngStream& rep) { return test(gamma, rep); },
        reps_per_probe, probe_stream, n_threads);
    const double beta_hat = 1.0 - static_cast<double>(rejections) /
                                      static_cast<double>(reps_per_probe);
    result.probes.push_back({gamma, beta_hat});
    result.iterations = j;
    if (std::abs(beta_hat - 0.5) <= delta) {
      break;
    }
    if (beta_hat > 0.5) {
      lower = gamma;  // power too low, search upward
    } else {
      upper = gamma;
    }
  }
  result.gamma_star = gamma;
  return result;
}

ExhaustivePermutationDistribution exhaustive_permutation_oracle(
    const PooledSample& pool, StatisticKind kind) {
  const std::size_t n = pool.rows();
  if (n > 8) {
    throw std::invalid_argument(
        "exhaustive_permutation_oracle: pool too large (n1 + n2 <= 8)");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  ExhaustivePermutationDistribution dist;
  dist.observed = kind == StatisticKind::kUStatistic
                      ? permuted_u_statistic(pool, perm)
                      : permuted_linear_statistic(pool, perm);
  do {
    dist.statistics.push_back(kind == StatisticKind::kUStatistic
                                  ? permuted_u_statistic(pool, perm)
                                  : permuted_linear_statistic(pool, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::size_t count = 0;
  for (const double v : dist.statistics) {
    if (dist.observed <= v) ++count;
  }
  dist.exact_p_value =
      static_cast<double>(count) / static_cast<double>(dist.statistics.size());
  return dist;
}

}  // namespace ldp
