#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "tripletstat/errors.hpp"
#include "tripletstat/estimator.hpp"
#include "tripletstat/rng.hpp"
#include "tripletstat/types.hpp"

namespace tripletstat {

/// One multinomial(n; q0..q3) tally, drawn as n independent 4-way
/// categorical draws from the stream.
inline SuccessCounts sample_counts(const QParams& q, std::int64_t n, Splitmix64& rng) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!q.is_interior())
    throw std::invalid_argument("q must assign positive probability to every category");
  const double c0 = q.q0();
  const double c1 = c0 + q.q1;
  const double c2 = c1 + q.q2;
  SuccessCounts counts;
  for (std::int64_t i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    int s;
    if (u < c0)
      s = 0;
    else if (u < c1)
      s = 1;
    else if (u < c2)
      s = 2;
    else
      s = 3;
    ++counts.counts[s];
  }
  return counts;
}

struct SimConfig {
  RhoParams rho0;
  std::int64_t n = 0;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;
};

struct MseResult {
  Vector3 mse{};   // mean squared error of (pi, rho1, rho2)
  Vector3 bias{};  // mean error of (pi, rho1, rho2)
  std::int64_t reps = 0;
  std::int64_t skipped = 0;            // replications with pi_hat in {0, 1}
  std::int64_t void_replications = 0;  // replications with some empty category
};

/// Monte Carlo study of the estimator's MSE at a fixed truth.
///
/// Each replication draws a multinomial tally from its own substream,
/// re-estimates, and accumulates squared errors. The correlation map stays
/// evaluable with empty categories as long as pi_hat avoids {0, 1}; only the
/// degenerate replications are skipped (and counted).
inline MseResult run_mse_study(const SimConfig& config) {
  if (config.n < 1) throw std::invalid_argument("n must be >= 1");
  if (config.reps < 1) throw std::invalid_argument("reps must be >= 1");
  const QParams q0 = rho_to_q(config.rho0);  // throws if rho0 is inadmissible

  MseResult result;
  result.reps = config.reps;
  Vector3 sum_err{};
  Vector3 sum_sq{};
  for (std::int64_t rep = 0; rep < config.reps; ++rep) {
    Splitmix64 rng(substream_seed(config.seed, static_cast<std::uint64_t>(rep)));
    const SuccessCounts counts = sample_counts(q0, config.n, rng);
    if (!counts.void_categories().empty()) ++result.void_replications;
    const QParams q_hat = estimate_q(counts, /*force=*/true);
    const double pi_hat = proportion_of(q_hat);
    if (!(pi_hat > 0.0) || !(pi_hat < 1.0)) {
      ++result.skipped;
      continue;
    }
    const RhoParams rho_hat = phi(q_hat);
    const Vector3 err = {rho_hat.pi - config.rho0.pi, rho_hat.rho1 - config.rho0.rho1,
                         rho_hat.rho2 - config.rho0.rho2};
    for (int j = 0; j < 3; ++j) {
      sum_err[j] += err[j];
      sum_sq[j] += err[j] * err[j];
    }
  }
  const std::int64_t effective = config.reps - result.skipped;
  if (effective == 0) throw all_skipped_error();
  for (int j = 0; j < 3; ++j) {
    result.mse[j] = sum_sq[j] / static_cast<double>(effective);
    result.bias[j] = sum_err[j] / static_cast<double>(effective);
  }
  return result;
}

struct BootstrapResult {
  Vector3 se{};  // standard deviation of the replicated (pi, rho1, rho2)
  std::array<ConfidenceInterval, 3> ci{};  // percentile intervals
  double level = 0.95;
  std::int64_t reps = 0;
  std::int64_t skipped = 0;
};

namespace detail {
/// Linear-interpolation quantile of a sorted sample.
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double h = p * (static_cast<double>(sorted.size()) - 1.0);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}
}  // namespace detail

/// Parametric bootstrap: resample tallies from multinomial(n; q_hat),
/// re-estimate each, and summarize the replicate spread.
inline BootstrapResult parametric_bootstrap(const SuccessCounts& counts, std::int64_t reps,
                                            std::uint64_t seed, double level = 0.95) {
  if (reps < 100) throw min_reps_error(reps);
  if (!(level > 0.0) || !(level < 1.0)) throw std::invalid_argument("level must be in (0, 1)");
  const QParams q_hat = estimate_q(counts);  // non-void required
  const std::int64_t n = counts.total();

  BootstrapResult result;
  result.reps = reps;
  result.level = level;
  std::array<std::vector<double>, 3> draws;
  for (auto& d : draws) d.reserve(static_cast<std::size_t>(reps));

  for (std::int64_t rep = 0; rep < reps; ++rep) {
    Splitmix64 rng(substream_seed(seed, static_cast<std::uint64_t>(rep)));
    const SuccessCounts resampled = sample_counts(q_hat, n, rng);
    const QParams q_star = estimate_q(resampled, /*force=*/true);
    const double pi_star = proportion_of(q_star);
    if (!(pi_star > 0.0) || !(pi_star < 1.0)) {
      ++result.skipped;
      continue;
    }
    const RhoParams rho_star = phi(q_star);
    draws[0].push_back(rho_star.pi);
    draws[1].push_back(rho_star.rho1);
    draws[2].push_back(rho_star.rho2);
  }

  const std::int64_t effective = reps - result.skipped;
  if (result.skipped * 2 > reps)
    throw all_skipped_error("more than half of the bootstrap replications were degenerate");

  const double alpha = 1.0 - level;
  for (int j = 0; j < 3; ++j) {
    auto& v = draws[j];
    const double m = static_cast<double>(effective);
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= m;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    result.se[j] = std::sqrt(ss / (m - 1.0));
    std::sort(v.begin(), v.end());
    result.ci[j].lower = detail::quantile_sorted(v, alpha / 2.0);
    result.ci[j].upper = detail::quantile_sorted(v, 1.0 - alpha / 2.0);
  }
  return result;
}

}  // namespace tripletstat
