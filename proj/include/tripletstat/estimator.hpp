#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>

#include "tripletstat/errors.hpp"
#include "tripletstat/types.hpp"

namespace tripletstat {

/// Tally how many triplets show s = 0,1,2,3 successes.
inline SuccessCounts count_successes(const TripletData& data) {
  data.validate();
  SuccessCounts out;
  for (const auto& row : data.rows) {
    const int s = row[0] + row[1] + row[2];
    ++out.counts[s];
  }
  return out;
}

/// Closed-form maximum likelihood estimate q_hat_h = n_h / n.
///
/// Refuses void categories (some n_s = 0) because the asymptotic covariance
/// is then unreliable; pass force = true to get the point estimate anyway.
inline QParams estimate_q(const SuccessCounts& counts, bool force = false) {
  counts.validate();
  if (!force) {
    auto voids = counts.void_categories();
    if (!voids.empty()) throw void_category_error(std::move(voids));
  }
  const double n = static_cast<double>(counts.total());
  return QParams{static_cast<double>(counts.counts[1]) / n,
                 static_cast<double>(counts.counts[2]) / n,
                 static_cast<double>(counts.counts[3]) / n};
}

/// E S / 3, the success probability implied by q.
inline double proportion_of(const QParams& q) {
  return q.q1 / 3.0 + 2.0 * q.q2 / 3.0 + q.q3;
}

/// Map category probabilities to (pi, rho1, rho2).
///
/// Uses the exchangeable-moment identities E(X1 X2) = q2/3 + q3 and
/// E(X1 X2 X3) = q3; correlations are the standardized 2nd and 3rd central
/// mixed moments.
inline RhoParams phi(const QParams& q) {
  const double pi = proportion_of(q);
  if (!(pi > 0.0) || !(pi < 1.0)) throw degenerate_proportion_error(pi);
  const double m2 = q.q2 / 3.0 + q.q3;
  const double m3 = q.q3;
  const double t = pi * (1.0 - pi);
  const double rho1 = (m2 - pi * pi) / t;
  const double rho2 = (m3 - 3.0 * pi * m2 + 2.0 * pi * pi * pi) / (t * std::sqrt(t));
  return RhoParams{pi, rho1, rho2};
}

/// Inverse of phi: recover the category probabilities from (pi, rho1, rho2).
///
/// Throws inadmissible_rho_error when the triple corresponds to no valid
/// triplet distribution (some q_s outside [0, 1]); this is the operational
/// characterization of the admissible correlation region.
inline QParams rho_to_q(const RhoParams& rho) {
  if (!(rho.pi > 0.0) || !(rho.pi < 1.0)) throw degenerate_proportion_error(rho.pi);
  const double pi = rho.pi;
  const double t = pi * (1.0 - pi);
  const double m2 = rho.rho1 * t + pi * pi;
  const double q3 = rho.rho2 * t * std::sqrt(t) + 3.0 * pi * m2 - 2.0 * pi * pi * pi;
  const double q2 = 3.0 * (m2 - q3);
  const double q1 = 3.0 * pi - 2.0 * q2 - 3.0 * q3;
  const QParams q{q1, q2, q3};
  if (!q.is_valid()) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "q = (%.6g, %.6g, %.6g), q0 = %.6g", q.q1, q.q2, q.q3,
                  q.q0());
    throw inadmissible_rho_error(buf);
  }
  return q;
}

/// Jacobian of phi, assembled by the chain rule through the moments
/// (pi, m2, m3). Row 1 is the constant (1/3, 2/3, 1).
inline Matrix3 jacobian_phi(const QParams& q) {
  const double pi = proportion_of(q);
  if (!(pi > 0.0) || !(pi < 1.0)) throw degenerate_proportion_error(pi);
  const double m2 = q.q2 / 3.0 + q.q3;
  const double m3 = q.q3;
  constexpr Vector3 dpi = {1.0 / 3.0, 2.0 / 3.0, 1.0};
  constexpr Vector3 dm2 = {0.0, 1.0 / 3.0, 1.0};
  constexpr Vector3 dm3 = {0.0, 0.0, 1.0};

  const double t = pi * (1.0 - pi);
  const double sqrt_t = std::sqrt(t);
  const double t32 = t * sqrt_t;
  const double t52 = t32 * t;
  const double num2 = m3 - 3.0 * pi * m2 + 2.0 * pi * pi * pi;

  Matrix3 j{};
  for (int k = 0; k < 3; ++k) {
    j[0][k] = dpi[k];
    // rho1 = (m2 - pi^2) / t, with dt/dq_k = (1 - 2 pi) dpi_k
    j[1][k] = ((dm2[k] - 2.0 * pi * dpi[k]) * t -
               (m2 - pi * pi) * (1.0 - 2.0 * pi) * dpi[k]) /
              (t * t);
    // rho2 = num2 / t^{3/2}
    const double dnum2 = dm3[k] - 3.0 * (dpi[k] * m2 + pi * dm2[k]) + 6.0 * pi * pi * dpi[k];
    j[2][k] = dnum2 / t32 - 1.5 * num2 * (1.0 - 2.0 * pi) * dpi[k] / t52;
  }
  return j;
}

/// Multinomial covariance of sqrt(n) (q_hat - q): diag(q) - q q^T.
inline Matrix3 sigma_q(const QParams& q) {
  const Vector3 v = q.as_vector();
  Matrix3 s{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s[i][j] = (i == j) ? v[i] * (1.0 - v[i]) : -v[i] * v[j];
  return s;
}

/// Delta-method covariance of the (pi, rho1, rho2) estimator.
struct CovarianceReport {
  Matrix3 sigma_q{};    // covariance of sqrt(n) (q_hat - q)
  Matrix3 jacobian{};   // phi'
  Matrix3 sigma_rho{};  // phi' Sigma phi'^T
  Vector3 se{};         // sqrt(diag(sigma_rho) / n)
};

inline CovarianceReport covariance_report(const QParams& q, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  CovarianceReport rep;
  rep.sigma_q = sigma_q(q);
  rep.jacobian = jacobian_phi(q);
  rep.sigma_rho = sandwich(rep.jacobian, rep.sigma_q);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!std::isfinite(rep.sigma_rho[i][j])) throw non_finite_variance_error();
  for (int i = 0; i < 3; ++i) {
    // clamp tiny negative diagonal round-off before the square root
    const double d = rep.sigma_rho[i][i] < 0.0 ? 0.0 : rep.sigma_rho[i][i];
    rep.se[i] = std::sqrt(d / static_cast<double>(n));
  }
  return rep;
}

/// Proportion of successes over all 3n outcomes. Identical to
/// phi(estimate_q(count_successes(data))).pi, but computed directly.
inline double estimate_pi_direct(const TripletData& data) {
  data.validate();
  std::int64_t successes = 0;
  for (const auto& row : data.rows) successes += row[0] + row[1] + row[2];
  return static_cast<double>(successes) / (3.0 * static_cast<double>(data.n()));
}

/// Variance of pi_hat when the 3n outcomes are (wrongly) treated as
/// independent draws: pi (1 - pi) / (3 n).
inline double srs_variance(double pi_hat, std::int64_t n) {
  if (pi_hat < 0.0 || pi_hat > 1.0) throw std::invalid_argument("pi_hat must lie in [0, 1]");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  return pi_hat * (1.0 - pi_hat) / (3.0 * static_cast<double>(n));
}

/// SE inflation of the proportion relative to the srs baseline.
inline double design_effect(double se_pi, double se_srs) {
  if (!(se_srs > 0.0)) throw zero_baseline_error();
  return se_pi / se_srs;
}

/// Upper quantile of the standard normal, accurate to machine precision.
/// Rational initial guess refined by one Halley step against erfc.
inline double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("quantile level must be in (0, 1)");

  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double u = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double u = p - 0.5;
    const double r = u * u;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double u = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
        ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  }

  constexpr double sqrt_two = 1.4142135623730951;
  constexpr double sqrt_two_pi = 2.5066282746310002;
  const double e = 0.5 * std::erfc(-x / sqrt_two) - p;
  const double u = e * sqrt_two_pi * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool truncated = false;  // an endpoint was pulled back into the natural range
};

/// Wald interval est +- z_{1-alpha/2} SE, truncated to [lo, hi].
inline ConfidenceInterval wald_interval(double estimate, double se, double level, double lo,
                                        double hi) {
  if (!(level > 0.0) || !(level < 1.0)) throw std::invalid_argument("level must be in (0, 1)");
  if (!(se >= 0.0) || !std::isfinite(se)) throw std::invalid_argument("se must be finite and >= 0");
  const double z = normal_quantile(0.5 + level / 2.0);
  ConfidenceInterval ci;
  ci.lower = estimate - z * se;
  ci.upper = estimate + z * se;
  if (ci.lower < lo) {
    ci.lower = lo;
    ci.truncated = true;
  }
  if (ci.upper > hi) {
    ci.upper = hi;
    ci.truncated = true;
  }
  return ci;
}

/// Full estimation result for one sample.
struct EstimationReport {
  std::int64_t n = 0;
  SuccessCounts counts;
  QParams q_hat;
  RhoParams rho_hat;
  CovarianceReport cov;
  double level = 0.95;
  ConfidenceInterval ci_pi, ci_rho1, ci_rho2;
  double srs_se = 0.0;
  double deff = 0.0;
  bool void_forced = false;  // estimation proceeded despite void categories
};

/// Run the whole closed-form pipeline on a tally of success counts.
inline EstimationReport estimate_report(const SuccessCounts& counts, double level = 0.95,
                                        bool force_void = false) {
  if (!(level > 0.0) || !(level < 1.0)) throw std::invalid_argument("level must be in (0, 1)");
  EstimationReport rep;
  rep.counts = counts;
  rep.n = counts.total();
  rep.level = level;
  rep.void_forced = force_void && !counts.void_categories().empty();
  rep.q_hat = estimate_q(counts, force_void);
  rep.rho_hat = phi(rep.q_hat);
  rep.cov = covariance_report(rep.q_hat, rep.n);
  rep.ci_pi = wald_interval(rep.rho_hat.pi, rep.cov.se[0], level, 0.0, 1.0);
  rep.ci_rho1 = wald_interval(rep.rho_hat.rho1, rep.cov.se[1], level, -1.0, 1.0);
  rep.ci_rho2 = wald_interval(rep.rho_hat.rho2, rep.cov.se[2], level, -1.0, 1.0);
  rep.srs_se = std::sqrt(srs_variance(rep.rho_hat.pi, rep.n));
  rep.deff = design_effect(rep.cov.se[0], rep.srs_se);
  return rep;
}

inline EstimationReport estimate_report(const TripletData& data, double level = 0.95,
                                        bool force_void = false) {
  return estimate_report(count_successes(data), level, force_void);
}

}  // namespace tripletstat
