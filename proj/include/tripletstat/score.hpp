#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "tripletstat/types.hpp"

namespace tripletstat {

/// Indicator vector (1{S=1}, 1{S=2}, 1{S=3}) of one observed triplet.
/// At most one coordinate is 1; the all-zero vector encodes S = 0.
struct Indicator {
  std::array<std::uint8_t, 3> x{};

  int sum() const { return x[0] + x[1] + x[2]; }

  void validate() const {
    for (auto v : x)
      if (v > 1) throw std::invalid_argument("indicator entries must be 0 or 1");
    if (sum() > 1) throw std::invalid_argument("at most one indicator may be set");
  }

  /// Indicator of the outcome "triplet shows s successes".
  static Indicator from_success_count(int s) {
    if (s < 0 || s > 3) throw std::invalid_argument("success count must be in {0,1,2,3}");
    Indicator ind;
    if (s > 0) ind.x[s - 1] = 1;
    return ind;
  }
};

/// The four possible outcomes of one triplet, as indicator vectors.
inline const std::array<Indicator, 4>& indicator_outcomes() {
  static const std::array<Indicator, 4> outcomes = {
      Indicator::from_success_count(0), Indicator::from_success_count(1),
      Indicator::from_success_count(2), Indicator::from_success_count(3)};
  return outcomes;
}

/// P[outcome x] under category probabilities q.
inline double outcome_probability(const QParams& q, const Indicator& x) {
  if (x.x[0]) return q.q1;
  if (x.x[1]) return q.q2;
  if (x.x[2]) return q.q3;
  return q.q0();
}

namespace detail {
inline void require_interior(const QParams& q) {
  if (!q.is_interior())
    throw std::domain_error("q must lie in the open simplex interior");
}
}  // namespace detail

/// Normalized multinomial log-likelihood of the tally at q:
/// n^{-1} log f(n_0, ..., n_3; q). Log-factorials via lgamma.
inline double log_likelihood(const SuccessCounts& counts, const QParams& q) {
  detail::require_interior(q);
  counts.validate();
  const double n = static_cast<double>(counts.total());
  const Vector3 qv = q.as_vector();
  double ll = std::lgamma(n + 1.0) - std::lgamma(static_cast<double>(counts.counts[0]) + 1.0);
  ll += static_cast<double>(counts.counts[0]) * std::log(q.q0());
  for (int h = 0; h < 3; ++h) {
    const double nh = static_cast<double>(counts.counts[h + 1]);
    ll -= std::lgamma(nh + 1.0);
    ll += nh * std::log(qv[h]);
  }
  return ll / n;
}

/// Log-likelihood contribution of a single observation.
inline double log_likelihood_single(const QParams& q, const Indicator& x) {
  detail::require_interior(q);
  const Vector3 qv = q.as_vector();
  double ll = (1.0 - x.sum()) * std::log(q.q0());
  for (int h = 0; h < 3; ++h)
    if (x.x[h]) ll += std::log(qv[h]);
  return ll;
}

/// Score psi_{q,h}(x) = x_h / q_h - (1 - x_1 - x_2 - x_3) / q_0,
/// the gradient of the per-observation log-likelihood in q.
inline Vector3 score_psi(const QParams& q, const Indicator& x) {
  detail::require_interior(q);
  const Vector3 qv = q.as_vector();
  const double tail = (1.0 - x.sum()) / q.q0();
  Vector3 psi{};
  for (int h = 0; h < 3; ++h) psi[h] = x.x[h] / qv[h] - tail;
  return psi;
}

/// E_{q0} psi_{q,h} = q_{0,h}/q_h - (1 - sum q_{0,j}) / (1 - sum q_j).
inline Vector3 expected_score(const QParams& q0, const QParams& q) {
  detail::require_interior(q0);
  detail::require_interior(q);
  const Vector3 v0 = q0.as_vector();
  const Vector3 v = q.as_vector();
  const double tail = q0.q0() / q.q0();
  Vector3 out{};
  for (int h = 0; h < 3; ++h) out[h] = v0[h] / v[h] - tail;
  return out;
}

/// First derivative of the score, d psi_h / d q_k:
/// diagonal -x_h / q_h^2 + (x_1+x_2+x_3-1)/q_0^2, off-diagonal the same
/// without the -x_h/q_h^2 term.
inline Matrix3 score_derivative(const QParams& q, const Indicator& x) {
  detail::require_interior(q);
  const Vector3 qv = q.as_vector();
  const double q0 = q.q0();
  const double common = (x.sum() - 1.0) / (q0 * q0);
  Matrix3 d{};
  for (int h = 0; h < 3; ++h)
    for (int k = 0; k < 3; ++k)
      d[h][k] = common - (h == k ? x.x[h] / (qv[h] * qv[h]) : 0.0);
  return d;
}

using Tensor333 = std::array<Matrix3, 3>;

/// Second derivative tensor d^2 psi_h / (d q_k d q_l):
/// 2 x_h / q_h^3 on the (h,h,h) diagonal plus 2 (x_1+x_2+x_3-1)/q_0^3
/// everywhere.
inline Tensor333 score_second_derivative(const QParams& q, const Indicator& x) {
  detail::require_interior(q);
  const Vector3 qv = q.as_vector();
  const double q0 = q.q0();
  const double common = 2.0 * (x.sum() - 1.0) / (q0 * q0 * q0);
  Tensor333 t{};
  for (int h = 0; h < 3; ++h)
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) {
        double v = common;
        if (h == k && h == l) v += 2.0 * x.x[h] / (qv[h] * qv[h] * qv[h]);
        t[h][k][l] = v;
      }
  return t;
}

/// E_{q0} of the score derivative: -(diag(1/q_h) + (1/q_0) ones).
/// Its inverse is -sigma_q(q0) and its determinant -1/(q_1 q_2 q_3 q_0).
inline Matrix3 expected_score_derivative(const QParams& q0) {
  detail::require_interior(q0);
  const Vector3 v = q0.as_vector();
  const double inv0 = 1.0 / q0.q0();
  Matrix3 m{};
  for (int h = 0; h < 3; ++h)
    for (int k = 0; k < 3; ++k) m[h][k] = -inv0 - (h == k ? 1.0 / v[h] : 0.0);
  return m;
}

/// Constant envelope sqrt(3) (1 - xi) / xi^2 dominating ||psi_q(x)|| for
/// every q in the xi-box and every outcome x.
inline double score_norm_bound(double xi) {
  if (!(xi > 0.0) || !(xi < 1.0 / 3.0))
    throw std::invalid_argument("xi must lie in (0, 1/3)");
  return std::sqrt(3.0) * (1.0 - xi) / (xi * xi);
}

/// Uniform bound on the entries of the score Hessian at outcome x:
/// max of g_1, g_2, g_3 (diagonal envelopes) and g (off-diagonal envelope).
inline double hessian_bound(double xi, const Indicator& x) {
  if (!(xi > 0.0) || !(xi < 1.0 / 3.0))
    throw std::invalid_argument("xi must lie in (0, 1/3)");
  x.validate();
  const double xi3 = xi * xi * xi;
  const double scale = 2.0 * (1.0 - xi) * (1.0 - xi) * (1.0 - xi) / (xi3 * xi3);
  double worst = 2.0 / xi3 * std::abs(x.sum() - 1.0);
  for (int h = 0; h < 3; ++h) {
    const int others = x.sum() - x.x[h];
    const double gh = scale * (7.0 * x.x[h] + std::abs(others - 1.0));
    if (gh > worst) worst = gh;
  }
  return worst;
}

}  // namespace tripletstat
