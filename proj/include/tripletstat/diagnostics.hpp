#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "tripletstat/estimator.hpp"
#include "tripletstat/rng.hpp"
#include "tripletstat/score.hpp"
#include "tripletstat/types.hpp"

namespace tripletstat {

// ---------------------------------------------------------------------------
// Finite-difference oracles. Central differences; step sizes follow the usual
// truncation/round-off trade-off at double precision.
// ---------------------------------------------------------------------------

namespace detail {
inline QParams bump(QParams q, int k, double delta) {
  if (k == 0) q.q1 += delta;
  if (k == 1) q.q2 += delta;
  if (k == 2) q.q3 += delta;
  return q;
}
}  // namespace detail

/// Central-difference Jacobian of the correlation map.
inline Matrix3 numeric_jacobian_phi(const QParams& q, double step = 1e-6) {
  Matrix3 j{};
  for (int k = 0; k < 3; ++k) {
    const RhoParams up = phi(detail::bump(q, k, step));
    const RhoParams dn = phi(detail::bump(q, k, -step));
    j[0][k] = (up.pi - dn.pi) / (2.0 * step);
    j[1][k] = (up.rho1 - dn.rho1) / (2.0 * step);
    j[2][k] = (up.rho2 - dn.rho2) / (2.0 * step);
  }
  return j;
}

/// Central-difference gradient of the single-observation log-likelihood.
inline Vector3 numeric_score(const QParams& q, const Indicator& x, double step = 1e-6) {
  Vector3 g{};
  for (int k = 0; k < 3; ++k)
    g[k] = (log_likelihood_single(detail::bump(q, k, step), x) -
            log_likelihood_single(detail::bump(q, k, -step), x)) /
           (2.0 * step);
  return g;
}

/// Central-difference derivative of the score.
inline Matrix3 numeric_score_derivative(const QParams& q, const Indicator& x,
                                        double step = 1e-6) {
  Matrix3 d{};
  for (int k = 0; k < 3; ++k) {
    const Vector3 up = score_psi(detail::bump(q, k, step), x);
    const Vector3 dn = score_psi(detail::bump(q, k, -step), x);
    for (int h = 0; h < 3; ++h) d[h][k] = (up[h] - dn[h]) / (2.0 * step);
  }
  return d;
}

/// Central-difference second derivative of the score.
inline Tensor333 numeric_score_second_derivative(const QParams& q, const Indicator& x,
                                                 double step = 1e-4) {
  Tensor333 t{};
  for (int l = 0; l < 3; ++l) {
    const Matrix3 up = score_derivative(detail::bump(q, l, step), x);
    const Matrix3 dn = score_derivative(detail::bump(q, l, -step), x);
    for (int h = 0; h < 3; ++h)
      for (int k = 0; k < 3; ++k) t[h][k][l] = (up[h][k] - dn[h][k]) / (2.0 * step);
  }
  return t;
}

/// |a - b| relative to the larger magnitude, floored at 1.
inline double rel_err(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) / scale;
}

/// Uniform draw from the simplex interior with all four coordinates > margin.
inline QParams random_interior_q(Splitmix64& rng, double margin = 0.05) {
  for (;;) {
    double e[4];
    double total = 0.0;
    for (double& v : e) {
      v = -std::log(1.0 - rng.uniform01());
      total += v;
    }
    const QParams q{e[1] / total, e[2] / total, e[3] / total};
    if (q.is_interior(margin)) return q;
  }
}

/// Uniform draw from { q_h in [xi, 1-xi], 1 - sum q_j >= xi }.
inline QParams random_box_q(Splitmix64& rng, double xi) {
  for (;;) {
    const QParams q{xi + (1.0 - 2.0 * xi) * rng.uniform01(),
                    xi + (1.0 - 2.0 * xi) * rng.uniform01(),
                    xi + (1.0 - 2.0 * xi) * rng.uniform01()};
    if (q.q0() >= xi) return q;
  }
}

// ---------------------------------------------------------------------------
// Diagnostic suite
// ---------------------------------------------------------------------------

struct DiagnosticCheck {
  std::string name;
  double worst = 0.0;      // largest observed error / bound slack
  double tolerance = 0.0;  // threshold the worst must stay below
  bool passed = false;
};

struct DiagnosticsReport {
  double xi = 0.1;
  std::vector<DiagnosticCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

namespace detail {
inline void push_check(DiagnosticsReport& report, const std::string& name, double worst,
                       double tolerance) {
  report.checks.push_back({name, worst, tolerance, worst <= tolerance});
}
}  // namespace detail

/// Numeric validation of the score machinery: finite-difference agreement of
/// all derivatives, the moment identities of the asymptotic theory, and the
/// uniform envelopes over the xi-box. Deterministic for a fixed seed.
inline DiagnosticsReport run_diagnostics(double xi = 0.1, std::uint64_t seed = 1234) {
  if (!(xi > 0.0) || !(xi < 1.0 / 3.0))
    throw std::invalid_argument("xi must lie in (0, 1/3)");
  DiagnosticsReport report;
  report.xi = xi;
  const auto& outcomes = indicator_outcomes();

  // score = gradient of the per-observation log-likelihood
  {
    Splitmix64 rng(substream_seed(seed, 1));
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const QParams q = random_interior_q(rng);
      const Indicator& x = outcomes[rng.below(4)];
      const Vector3 exact = score_psi(q, x);
      const Vector3 approx = numeric_score(q, x);
      for (int h = 0; h < 3; ++h) worst = std::max(worst, rel_err(exact[h], approx[h]));
    }
    detail::push_check(report, "score matches numeric gradient", worst, 1e-5);
  }

  // analytic Jacobian of the correlation map vs finite differences
  {
    Splitmix64 rng(substream_seed(seed, 2));
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const QParams q = random_interior_q(rng);
      const Matrix3 exact = jacobian_phi(q);
      const Matrix3 approx = numeric_jacobian_phi(q);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) worst = std::max(worst, rel_err(exact[r][c], approx[r][c]));
    }
    detail::push_check(report, "correlation-map jacobian matches finite differences", worst, 1e-6);
  }

  // score derivative vs finite differences
  {
    Splitmix64 rng(substream_seed(seed, 3));
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const QParams q = random_interior_q(rng);
      for (const auto& x : outcomes) {
        const Matrix3 exact = score_derivative(q, x);
        const Matrix3 approx = numeric_score_derivative(q, x);
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) worst = std::max(worst, rel_err(exact[r][c], approx[r][c]));
      }
    }
    detail::push_check(report, "score derivative matches finite differences", worst, 1e-5);
  }

  // score second derivative vs finite differences
  {
    Splitmix64 rng(substream_seed(seed, 4));
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const QParams q = random_interior_q(rng);
      for (const auto& x : outcomes) {
        const Tensor333 exact = score_second_derivative(q, x);
        const Tensor333 approx = numeric_score_second_derivative(q, x);
        for (int h = 0; h < 3; ++h)
          for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
              worst = std::max(worst, rel_err(exact[h][r][c], approx[h][r][c]));
      }
    }
    detail::push_check(report, "score second derivative matches finite differences", worst, 1e-4);
  }

  // E[psi] = 0 at the truth, by exact enumeration of the four outcomes
  {
    Splitmix64 rng(substream_seed(seed, 5));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const QParams q = random_interior_q(rng);
      Vector3 mean{};
      for (const auto& x : outcomes) {
        const double p = outcome_probability(q, x);
        const Vector3 psi = score_psi(q, x);
        for (int h = 0; h < 3; ++h) mean[h] += p * psi[h];
      }
      for (int h = 0; h < 3; ++h) worst = std::max(worst, std::abs(mean[h]));
    }
    detail::push_check(report, "score has mean zero at the truth", worst, 1e-12);
  }

  // E ||psi||^2 = 1/q1 + 1/q2 + 1/q3 + 3/q0
  {
    Splitmix64 rng(substream_seed(seed, 6));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const QParams q = random_interior_q(rng);
      double moment = 0.0;
      for (const auto& x : outcomes) {
        const Vector3 psi = score_psi(q, x);
        moment += outcome_probability(q, x) *
                  (psi[0] * psi[0] + psi[1] * psi[1] + psi[2] * psi[2]);
      }
      const double closed = 1.0 / q.q1 + 1.0 / q.q2 + 1.0 / q.q3 + 3.0 / q.q0();
      worst = std::max(worst, rel_err(moment, closed));
    }
    detail::push_check(report, "score second moment matches closed form", worst, 1e-10);
  }

  // E[dpsi]: enumeration = closed form; det = -1/(q1 q2 q3 q0); inverse = -Sigma
  {
    Splitmix64 rng(substream_seed(seed, 7));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const QParams q = random_interior_q(rng);
      Matrix3 mean{};
      for (const auto& x : outcomes) {
        const double p = outcome_probability(q, x);
        const Matrix3 d = score_derivative(q, x);
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) mean[r][c] += p * d[r][c];
      }
      const Matrix3 closed = expected_score_derivative(q);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) worst = std::max(worst, rel_err(mean[r][c], closed[r][c]));
      worst = std::max(
          worst, rel_err(determinant(mean), -1.0 / (q.q1 * q.q2 * q.q3 * q.q0())));
      const Matrix3 inv = inverse(mean);
      const Matrix3 sigma = sigma_q(q);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(inv[r][c] + sigma[r][c]));
    }
    detail::push_check(report, "expected score derivative: closed form, determinant, inverse",
                       worst, 1e-10);
  }

  // expected score brackets zero around the truth
  {
    Splitmix64 rng(substream_seed(seed, 8));
    double min_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
      const QParams q0 = random_interior_q(rng);
      for (double eps : {1e-3, 1e-2}) {
        const QParams lo{q0.q1 - eps, q0.q2 - eps, q0.q3 - eps};
        const QParams hi{q0.q1 + eps, q0.q2 + eps, q0.q3 + eps};
        const Vector3 below = expected_score(q0, lo);
        const Vector3 above = expected_score(q0, hi);
        for (int h = 0; h < 3; ++h)
          min_margin = std::min({min_margin, below[h], -above[h]});
      }
    }
    // pass requires every component strictly on the right side of zero
    detail::push_check(report, "expected score brackets zero at the truth", -min_margin, 0.0);
  }

  // uniform envelopes over the xi-box: random points plus polytope vertices
  {
    Splitmix64 rng(substream_seed(seed, 9));
    std::vector<QParams> grid;
    grid.push_back({xi, xi, xi});
    grid.push_back({1.0 - 3.0 * xi, xi, xi});
    grid.push_back({xi, 1.0 - 3.0 * xi, xi});
    grid.push_back({xi, xi, 1.0 - 3.0 * xi});
    for (int i = 0; i < 100; ++i) grid.push_back(random_box_q(rng, xi));

    // relative slack: the off-diagonal hessian bound is attained with
    // equality at the box vertices, so allow round-off in q0
    double worst_norm = -1.0;   // (||psi|| - envelope) / envelope
    double worst_entry = -1.0;  // (|entry| - envelope) / envelope
    const double psi_bound = score_norm_bound(xi);
    for (const auto& q : grid) {
      for (const auto& x : outcomes) {
        const Vector3 psi = score_psi(q, x);
        const double norm =
            std::sqrt(psi[0] * psi[0] + psi[1] * psi[1] + psi[2] * psi[2]);
        worst_norm = std::max(worst_norm, (norm - psi_bound) / psi_bound);
        const double hb = hessian_bound(xi, x);
        const Tensor333 t = score_second_derivative(q, x);
        for (int h = 0; h < 3; ++h)
          for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
              worst_entry = std::max(worst_entry, (std::abs(t[h][r][c]) - hb) / hb);
      }
    }
    detail::push_check(report, "score norm stays below its envelope", worst_norm, 1e-12);
    detail::push_check(report, "hessian entries stay below their envelope", worst_entry, 1e-12);
  }

  return report;
}

}  // namespace tripletstat
