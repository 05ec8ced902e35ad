#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "tripletstat/diagnostics.hpp"
#include "tripletstat/estimator.hpp"
#include "tripletstat/score.hpp"

using namespace tripletstat;
using Catch::Approx;
using test_helpers::table2_counts;

namespace {
const QParams kUniform{0.25, 0.25, 0.25};
const Indicator kNone = Indicator::from_success_count(0);
const Indicator kOne = Indicator::from_success_count(1);
}  // namespace

TEST_CASE("indicator outcomes") {
  CHECK(indicator_outcomes().size() == 4);
  CHECK(kNone.sum() == 0);
  CHECK(kOne.x == std::array<std::uint8_t, 3>{1, 0, 0});
  Indicator bad;
  bad.x = {1, 1, 0};
  REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
  REQUIRE_THROWS_AS(Indicator::from_success_count(4), std::invalid_argument);

  double total = 0.0;
  for (const auto& x : indicator_outcomes()) total += outcome_probability(kUniform, x);
  CHECK(total == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("log_likelihood") {
  SECTION("maximized at the closed-form estimate over a simplex grid") {
    const SuccessCounts counts = table2_counts();
    const double at_mle = log_likelihood(counts, estimate_q(counts));
    for (int i = 1; i <= 40; ++i)
      for (int j = 1; j <= 40 - i; ++j)
        for (int k = 1; k <= 40 - i - j; ++k)
          REQUIRE(at_mle >= log_likelihood(counts, QParams{i / 41.0, j / 41.0, k / 41.0}) - 1e-12);
  }
  SECTION("single-category mass is monotone in q0") {
    SuccessCounts c;
    c.counts = {5, 0, 0, 0};
    const double closer = log_likelihood(c, QParams{0.01, 0.01, 0.01});
    const double farther = log_likelihood(c, QParams{0.05, 0.05, 0.05});
    CHECK(closer > farther);
    CHECK(closer == Approx(std::log(0.97)).epsilon(1e-12));
  }
  SECTION("permutation symmetry in categories") {
    SuccessCounts c = table2_counts();
    SuccessCounts swapped = c;
    std::swap(swapped.counts[1], swapped.counts[2]);
    const QParams q{0.1, 0.3, 0.2};
    const QParams q_swapped{0.3, 0.1, 0.2};
    CHECK(log_likelihood(c, q) == Approx(log_likelihood(swapped, q_swapped)).epsilon(1e-14));
  }
  SECTION("boundary q is rejected") {
    REQUIRE_THROWS_AS(log_likelihood(table2_counts(), QParams{0.0, 0.5, 0.25}),
                      std::domain_error);
  }
}

TEST_CASE("score_psi") {
  SECTION("direct value at the uniform point") {
    const Vector3 psi = score_psi(kUniform, kOne);
    CHECK(psi[0] == Approx(4.0).epsilon(1e-14));
    CHECK(psi[1] == Approx(0.0).margin(1e-14));
    CHECK(psi[2] == Approx(0.0).margin(1e-14));
  }
  SECTION("all-zero indicator gives the common tail term") {
    const Vector3 psi = score_psi(kUniform, kNone);
    for (double v : psi) CHECK(v == Approx(-4.0).epsilon(1e-14));
  }
  SECTION("empirical score vanishes at the MLE") {
    const SuccessCounts counts = table2_counts();
    const QParams q_hat = estimate_q(counts);
    Vector3 sum{};
    for (int s = 0; s < 4; ++s) {
      const Vector3 psi = score_psi(q_hat, Indicator::from_success_count(s));
      for (int h = 0; h < 3; ++h)
        sum[h] += static_cast<double>(counts.counts[s]) / 37.0 * psi[h];
    }
    for (int h = 0; h < 3; ++h) CHECK(std::abs(sum[h]) <= 1e-10);
  }
  SECTION("matches the numeric gradient of the log-likelihood contribution") {
    Splitmix64 rng(5);
    for (int i = 0; i < 20; ++i) {
      const QParams q = random_interior_q(rng);
      for (const auto& x : indicator_outcomes()) {
        const Vector3 exact = score_psi(q, x);
        const Vector3 fd = numeric_score(q, x);
        for (int h = 0; h < 3; ++h) REQUIRE(rel_err(exact[h], fd[h]) < 1e-5);
      }
    }
  }
}

TEST_CASE("expected_score") {
  SECTION("vanishes at the truth") {
    const QParams q0{0.2052, 0.0378, 0.0064};
    const Vector3 e = expected_score(q0, q0);
    for (double v : e) CHECK(std::abs(v) <= 1e-12);
  }
  SECTION("positive below the truth") {
    const QParams q0{0.25, 0.25, 0.25};
    const QParams shifted{0.24, 0.24, 0.24};
    const Vector3 e = expected_score(q0, shifted);
    for (double v : e) CHECK(v > 0.0);
  }
  SECTION("closed form equals the four-outcome enumeration") {
    Splitmix64 rng(29);
    std::vector<std::pair<QParams, QParams>> pairs = {
        {QParams{0.2052, 0.0378, 0.0064}, QParams{0.25, 0.25, 0.25}}};
    for (int i = 0; i < 20; ++i)
      pairs.emplace_back(random_interior_q(rng), random_interior_q(rng));
    for (const auto& [q0, q] : pairs) {
      const Vector3 closed = expected_score(q0, q);
      Vector3 enumerated{};
      for (const auto& x : indicator_outcomes()) {
        const double p = outcome_probability(q0, x);
        const Vector3 psi = score_psi(q, x);
        for (int h = 0; h < 3; ++h) enumerated[h] += p * psi[h];
      }
      for (int h = 0; h < 3; ++h)
        REQUIRE(closed[h] == Approx(enumerated[h]).margin(1e-12));
    }
  }
}

TEST_CASE("score_derivative") {
  SECTION("off-diagonal value at the uniform point") {
    const Matrix3 d = score_derivative(kUniform, kNone);
    CHECK(d[0][1] == Approx(-16.0).epsilon(1e-14));
    CHECK(d[2][0] == Approx(-16.0).epsilon(1e-14));
  }
  SECTION("finite differences agree on a random grid") {
    Splitmix64 rng(31);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const QParams q = random_interior_q(rng);
      for (const auto& x : indicator_outcomes()) {
        const Matrix3 exact = score_derivative(q, x);
        const Matrix3 fd = numeric_score_derivative(q, x);
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) worst = std::max(worst, rel_err(exact[r][c], fd[r][c]));
      }
    }
    CHECK(worst < 1e-5);
  }
  SECTION("expectation matches the closed form, determinant and inverse") {
    Splitmix64 rng(37);
    for (int i = 0; i < 20; ++i) {
      const QParams q = random_interior_q(rng);
      Matrix3 mean{};
      for (const auto& x : indicator_outcomes()) {
        const double p = outcome_probability(q, x);
        const Matrix3 d = score_derivative(q, x);
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) mean[r][c] += p * d[r][c];
      }
      const Matrix3 closed = expected_score_derivative(q);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          REQUIRE(mean[r][c] == Approx(closed[r][c]).margin(1e-10));
      REQUIRE(determinant(mean) ==
              Approx(-1.0 / (q.q1 * q.q2 * q.q3 * q.q0())).epsilon(1e-9));
      const Matrix3 inv = inverse(mean);
      const Matrix3 sigma = sigma_q(q);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) REQUIRE(std::abs(inv[r][c] + sigma[r][c]) <= 1e-10);
    }
  }
}

TEST_CASE("score_second_derivative") {
  SECTION("off-diagonal value at the uniform point") {
    const Tensor333 t = score_second_derivative(kUniform, kNone);
    CHECK(t[0][1][2] == Approx(-128.0).epsilon(1e-14));
    CHECK(t[1][0][0] == Approx(-128.0).epsilon(1e-14));
  }
  SECTION("symmetric in the two derivative indices") {
    Splitmix64 rng(41);
    for (int i = 0; i < 10; ++i) {
      const QParams q = random_interior_q(rng);
      for (const auto& x : indicator_outcomes()) {
        const Tensor333 t = score_second_derivative(q, x);
        for (int h = 0; h < 3; ++h)
          for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) REQUIRE(t[h][k][l] == t[h][l][k]);
      }
    }
  }
  SECTION("finite differences agree on a random grid") {
    Splitmix64 rng(43);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const QParams q = random_interior_q(rng);
      for (const auto& x : indicator_outcomes()) {
        const Tensor333 exact = score_second_derivative(q, x);
        const Tensor333 fd = numeric_score_second_derivative(q, x);
        for (int h = 0; h < 3; ++h)
          for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
              worst = std::max(worst, rel_err(exact[h][r][c], fd[h][r][c]));
      }
    }
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("second moment of the score at the truth") {
  Splitmix64 rng(47);
  for (int i = 0; i < 20; ++i) {
    const QParams q = random_interior_q(rng);
    double moment = 0.0;
    for (const auto& x : indicator_outcomes()) {
      const Vector3 psi = score_psi(q, x);
      moment += outcome_probability(q, x) *
                (psi[0] * psi[0] + psi[1] * psi[1] + psi[2] * psi[2]);
    }
    const double closed = 1.0 / q.q1 + 1.0 / q.q2 + 1.0 / q.q3 + 3.0 / q.q0();
    REQUIRE(rel_err(moment, closed) <= 1e-10);
  }
}

TEST_CASE("score_norm_bound") {
  CHECK(score_norm_bound(0.1) == Approx(std::sqrt(3.0) * 0.9 / 0.01).epsilon(1e-14));
  CHECK(score_norm_bound(0.1) == Approx(155.885).margin(1e-3));
  SECTION("dominates the score at the uniform point") {
    const Vector3 psi = score_psi(kUniform, kNone);
    const double norm = std::sqrt(psi[0] * psi[0] + psi[1] * psi[1] + psi[2] * psi[2]);
    CHECK(norm == Approx(std::sqrt(3.0) * 4.0).epsilon(1e-14));
    CHECK(norm <= score_norm_bound(0.1));
  }
  SECTION("decreasing in xi") {
    CHECK(score_norm_bound(0.05) > score_norm_bound(0.1));
    CHECK(score_norm_bound(0.1) > score_norm_bound(0.2));
  }
  REQUIRE_THROWS_AS(score_norm_bound(0.4), std::invalid_argument);
  REQUIRE_THROWS_AS(score_norm_bound(0.0), std::invalid_argument);
}

TEST_CASE("hessian_bound") {
  SECTION("diagonal envelope at a single success-count indicator") {
    const double g1 = hessian_bound(0.2, kOne);
    CHECK(g1 == Approx(128000.0).epsilon(1e-12));
  }
  SECTION("all-zero indicator: off-diagonal component and overall max") {
    // off-diagonal envelope component g(x) = (2/xi^3) |x1+x2+x3-1| = 2000
    CHECK(hessian_bound(0.1, kNone) >= 2.0 / 0.001);
    // the max is dominated by the diagonal components 2 (1-xi)^3 / xi^6
    CHECK(hessian_bound(0.1, kNone) == Approx(2.0 * 0.729 / 1e-6).epsilon(1e-12));
  }
  SECTION("max structure dominates each component envelope") {
    for (double xi : {0.05, 0.1, 0.2}) {
      for (const auto& x : indicator_outcomes()) {
        const double bound = hessian_bound(xi, x);
        const double xi6 = std::pow(xi, 6.0);
        for (int h = 0; h < 3; ++h) {
          const int others = x.sum() - x.x[h];
          const double gh =
              2.0 * std::pow(1.0 - xi, 3.0) * (7.0 * x.x[h] + std::abs(others - 1.0)) / xi6;
          REQUIRE(bound >= gh);
        }
        REQUIRE(bound >= 2.0 / (xi * xi * xi) * std::abs(x.sum() - 1.0));
      }
    }
  }
}

TEST_CASE("diagnostics suite passes for the default configuration") {
  const DiagnosticsReport report = run_diagnostics(0.1, 1234);
  for (const auto& check : report.checks) {
    INFO(check.name << " worst " << check.worst << " tolerance " << check.tolerance);
    CHECK(check.passed);
  }
  CHECK(report.all_passed());
  REQUIRE_THROWS_AS(run_diagnostics(0.5), std::invalid_argument);
}
