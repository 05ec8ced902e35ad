#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tripletstat {

using Vector3 = std::array<double, 3>;
using Matrix3 = std::array<std::array<double, 3>, 3>;

/// One cluster of three exchangeable binary outcomes.
using TripletRow = std::array<std::uint8_t, 3>;

/// n independent triplets of binary outcomes, one row per triplet.
struct TripletData {
  std::vector<TripletRow> rows;

  std::size_t n() const { return rows.size(); }

  /// Entries must be 0/1 and there must be at least one row.
  void validate() const {
    if (rows.empty()) throw std::invalid_argument("triplet data must contain at least one row");
    for (const auto& r : rows)
      for (auto v : r)
        if (v > 1) throw std::invalid_argument("triplet outcomes must be 0 or 1");
  }
};

/// Number of triplets observed with s = 0,1,2,3 successes. Sufficient
/// statistic for the whole model.
struct SuccessCounts {
  std::array<std::int64_t, 4> counts{};

  std::int64_t total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }

  void validate() const {
    for (auto c : counts)
      if (c < 0) throw std::invalid_argument("success counts must be nonnegative");
    if (total() < 1) throw std::invalid_argument("success counts must sum to at least 1");
  }

  /// Categories observed zero times, in {0,1,2,3}.
  std::vector<int> void_categories() const {
    std::vector<int> v;
    for (int s = 0; s < 4; ++s)
      if (counts[s] == 0) v.push_back(s);
    return v;
  }
};

/// Category probabilities q_s = P[S = s] for s = 1,2,3; q0 is implied.
struct QParams {
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;

  double q0() const { return 1.0 - q1 - q2 - q3; }

  Vector3 as_vector() const { return {q1, q2, q3}; }

  /// True when every category probability exceeds margin (open simplex
  /// interior, shrunk by margin on all four coordinates).
  bool is_interior(double margin = 0.0) const {
    return q1 > margin && q2 > margin && q3 > margin && q0() > margin;
  }

  /// True when all four probabilities lie in [0, 1] up to tolerance.
  bool is_valid(double tol = 0.0) const {
    return q1 >= -tol && q2 >= -tol && q3 >= -tol && q0() >= -tol &&
           q1 <= 1.0 + tol && q2 <= 1.0 + tol && q3 <= 1.0 + tol;
  }
};

/// Proportion plus first- and second-order intra-triplet correlations.
struct RhoParams {
  double pi = 0.0;
  double rho1 = 0.0;
  double rho2 = 0.0;
};

// --- small fixed-size helpers ---

inline Matrix3 matmul(const Matrix3& a, const Matrix3& b) {
  Matrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

inline Matrix3 transpose(const Matrix3& a) {
  Matrix3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
  return t;
}

/// a * b * a^T, the covariance transport used by the delta method.
inline Matrix3 sandwich(const Matrix3& a, const Matrix3& b) {
  return matmul(matmul(a, b), transpose(a));
}

inline double determinant(const Matrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// Inverse via the adjugate; throws on (numerically) singular input.
inline Matrix3 inverse(const Matrix3& m) {
  const double det = determinant(m);
  if (det == 0.0) throw std::domain_error("singular 3x3 matrix");
  Matrix3 inv{};
  inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return inv;
}

}  // namespace tripletstat
