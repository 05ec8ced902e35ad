#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "tripletstat/types.hpp"

namespace test_helpers {

inline std::string data_path(const std::string& name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

/// Eigenvalues of a symmetric 3x3 matrix, ascending (trigonometric method).
inline std::array<double, 3> sym3_eigenvalues(const tripletstat::Matrix3& a) {
  const double p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
  const double tr = a[0][0] + a[1][1] + a[2][2];
  std::array<double, 3> eig;
  if (p1 == 0.0) {
    eig = {a[0][0], a[1][1], a[2][2]};
    std::sort(eig.begin(), eig.end());
    return eig;
  }
  const double q = tr / 3.0;
  const double p2 = (a[0][0] - q) * (a[0][0] - q) + (a[1][1] - q) * (a[1][1] - q) +
                    (a[2][2] - q) * (a[2][2] - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  tripletstat::Matrix3 b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = (a[i][j] - (i == j ? q : 0.0)) / p;
  double r = tripletstat::determinant(b) / 2.0;
  r = std::clamp(r, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e_hi = q + 2.0 * p * std::cos(phi);
  const double e_lo = q + 2.0 * p * std::cos(phi + 2.0 * 3.14159265358979323846 / 3.0);
  eig = {e_lo, 3.0 * q - e_hi - e_lo, e_hi};
  std::sort(eig.begin(), eig.end());
  return eig;
}

inline tripletstat::SuccessCounts table2_counts() {
  tripletstat::SuccessCounts c;
  c.counts = {1, 3, 11, 22};
  return c;
}

}  // namespace test_helpers
