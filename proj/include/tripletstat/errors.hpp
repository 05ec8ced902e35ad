#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tripletstat {

/// Base class for all input/model violations. CLI maps these to exit code 2.
class data_error : public std::runtime_error {
public:
  explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

/// A success-count category was observed zero times. Point estimates stay
/// well-defined but the asymptotic covariance may be singular, so estimation
/// refuses unless the caller forces it.
class void_category_error : public data_error {
public:
  explicit void_category_error(std::vector<int> categories)
      : data_error(make_message(categories)), categories_(std::move(categories)) {}

  const std::vector<int>& categories() const { return categories_; }

private:
  static std::string make_message(const std::vector<int>& cats) {
    std::string msg = "void success-count categories:";
    for (int c : cats) msg += " " + std::to_string(c);
    return msg;
  }
  std::vector<int> categories_;
};

/// The implied proportion is 0 or 1, so correlation denominators vanish.
class degenerate_proportion_error : public data_error {
public:
  explicit degenerate_proportion_error(double pi)
      : data_error("degenerate proportion pi = " + std::to_string(pi)) {}
};

/// (pi, rho1, rho2) does not correspond to any valid triplet distribution.
class inadmissible_rho_error : public data_error {
public:
  inadmissible_rho_error(const std::string& detail)
      : data_error("inadmissible correlation parameters: " + detail) {}
};

/// Covariance propagation produced a non-finite entry (near-boundary input).
class non_finite_variance_error : public data_error {
public:
  non_finite_variance_error() : data_error("non-finite variance entry") {}
};

/// Simple-random-sampling SE is zero, ratio undefined.
class zero_baseline_error : public data_error {
public:
  zero_baseline_error() : data_error("srs standard error is zero") {}
};

class parse_error : public data_error {
public:
  parse_error(std::size_t row, const std::string& token)
      : data_error("parse error at row " + std::to_string(row) + ": bad token '" + token + "'"),
        row_(row), token_(token) {}

  std::size_t row() const { return row_; }
  const std::string& token() const { return token_; }

private:
  std::size_t row_;
  std::string token_;
};

class empty_file_error : public data_error {
public:
  explicit empty_file_error(const std::string& path)
      : data_error("no data rows in file: " + path) {}
};

class cluster_too_small_error : public data_error {
public:
  explicit cluster_too_small_error(std::vector<std::string> ids)
      : data_error(make_message(ids)), ids_(std::move(ids)) {}

  const std::vector<std::string>& cluster_ids() const { return ids_; }

private:
  static std::string make_message(const std::vector<std::string>& ids) {
    std::string msg = "clusters with fewer than 3 outcomes:";
    for (const auto& id : ids) msg += " " + id;
    return msg;
  }
  std::vector<std::string> ids_;
};

/// Too many replications were skipped for the summary to mean anything.
class all_skipped_error : public data_error {
public:
  all_skipped_error() : data_error("all replications skipped (degenerate configuration)") {}
  explicit all_skipped_error(const std::string& what) : data_error(what) {}
};

/// Too few bootstrap replicates for a standard error.
class min_reps_error : public data_error {
public:
  explicit min_reps_error(long reps)
      : data_error("bootstrap needs at least 100 replicates, got " + std::to_string(reps)) {}
};

}  // namespace tripletstat
