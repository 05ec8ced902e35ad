#pragma once

#include <cstdio>
#include <optional>
#include <string>

#include <json.hpp>

#include "tripletstat/diagnostics.hpp"
#include "tripletstat/estimator.hpp"
#include "tripletstat/simulate.hpp"
#include "tripletstat/version.hpp"

namespace tripletstat {

using json = nlohmann::ordered_json;

/// Estimation result plus the provenance a reader needs to re-run it.
struct ReportDocument {
  EstimationReport est;
  std::string input_path;
  std::string input_format;  // "triplet" | "clustered"
  std::optional<std::uint64_t> subsample_seed;
};

namespace detail {

inline json tool_info() {
  return json{{"name", kToolName}, {"version", kVersion}};
}

inline json matrix_json(const Matrix3& m) {
  json rows = json::array();
  for (const auto& row : m) rows.push_back(json{row[0], row[1], row[2]});
  return rows;
}

inline json interval_json(const ConfidenceInterval& ci) {
  return json{{"lower", ci.lower}, {"upper", ci.upper}, {"truncated", ci.truncated}};
}

inline std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace detail

inline json to_json(const ReportDocument& doc) {
  const auto& est = doc.est;
  json j;
  j["tool"] = detail::tool_info();
  json input{{"path", doc.input_path}, {"format", doc.input_format}, {"n", est.n}};
  if (doc.subsample_seed) input["subsample_seed"] = *doc.subsample_seed;
  j["input"] = input;
  j["counts"] = json{est.counts.counts[0], est.counts.counts[1], est.counts.counts[2],
                     est.counts.counts[3]};
  j["q_hat"] = json{{"q0", est.q_hat.q0()},
                    {"q1", est.q_hat.q1},
                    {"q2", est.q_hat.q2},
                    {"q3", est.q_hat.q3}};
  j["rho_hat"] =
      json{{"pi", est.rho_hat.pi}, {"rho1", est.rho_hat.rho1}, {"rho2", est.rho_hat.rho2}};
  j["covariance"] = json{{"sigma_q", detail::matrix_json(est.cov.sigma_q)},
                         {"jacobian", detail::matrix_json(est.cov.jacobian)},
                         {"sigma_rho", detail::matrix_json(est.cov.sigma_rho)}};
  j["se"] = json{{"pi", est.cov.se[0]}, {"rho1", est.cov.se[1]}, {"rho2", est.cov.se[2]}};
  j["level"] = est.level;
  j["ci"] = json{{"pi", detail::interval_json(est.ci_pi)},
                 {"rho1", detail::interval_json(est.ci_rho1)},
                 {"rho2", detail::interval_json(est.ci_rho2)}};
  j["srs"] = json{{"se", est.srs_se}, {"variance", est.srs_se * est.srs_se}};
  j["design_effect"] = est.deff;
  j["void_forced"] = est.void_forced;
  return j;
}

/// Three-decimal table in the style of the written reports this tool feeds.
inline std::string format_text(const ReportDocument& doc) {
  const auto& est = doc.est;
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "n = %lld triplets (%lld outcomes)\n",
                static_cast<long long>(est.n), static_cast<long long>(3 * est.n));
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "counts by successes: n0 = %lld, n1 = %lld, n2 = %lld, n3 = %lld\n",
                static_cast<long long>(est.counts.counts[0]),
                static_cast<long long>(est.counts.counts[1]),
                static_cast<long long>(est.counts.counts[2]),
                static_cast<long long>(est.counts.counts[3]));
  out += buf;
  std::snprintf(buf, sizeof(buf), "q_hat: q1 = %s  q2 = %s  q3 = %s  (q0 = %s)\n",
                detail::fixed3(est.q_hat.q1).c_str(), detail::fixed3(est.q_hat.q2).c_str(),
                detail::fixed3(est.q_hat.q3).c_str(), detail::fixed3(est.q_hat.q0()).c_str());
  out += buf;
  const int pct = static_cast<int>(est.level * 100.0 + 0.5);
  std::snprintf(buf, sizeof(buf), "%-6s %9s %8s   %d%% CI\n", "", "estimate", "SE", pct);
  out += buf;
  const struct {
    const char* name;
    double value;
    double se;
    const ConfidenceInterval* ci;
  } rows[] = {{"pi", est.rho_hat.pi, est.cov.se[0], &est.ci_pi},
              {"rho1", est.rho_hat.rho1, est.cov.se[1], &est.ci_rho1},
              {"rho2", est.rho_hat.rho2, est.cov.se[2], &est.ci_rho2}};
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%-6s %9s %8s   [%s, %s]%s\n", r.name,
                  detail::fixed3(r.value).c_str(), detail::fixed3(r.se).c_str(),
                  detail::fixed3(r.ci->lower).c_str(), detail::fixed3(r.ci->upper).c_str(),
                  r.ci->truncated ? " (truncated)" : "");
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "srs baseline: SE_srs = %s, design effect = %s\n",
                detail::fixed3(est.srs_se).c_str(), detail::fixed3(est.deff).c_str());
  out += buf;
  if (est.void_forced) out += "warning: void categories present; SEs may be unreliable\n";
  return out;
}

inline json to_json(const SimConfig& config, const MseResult& result) {
  json j;
  j["tool"] = detail::tool_info();
  j["config"] = json{{"pi", config.rho0.pi},   {"rho1", config.rho0.rho1},
                     {"rho2", config.rho0.rho2}, {"n", config.n},
                     {"reps", config.reps},      {"seed", config.seed}};
  const QParams q0 = rho_to_q(config.rho0);
  j["q0"] = json{{"q0", q0.q0()}, {"q1", q0.q1}, {"q2", q0.q2}, {"q3", q0.q3}};
  j["mse"] = json{{"pi", result.mse[0]}, {"rho1", result.mse[1]}, {"rho2", result.mse[2]}};
  j["bias"] = json{{"pi", result.bias[0]}, {"rho1", result.bias[1]}, {"rho2", result.bias[2]}};
  j["reps"] = result.reps;
  j["skipped"] = result.skipped;
  j["void_replications"] = result.void_replications;
  return j;
}

inline std::string format_text(const SimConfig& config, const MseResult& result) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "mse study: pi = %s, rho1 = %s, rho2 = %s, n = %lld, reps = %lld, seed = %llu\n",
                detail::fixed3(config.rho0.pi).c_str(), detail::fixed3(config.rho0.rho1).c_str(),
                detail::fixed3(config.rho0.rho2).c_str(), static_cast<long long>(config.n),
                static_cast<long long>(config.reps),
                static_cast<unsigned long long>(config.seed));
  out += buf;
  std::snprintf(buf, sizeof(buf), "MSE:  pi = %.6g  rho1 = %.6g  rho2 = %.6g\n", result.mse[0],
                result.mse[1], result.mse[2]);
  out += buf;
  std::snprintf(buf, sizeof(buf), "bias: pi = %.6g  rho1 = %.6g  rho2 = %.6g\n", result.bias[0],
                result.bias[1], result.bias[2]);
  out += buf;
  std::snprintf(buf, sizeof(buf), "skipped %lld of %lld replications (%lld with empty categories)\n",
                static_cast<long long>(result.skipped), static_cast<long long>(result.reps),
                static_cast<long long>(result.void_replications));
  out += buf;
  return out;
}

inline json to_json(const BootstrapResult& result, const std::string& input_path,
                    std::uint64_t seed) {
  json j;
  j["tool"] = detail::tool_info();
  j["input"] = json{{"path", input_path}};
  j["reps"] = result.reps;
  j["seed"] = seed;
  j["level"] = result.level;
  j["se"] = json{{"pi", result.se[0]}, {"rho1", result.se[1]}, {"rho2", result.se[2]}};
  j["ci"] = json{{"pi", detail::interval_json(result.ci[0])},
                 {"rho1", detail::interval_json(result.ci[1])},
                 {"rho2", detail::interval_json(result.ci[2])}};
  j["skipped"] = result.skipped;
  return j;
}

inline std::string format_text(const BootstrapResult& result) {
  std::string out;
  char buf[256];
  const int pct = static_cast<int>(result.level * 100.0 + 0.5);
  std::snprintf(buf, sizeof(buf), "parametric bootstrap, %lld replicates (%lld skipped)\n",
                static_cast<long long>(result.reps), static_cast<long long>(result.skipped));
  out += buf;
  const char* names[] = {"pi", "rho1", "rho2"};
  for (int j = 0; j < 3; ++j) {
    std::snprintf(buf, sizeof(buf), "%-6s SE = %s   %d%% CI [%s, %s]\n", names[j],
                  detail::fixed3(result.se[j]).c_str(), pct,
                  detail::fixed3(result.ci[j].lower).c_str(),
                  detail::fixed3(result.ci[j].upper).c_str());
    out += buf;
  }
  return out;
}

inline std::string format_text(const DiagnosticsReport& report) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "diagnostics at xi = %g\n", report.xi);
  out += buf;
  for (const auto& check : report.checks) {
    std::snprintf(buf, sizeof(buf), "%s  %-55s (worst %.3g, tolerance %.3g)\n",
                  check.passed ? "ok       " : "VIOLATION", check.name.c_str(), check.worst,
                  check.tolerance);
    out += buf;
  }
  return out;
}

}  // namespace tripletstat
