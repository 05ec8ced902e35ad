#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tripletstat/tripletstat.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitDiagnostic = 3;

struct EstimateOptions {
  std::string input;
  bool clustered = false;
  std::uint64_t seed = 42;
  double level = 0.95;
  std::string format = "text";
  bool force_void = false;
};

struct SimulateOptions {
  double pi = 0.0;
  double rho1 = 0.0;
  double rho2 = 0.0;
  std::int64_t n = 0;
  std::int64_t reps = 1000;
  std::uint64_t seed = 42;
  std::string format = "text";
};

struct BootstrapOptions {
  std::string input;
  std::int64_t reps = 2000;
  std::uint64_t seed = 42;
  double level = 0.95;
  std::string format = "text";
};

struct DiagnoseOptions {
  double xi = 0.1;
  std::uint64_t seed = 1234;
};

int run_estimate(const EstimateOptions& opt) {
  tripletstat::ReportDocument doc;
  doc.input_path = opt.input;
  if (opt.clustered) {
    doc.input_format = "clustered";
    doc.subsample_seed = opt.seed;
    const auto table = tripletstat::read_cluster_csv(opt.input);
    const auto data = tripletstat::subsample_clusters(table, opt.seed);
    doc.est = tripletstat::estimate_report(data, opt.level, opt.force_void);
  } else {
    doc.input_format = "triplet";
    const auto data = tripletstat::read_triplet_csv(opt.input);
    doc.est = tripletstat::estimate_report(data, opt.level, opt.force_void);
  }
  if (opt.format == "json")
    std::cout << tripletstat::to_json(doc).dump(2) << "\n";
  else
    std::cout << tripletstat::format_text(doc);
  return kExitOk;
}

int run_simulate(const SimulateOptions& opt) {
  tripletstat::SimConfig config;
  config.rho0 = {opt.pi, opt.rho1, opt.rho2};
  config.n = opt.n;
  config.reps = opt.reps;
  config.seed = opt.seed;
  const auto result = tripletstat::run_mse_study(config);
  if (opt.format == "json")
    std::cout << tripletstat::to_json(config, result).dump(2) << "\n";
  else
    std::cout << tripletstat::format_text(config, result);
  return kExitOk;
}

int run_bootstrap(const BootstrapOptions& opt) {
  const auto data = tripletstat::read_triplet_csv(opt.input);
  const auto counts = tripletstat::count_successes(data);
  const auto result = tripletstat::parametric_bootstrap(counts, opt.reps, opt.seed, opt.level);
  if (opt.format == "json")
    std::cout << tripletstat::to_json(result, opt.input, opt.seed).dump(2) << "\n";
  else
    std::cout << tripletstat::format_text(result);
  return kExitOk;
}

int run_diagnose(const DiagnoseOptions& opt) {
  const auto report = tripletstat::run_diagnostics(opt.xi, opt.seed);
  std::cout << tripletstat::format_text(report);
  if (!report.all_passed()) {
    std::cerr << "diagnostics detected violations\n";
    return kExitDiagnostic;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Estimate a proportion and intra-triplet correlations from binary triplets"};
  app.set_version_flag("--version", std::string(tripletstat::kVersion));
  app.require_subcommand(1);

  EstimateOptions est_opt;
  auto* est = app.add_subcommand("estimate", "Closed-form estimates, SEs and CIs from a CSV");
  est->add_option("--input", est_opt.input, "triplet CSV (3 binary columns) or clustered CSV")
      ->required();
  est->add_flag("--clustered", est_opt.clustered,
                "input is (cluster_id, outcome); subsample 3 outcomes per cluster");
  est->add_option("--seed", est_opt.seed, "subsampling seed")->envname("TRIPLETSTAT_SEED");
  est->add_option("--level", est_opt.level, "confidence level")
      ->check(CLI::Range(1e-6, 1.0 - 1e-6))
      ->capture_default_str();
  est->add_option("--format", est_opt.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  est->add_flag("--force-void", est_opt.force_void,
                "estimate even when some success count is unobserved");

  SimulateOptions sim_opt;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo MSE study at a chosen truth");
  sim->add_option("--pi", sim_opt.pi, "true proportion")->required()->check(CLI::Range(1e-9, 1.0 - 1e-9));
  sim->add_option("--rho1", sim_opt.rho1, "true first-order correlation")->required();
  sim->add_option("--rho2", sim_opt.rho2, "true second-order correlation")->required();
  sim->add_option("--n", sim_opt.n, "triplets per replication")->required()->check(CLI::PositiveNumber);
  sim->add_option("--reps", sim_opt.reps, "replications")->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--seed", sim_opt.seed, "RNG seed")->envname("TRIPLETSTAT_SEED");
  sim->add_option("--format", sim_opt.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  BootstrapOptions boot_opt;
  auto* boot = app.add_subcommand("bootstrap", "Parametric bootstrap SEs and percentile CIs");
  boot->add_option("--input", boot_opt.input, "triplet CSV (3 binary columns)")->required();
  boot->add_option("--reps", boot_opt.reps, "bootstrap replicates")->capture_default_str();
  boot->add_option("--seed", boot_opt.seed, "RNG seed")->envname("TRIPLETSTAT_SEED");
  boot->add_option("--level", boot_opt.level, "confidence level")
      ->check(CLI::Range(1e-6, 1.0 - 1e-6))
      ->capture_default_str();
  boot->add_option("--format", boot_opt.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  DiagnoseOptions diag_opt;
  auto* diag = app.add_subcommand("diagnose", "Run the numeric oracle and bound suite");
  diag->add_option("--xi", diag_opt.xi, "box parameter for the uniform bounds")
      ->check(CLI::Range(1e-9, 1.0 / 3.0 - 1e-9))
      ->capture_default_str();
  diag->add_option("--seed", diag_opt.seed, "seed for the check grids")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (est->parsed()) return run_estimate(est_opt);
    if (sim->parsed()) return run_simulate(sim_opt);
    if (boot->parsed()) return run_bootstrap(boot_opt);
    if (diag->parsed()) return run_diagnose(diag_opt);
  } catch (const tripletstat::data_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
