// relayia command-line front end.
//
//   relayia verify --scheme x-theorem1 --m 3 --n 3 --relays 1 --antennas 2
//   relayia sweep  --scheme ic-theorem3 --k 3 --relays 3 --antennas 1 --out r.csv
//
// Exit codes: 0 success, 1 alignment failure, 2 config error, 3 infeasible
// relay count. IA_RELAY_THREADS caps the sweep worker count.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_config.hpp"
#include "relayia.h"

namespace {

using relayia_cli::ConfigError;
using relayia_cli::ExperimentConfig;

constexpr int kExitOk = 0;
constexpr int kExitAlignmentFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitInfeasible = 3;

struct TopologyDeleter {
  void operator()(ria_topology* t) const { ria_topology_destroy(t); }
};
struct TrialDeleter {
  void operator()(ria_trial* t) const { ria_trial_destroy(t); }
};
struct ReportDeleter {
  void operator()(ria_report* r) const { ria_report_destroy(r); }
};
struct SweepDeleter {
  void operator()(ria_sweep* s) const { ria_sweep_destroy(s); }
};

ria_scheme scheme_id(const std::string& name) {
  if (name == "x-theorem1") return RIA_SCHEME_X_THEOREM1;
  if (name == "partial-ia") return RIA_SCHEME_PARTIAL_IA;
  if (name == "ic-theorem3") return RIA_SCHEME_IC_THEOREM3;
  throw ConfigError("unknown scheme: " + name);
}

// Fills scheme-dependent defaults and validates the field combination.
void resolve_config(ExperimentConfig& config) {
  const ria_scheme scheme = scheme_id(config.scheme);
  if (scheme == RIA_SCHEME_X_THEOREM1) {
    if (config.m < 2 || config.n < 2)
      throw ConfigError("x-theorem1 needs --m and --n (at least 2 each)");
    if (config.k != 0) throw ConfigError("--k does not apply to x-theorem1");
    if (config.antennas == 0) config.antennas = 1;
  } else if (scheme == RIA_SCHEME_PARTIAL_IA) {
    if (config.k < 3) throw ConfigError("partial-ia needs --k (at least 3)");
    if (config.m != 0 || config.n != 0)
      throw ConfigError("--m/--n do not apply to partial-ia; use --k");
    if (config.antennas == 0) config.antennas = config.k - 1;
    if (config.relays != 1 || config.antennas != config.k - 1)
      throw ConfigError("partial-ia runs with 1 relay and k-1 antennas");
  } else {
    if (config.k < 3) throw ConfigError("ic-theorem3 needs --k (at least 3)");
    if (config.m != 0 || config.n != 0)
      throw ConfigError("--m/--n do not apply to ic-theorem3; use --k");
    if (config.antennas == 0) config.antennas = 1;
  }
  if (config.relays < 1) throw ConfigError("--relays must be at least 1");
  if (config.snr_stop_db < config.snr_start_db) throw ConfigError("snr-stop < snr-start");
  if (config.snr_step_db <= 0.0) throw ConfigError("snr-step must be positive");
  if (config.format != "csv" && config.format != "json")
    throw ConfigError("format must be csv or json");
  if (config.null_space && scheme != RIA_SCHEME_IC_THEOREM3)
    throw ConfigError("--null-space applies to ic-theorem3 only");
  if (config.null_space &&
      static_cast<long long>(config.relays) * config.antennas * config.antennas <=
          static_cast<long long>(config.k) * (config.k - 2))
    throw ConfigError("--null-space needs relays*antennas^2 > k*(k-2)");
}

std::unique_ptr<ria_topology, TopologyDeleter> make_topology(const ExperimentConfig& config) {
  ria_topology* raw = nullptr;
  ria_status status;
  if (scheme_id(config.scheme) == RIA_SCHEME_X_THEOREM1)
    status = ria_topology_create_x(config.m, config.n, config.relays, config.antennas, &raw);
  else if (scheme_id(config.scheme) == RIA_SCHEME_PARTIAL_IA)
    status = ria_topology_create_x(config.k, config.k, config.relays, config.antennas, &raw);
  else
    status = ria_topology_create_ic(config.k, config.relays, config.antennas, &raw);
  if (status != RIA_OK) throw ConfigError(ria_status_message(status));
  return std::unique_ptr<ria_topology, TopologyDeleter>(raw);
}

ria_options make_options(const ExperimentConfig& config) {
  ria_options options;
  ria_options_init(&options);
  options.time_varying = config.time_varying ? 1 : 0;
  options.joint_beamforming = config.joint_beamforming ? 1 : 0;
  options.null_space_mode = config.null_space ? 1 : 0;
  return options;
}

double reference_dof(const ExperimentConfig& config) {
  int64_t num = 0, den = 1;
  if (scheme_id(config.scheme) == RIA_SCHEME_IC_THEOREM3)
    ria_dof_reference(RIA_DOF_INTERFERENCE, config.k, 0, &num, &den);
  else if (scheme_id(config.scheme) == RIA_SCHEME_PARTIAL_IA)
    ria_dof_reference(RIA_DOF_X_CHANNEL, config.k, config.k, &num, &den);
  else
    ria_dof_reference(RIA_DOF_X_CHANNEL, config.m, config.n, &num, &den);
  return static_cast<double>(num) / static_cast<double>(den);
}

void emit(const ExperimentConfig& config, const std::string& content) {
  if (config.out.empty())
    std::cout << content;
  else
    relayia_cli::write_file_atomically(config.out, content);
}

int report_infeasible(const ria_topology* topology, const ExperimentConfig& config) {
  int required = 0;
  ria_required_relays(topology, scheme_id(config.scheme), &required);
  std::cerr << "required relays: " << required << "\n";
  return kExitInfeasible;
}

int run_verify(const ExperimentConfig& config) {
  const auto topology = make_topology(config);
  const ria_options options = make_options(config);
  const int trials = config.trials > 0 ? config.trials : 1;

  std::vector<relayia_cli::VerifyRow> rows;
  bool all_pass = true;
  for (int trial = 0; trial < trials; ++trial) {
    const uint64_t seed = trials == 1 ? config.seed : ria_derive_seed(config.seed, trial);
    ria_trial* raw_trial = nullptr;
    const ria_status status =
        ria_trial_run(topology.get(), scheme_id(config.scheme), seed, &options, &raw_trial);
    if (status == RIA_ERR_INFEASIBLE_RELAY_COUNT)
      return report_infeasible(topology.get(), config);
    if (status == RIA_ERR_INVALID_ARGUMENT) throw ConfigError(ria_status_message(status));
    if (status != RIA_OK) {
      std::cerr << "trial " << trial << " failed: " << ria_status_message(status) << "\n";
      all_pass = false;
      continue;
    }
    std::unique_ptr<ria_trial, TrialDeleter> run(raw_trial);

    ria_report* raw_report = nullptr;
    if (ria_trial_verify(run.get(), &raw_report) != RIA_OK)
      throw ConfigError("verification failed to run");
    std::unique_ptr<ria_report, ReportDeleter> report(raw_report);

    const int receivers = ria_report_receiver_count(report.get());
    for (int rx = 0; rx < receivers; ++rx) {
      relayia_cli::VerifyRow row;
      row.trial = trial;
      row.receiver = rx;
      int pass = 0;
      ria_report_receiver(report.get(), rx, &row.interference_rank, &row.desired_rank,
                          &row.total_rank, &row.smallest_retained, &row.largest_discarded,
                          &pass);
      row.pass = pass != 0;
      rows.push_back(row);
    }
    if (!ria_report_pass(report.get())) all_pass = false;
  }

  emit(config, config.format == "json" ? relayia_cli::verify_to_json(config, rows, all_pass)
                                       : relayia_cli::verify_to_csv(config, rows));
  return all_pass ? kExitOk : kExitAlignmentFailure;
}

int run_sweep(const ExperimentConfig& config) {
  const auto topology = make_topology(config);
  const ria_options options = make_options(config);
  const int trials = config.trials > 0 ? config.trials : 50;

  std::vector<double> grid;
  for (double snr = config.snr_start_db; snr <= config.snr_stop_db + 1e-9;
       snr += config.snr_step_db)
    grid.push_back(snr);

  int max_threads = 0;
  if (const char* env = std::getenv("IA_RELAY_THREADS")) max_threads = std::atoi(env);

  ria_sweep* raw_sweep = nullptr;
  const ria_status status =
      ria_sweep_run(topology.get(), scheme_id(config.scheme), config.seed, &options,
                    grid.data(), static_cast<int>(grid.size()), trials, max_threads,
                    &raw_sweep);
  if (status == RIA_ERR_INFEASIBLE_RELAY_COUNT) return report_infeasible(topology.get(), config);
  if (status == RIA_ERR_INVALID_ARGUMENT) throw ConfigError(ria_status_message(status));
  if (status != RIA_OK) {
    std::cerr << "sweep failed: " << ria_status_message(status) << "\n";
    return kExitAlignmentFailure;
  }
  std::unique_ptr<ria_sweep, SweepDeleter> sweep(raw_sweep);

  int trials_used = 0, skipped = 0;
  ria_sweep_counts(sweep.get(), &trials_used, &skipped);
  double slope = 0.0, fit_residual = 0.0;
  ria_sweep_slope(sweep.get(), &slope, &fit_residual);

  // More than 1% skipped trials invalidates the estimate.
  if (trials_used == 0 || skipped * 100 > trials) {
    std::cerr << "sweep failed: " << skipped << "/" << trials
              << " trials skipped (alignment or conditioning failures)\n";
    return kExitAlignmentFailure;
  }

  std::vector<relayia_cli::SweepPoint> points;
  for (int i = 0; i < ria_sweep_point_count(sweep.get()); ++i) {
    relayia_cli::SweepPoint point;
    ria_sweep_point(sweep.get(), i, &point.snr_db, &point.mean_sum_rate_bits);
    point.trials_used = trials_used;
    point.skipped = skipped;
    points.push_back(point);
  }

  relayia_cli::SweepSummary summary;
  summary.slope = slope;
  summary.fit_residual = fit_residual;
  summary.reference_dof = reference_dof(config);
  summary.trials_used = trials_used;
  summary.skipped = skipped;

  emit(config, config.format == "json" ? relayia_cli::sweep_to_json(config, points, summary)
                                       : relayia_cli::sweep_to_csv(config, points, summary));
  if (!config.out.empty()) {
    std::cerr << "slope " << relayia_cli::format_double(slope) << " (reference "
              << relayia_cli::format_double(summary.reference_dof) << "), wrote " << config.out
              << "\n";
  }
  return kExitOk;
}

void add_common_options(CLI::App* cmd, ExperimentConfig& config, std::string& config_path) {
  cmd->add_option("--config", config_path, "flat key = value config file; flags override it");
  cmd->add_option("--scheme", config.scheme, "x-theorem1 | partial-ia | ic-theorem3");
  cmd->add_option("--m", config.m, "transmitters (X channel)");
  cmd->add_option("--n", config.n, "receivers (X channel)");
  cmd->add_option("--k", config.k, "users/pairs (partial-ia, ic-theorem3)");
  cmd->add_option("--relays", config.relays, "relay count J");
  cmd->add_option("--antennas", config.antennas, "antennas per relay L");
  cmd->add_option("--seed", config.seed, "base seed");
  cmd->add_option("--trials", config.trials, "Monte Carlo trials");
  cmd->add_option("--snr-start", config.snr_start_db, "sweep start (dB)");
  cmd->add_option("--snr-stop", config.snr_stop_db, "sweep stop (dB)");
  cmd->add_option("--snr-step", config.snr_step_db, "sweep step (dB)");
  cmd->add_flag("--time-varying,!--no-time-varying", config.time_varying,
                "--no-time-varying freezes the channel across slots");
  cmd->add_flag("--joint-beamforming,!--no-joint-beamforming", config.joint_beamforming,
                "--no-joint-beamforming silences transmitters during relay slots");
  cmd->add_flag("--null-space", config.null_space,
                "ic-theorem3: precoders from the null space of H");
  cmd->add_option("--out", config.out, "output path (default: stdout)");
  cmd->add_option("--format", config.format, "csv | json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relay-aided interference alignment simulator"};
  app.require_subcommand(1);

  ExperimentConfig verify_config, sweep_config;
  std::string verify_config_path, sweep_config_path;

  CLI::App* verify = app.add_subcommand("verify", "rank-verify alignment on seeded trials");
  add_common_options(verify, verify_config, verify_config_path);
  CLI::App* sweep = app.add_subcommand("sweep", "SNR sweep and DoF slope estimate");
  add_common_options(sweep, sweep_config, sweep_config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    const bool is_verify = verify->parsed();
    ExperimentConfig& config = is_verify ? verify_config : sweep_config;
    const std::string& config_path = is_verify ? verify_config_path : sweep_config_path;
    if (!config_path.empty()) {
      // File provides the base; explicit flags already sit in `config`, so
      // re-parse argv over the file values.
      ExperimentConfig merged = relayia_cli::parse_config_file(config_path);
      CLI::App overlay{""};
      ExperimentConfig overlay_config = merged;
      std::string ignored;
      add_common_options(&overlay, overlay_config, ignored);
      std::vector<std::string> args(argv + 2, argv + argc);
      std::reverse(args.begin(), args.end());
      overlay.parse(args);
      config = overlay_config;
    }
    resolve_config(config);
    return is_verify ? run_verify(config) : run_sweep(config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}
