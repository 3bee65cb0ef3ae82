#include "relayia.h"

#include <algorithm>
#include <cmath>
#include <new>
#include <numeric>
#include <thread>

#include "evaluation.hpp"
#include "prng.hpp"

using namespace relayia;

struct ria_topology {
  NetworkTopology topo;
};

struct ria_trial {
  SchemeRun run;
  SchemeOptions options;
};

struct ria_report {
  AlignmentReport report;
};

struct ria_sweep {
  DofEstimate estimate;
};

namespace {

SchemeOptions to_options(const ria_options* options) {
  SchemeOptions out;
  if (options) {
    out.time_varying = options->time_varying != 0;
    out.joint_beamforming = options->joint_beamforming != 0;
    out.null_space_mode = options->null_space_mode != 0;
    out.symbol_power = options->symbol_power;
  }
  return out;
}

Scheme to_scheme(ria_scheme scheme) {
  switch (scheme) {
    case RIA_SCHEME_X_THEOREM1: return Scheme::XTheorem1;
    case RIA_SCHEME_PARTIAL_IA: return Scheme::PartialIA;
    case RIA_SCHEME_IC_THEOREM3: return Scheme::ICTheorem3;
  }
  throw InvalidArgumentError("unknown scheme");
}

// Every entry point funnels through here so C++ exceptions never cross the
// C boundary.
template <typename Fn>
ria_status guarded(Fn&& fn) {
  try {
    fn();
    return RIA_OK;
  } catch (const InfeasibleRelayCountError&) {
    return RIA_ERR_INFEASIBLE_RELAY_COUNT;
  } catch (const IllConditionedError&) {
    return RIA_ERR_ILL_CONDITIONED;
  } catch (const DegenerateDenominatorError&) {
    return RIA_ERR_DEGENERATE;
  } catch (const AlignmentNotVerifiedError&) {
    return RIA_ERR_NOT_VERIFIED;
  } catch (const InvalidArgumentError&) {
    return RIA_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    return RIA_ERR_INTERNAL;
  } catch (const std::exception&) {
    return RIA_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* ria_status_message(ria_status status) {
  switch (status) {
    case RIA_OK: return "ok";
    case RIA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RIA_ERR_INFEASIBLE_RELAY_COUNT: return "infeasible relay count";
    case RIA_ERR_ILL_CONDITIONED: return "ill-conditioned system";
    case RIA_ERR_DEGENERATE: return "degenerate channel coincidence";
    case RIA_ERR_NOT_VERIFIED: return "alignment not verified";
    case RIA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ria_options_init(ria_options* options) {
  if (!options) return;
  options->time_varying = 1;
  options->joint_beamforming = 1;
  options->null_space_mode = 0;
  options->symbol_power = 1.0;
}

uint64_t ria_derive_seed(uint64_t base_seed, uint64_t stream) {
  return derive_seed(base_seed, stream);
}

ria_status ria_topology_create_x(int tx_count, int rx_count, int relay_count,
                                 int antennas_per_relay, ria_topology** out) {
  if (!out) return RIA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new ria_topology{
        NetworkTopology::x_channel(tx_count, rx_count, relay_count, antennas_per_relay)};
  });
}

ria_status ria_topology_create_ic(int pair_count, int relay_count, int antennas_per_relay,
                                  ria_topology** out) {
  if (!out) return RIA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new ria_topology{
        NetworkTopology::interference(pair_count, relay_count, antennas_per_relay)};
  });
}

void ria_topology_destroy(ria_topology* topology) { delete topology; }

int ria_topology_receivers(const ria_topology* topology) {
  return topology ? topology->topo.rx_count() : 0;
}

int ria_topology_total_slots(const ria_topology* topology) {
  return topology ? topology->topo.total_slots() : 0;
}

ria_status ria_required_relays(const ria_topology* topology, ria_scheme scheme, int* out_count) {
  if (!topology || !out_count) return RIA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const NetworkTopology& topo = topology->topo;
    switch (to_scheme(scheme)) {
      case Scheme::XTheorem1:
        *out_count = required_relays_x(topo.tx_count(), topo.rx_count(), topo.relay_antennas());
        break;
      case Scheme::PartialIA:
        *out_count = 1;
        break;
      case Scheme::ICTheorem3:
        *out_count = required_relays_ic(topo.pair_count(), topo.relay_antennas());
        break;
    }
  });
}

ria_status ria_trial_run(const ria_topology* topology, ria_scheme scheme, uint64_t seed,
                         const ria_options* options, ria_trial** out) {
  if (!topology || !out) return RIA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const SchemeOptions opts = to_options(options);
    SchemeRun run = run_scheme_trial(topology->topo, to_scheme(scheme), seed, opts);
    *out = new ria_trial{std::move(run), opts};
  });
}

void ria_trial_destroy(ria_trial* trial) { delete trial; }

int ria_trial_resamples(const ria_trial* trial) { return trial ? trial->run.resamples_used : 0; }

double ria_trial_max_precoder_magnitude(const ria_trial* trial) {
  if (!trial) return 0.0;
  double max_mag = 0.0;
  const auto scan = [&max_mag](const ComplexMatrix& m) {
    if (m.size() > 0) max_mag = std::max(max_mag, m.cwiseAbs().maxCoeff());
  };
  if (const auto* x = std::get_if<XPrecoderSet>(&trial->run.precoders)) {
    for (int i = 0; i < x->relays(); ++i)
      for (int g = 0; g < x->listen_slots(); ++g)
        for (int tp = x->listen_slots(); tp < x->listen_slots() + x->relay_slots(); ++tp)
          scan(x->matrix(i, g, tp));
  } else if (const auto* p = std::get_if<PartialIaPrecoderSet>(&trial->run.precoders)) {
    const int users = p->users();
    for (int t = 0; t < users; ++t)
      for (int tp = users; tp < 2 * users - 1; ++tp) scan(p->relay_mix(t, tp));
  } else if (const auto* ic = std::get_if<IcPrecoderSet>(&trial->run.precoders)) {
    for (const auto& m : ic->matrices) scan(m);
  }
  return max_mag;
}

ria_status ria_trial_verify(const ria_trial* trial, ria_report** out) {
  if (!trial || !out) return RIA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const EffectiveChannel eff = build_effective(trial->run, 1.0, trial->options);
    const int dim = expected_interference_dim(trial->run.realization.topology(),
                                              trial->run.scheme);
    *out = new ria_report{verify_alignment(eff, dim, trial->options.verify_threshold)};
  });
}

ria_status ria_trial_sum_rate(const ria_trial* trial, const ria_report* report,
                              double symbol_power, double* out_bits_per_use) {
  if (!trial || !report || !out_bits_per_use) return RIA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const EffectiveChannel eff = build_effective(trial->run, symbol_power, trial->options);
    double sum = 0.0;
    for (const auto& per_rx : zf_rates(eff, report->report))
      sum = std::accumulate(per_rx.begin(), per_rx.end(), sum);
    *out_bits_per_use = sum / eff.total_slots();
  });
}

void ria_report_destroy(ria_report* report) { delete report; }

int ria_report_pass(const ria_report* report) {
  return report && report->report.all_pass() ? 1 : 0;
}

int ria_report_receiver_count(const ria_report* report) {
  return report ? static_cast<int>(report->report.receivers.size()) : 0;
}

ria_status ria_report_receiver(const ria_report* report, int receiver,
                               int* out_interference_rank, int* out_desired_rank,
                               int* out_total_rank, double* out_smallest_retained,
                               double* out_largest_discarded, int* out_pass) {
  if (!report || receiver < 0 ||
      receiver >= static_cast<int>(report->report.receivers.size()))
    return RIA_ERR_INVALID_ARGUMENT;
  const ReceiverAlignment& ra = report->report.receivers[receiver];
  if (out_interference_rank) *out_interference_rank = ra.interference_rank;
  if (out_desired_rank) *out_desired_rank = ra.desired_rank;
  if (out_total_rank) *out_total_rank = ra.total_rank;
  if (out_smallest_retained) *out_smallest_retained = ra.smallest_retained;
  if (out_largest_discarded) *out_largest_discarded = ra.largest_discarded;
  if (out_pass) *out_pass = ra.pass ? 1 : 0;
  return RIA_OK;
}

ria_status ria_sweep_run(const ria_topology* topology, ria_scheme scheme, uint64_t base_seed,
                         const ria_options* options, const double* snr_db, int snr_count,
                         int trials, int max_threads, ria_sweep** out) {
  if (!topology || !out || !snr_db || snr_count < 1) return RIA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    const std::vector<double> grid(snr_db, snr_db + snr_count);
    int workers = max_threads;
    if (workers <= 0) {
      const unsigned hw = std::thread::hardware_concurrency();
      workers = hw == 0 ? 1 : static_cast<int>(hw);
    }
    *out = new ria_sweep{estimate_dof(topology->topo, to_scheme(scheme), grid, trials,
                                      base_seed, to_options(options), workers)};
  });
}

void ria_sweep_destroy(ria_sweep* sweep) { delete sweep; }

int ria_sweep_point_count(const ria_sweep* sweep) {
  return sweep ? static_cast<int>(sweep->estimate.snr_points_db.size()) : 0;
}

ria_status ria_sweep_point(const ria_sweep* sweep, int index, double* out_snr_db,
                           double* out_mean_sum_rate_bits) {
  if (!sweep || index < 0 || index >= ria_sweep_point_count(sweep))
    return RIA_ERR_INVALID_ARGUMENT;
  if (out_snr_db) *out_snr_db = sweep->estimate.snr_points_db[index];
  if (out_mean_sum_rate_bits) *out_mean_sum_rate_bits = sweep->estimate.sum_rates_bits[index];
  return RIA_OK;
}

ria_status ria_sweep_counts(const ria_sweep* sweep, int* out_trials_used, int* out_skipped) {
  if (!sweep) return RIA_ERR_INVALID_ARGUMENT;
  if (out_trials_used) *out_trials_used = sweep->estimate.trials_used;
  if (out_skipped) *out_skipped = sweep->estimate.skipped;
  return RIA_OK;
}

ria_status ria_sweep_slope(const ria_sweep* sweep, double* out_slope, double* out_fit_residual) {
  if (!sweep) return RIA_ERR_INVALID_ARGUMENT;
  if (out_slope) *out_slope = sweep->estimate.slope_per_log2p;
  if (out_fit_residual) *out_fit_residual = sweep->estimate.fit_residual;
  return RIA_OK;
}

ria_status ria_dof_reference(ria_dof_kind kind, int a, int b, int64_t* out_num,
                             int64_t* out_den) {
  if (!out_num || !out_den) return RIA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    Rational r;
    switch (kind) {
      case RIA_DOF_X_CHANNEL: r = dof_reference_x(a, b); break;
      case RIA_DOF_INTERFERENCE: r = dof_reference_ic(a); break;
      case RIA_DOF_DELAYED_CSI: r = dof_reference_delayed_csi(a); break;
      default: throw InvalidArgumentError("unknown DoF kind");
    }
    *out_num = r.num;
    *out_den = r.den;
  });
}

}  // extern "C"
