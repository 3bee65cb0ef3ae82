#ifndef RELAYIA_EVALUATION_HPP
#define RELAYIA_EVALUATION_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "channel_model.hpp"
#include "effective_channel.hpp"
#include "ic_alignment.hpp"
#include "partial_ia.hpp"
#include "x_alignment.hpp"

namespace relayia {

enum class Scheme { XTheorem1, PartialIA, ICTheorem3 };

struct SchemeOptions {
  bool time_varying = true;
  bool joint_beamforming = true;
  bool null_space_mode = false;  // IC only
  double symbol_power = 1.0;
  // Rank threshold for verification; looser than the solver tolerance so
  // accumulated error does not flip a rank.
  double verify_threshold = 1e-6;
};

struct ReceiverAlignment {
  int interference_rank = 0;
  int desired_rank = 0;
  int total_rank = 0;
  double smallest_retained = 0.0;  // singular-value margin around the rank cut
  double largest_discarded = 0.0;
  bool pass = false;
};

struct AlignmentReport {
  std::vector<ReceiverAlignment> receivers;
  int expected_interference_dim = 0;
  int total_slots = 0;

  bool all_pass() const {
    for (const auto& r : receivers)
      if (!r.pass) return false;
    return !receivers.empty();
  }
};

// Rank diagnostics per receiver. A receiver passes when its interference
// collapsed to the expected dimension, the full matrix spans every slot, and
// desired and interference subspaces intersect trivially
// (desired + interference == total).
AlignmentReport verify_alignment(const EffectiveChannel& effective,
                                 int expected_interference_dim, double rel_threshold = 1e-6);

// Interference-nulling zero-forcing receiver: whiten with the noise
// covariance, project out the whitened interference span, jointly invert the
// desired block. Returns log2(1+SINR) per desired stream, per receiver, in
// bits per block of total_slots channel uses. rel_threshold decides how many
// whitened interference directions get nulled; past the pass precondition
// whatever is left sits below it. Throws AlignmentNotVerifiedError unless the
// report passes.
std::vector<std::vector<double>> zf_rates(const EffectiveChannel& effective,
                                          const AlignmentReport& report,
                                          double rel_threshold = 1e-6);

// One solved trial: the (possibly resampled) realization plus the precoders
// produced by the selected scheme.
struct SchemeRun {
  ChannelRealization realization;
  std::variant<XPrecoderSet, PartialIaPrecoderSet, IcPrecoderSet> precoders;
  Scheme scheme = Scheme::XTheorem1;
  int resamples_used = 0;
};

// Expected interference dimension after alignment: N-1 on the X channel
// (and the partial scheme), 1 on the interference channel.
int expected_interference_dim(const NetworkTopology& topology, Scheme scheme);

// Generate -> guard -> solve, resampling with an incremented sub-seed up to
// kResampleBudget times on ill-conditioning or degenerate denominators.
// Throws the last numerical error once the budget is exhausted.
SchemeRun run_scheme_trial(const NetworkTopology& topology, Scheme scheme, std::uint64_t seed,
                           const SchemeOptions& options);

// Effective channel of a solved trial at the given symbol power.
EffectiveChannel build_effective(const SchemeRun& run, double symbol_power,
                                 const SchemeOptions& options);

struct DofEstimate {
  std::vector<double> snr_points_db;
  std::vector<double> sum_rates_bits;  // mean sum rate per channel use, per SNR point
  double slope_per_log2p = 0.0;
  double fit_residual = 0.0;  // RMS error of the linear fit
  int trials = 0;             // requested
  int trials_used = 0;        // contributing to the means
  int skipped = 0;            // exhausted resampling or failed verification
};

// Full pipeline sweep: per trial and SNR point, generate -> solve ->
// effective channel -> verify -> rates; average over trials in deterministic
// trial order; least-squares slope of sum rate per channel use against
// log2(P). max_threads <= 1 runs serially; results are identical for any
// thread count.
DofEstimate estimate_dof(const NetworkTopology& topology, Scheme scheme,
                         const std::vector<double>& snr_grid_db, int trials,
                         std::uint64_t base_seed, const SchemeOptions& options = {},
                         int max_threads = 1);

// Exact reduced fraction.
struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Rational dof_reference_x(int tx_count, int rx_count);  // MN / (M+N-1)
Rational dof_reference_ic(int pair_count);             // K / 2
// K / H_K: the K-user X channel with a K-antenna relay holding only delayed
// CSI. Reference value only; no scheme behind it here.
Rational dof_reference_delayed_csi(int pair_count);

}  // namespace relayia

#endif
