#ifndef RELAYIA_IC_ALIGNMENT_HPP
#define RELAYIA_IC_ALIGNMENT_HPP

#include <utility>
#include <vector>

#include "channel_model.hpp"
#include "effective_channel.hpp"
#include "numeric_core.hpp"

namespace relayia {

// Two-slot scheme for the K-user interference channel with J relays of L
// antennas. Slot 1: every pair transmits. Slot 2: each relay forwards its
// received vector through a single precoding matrix U_j (shared by all
// receivers), while the transmitters repeat their symbols unless joint
// beamforming is disabled.

struct IcPrecoderSet {
  std::vector<ComplexMatrix> matrices;  // U_j, L x L, one per relay
  int resamples_used = 0;
};

struct IcOptions {
  bool joint_beamforming = true;
  // Take the precoders from the null space of H (zero right side) instead of
  // the least-norm particular solution. Works only when JL^2 > K(K-2); this is
  // what keeps the scheme alive with constant channels or silent slot-2
  // transmitters.
  bool null_space_mode = false;
};

// ceil(K(K-2) / L^2).
int required_relays_ic(int pair_count, int antennas);

// Builds the global stacked system H u = b. Rows run over (k, l) with k outer
// and l over the interferers of receiver k other than the reference
// interferer i (i = 2 for k = 1, else i = 1, in 1-based terms); columns over
// (j, m, n). Throws DegenerateDenominatorError when a slot-1 direct gain that
// appears in a denominator has magnitude <= 1e-12.
std::pair<ComplexMatrix, ComplexVector> assemble_ic_system(const ChannelRealization& realization,
                                                           bool joint_beamforming = true);

// Least-norm (or null-space) solution reshaped into the U_j. Throws
// InfeasibleRelayCountError when JL^2 < K(K-2) (or, in null-space mode, when
// JL^2 <= K(K-2)); IllConditionedError propagates as a resample trigger.
IcPrecoderSet solve_ic_precoders(const ChannelRealization& realization,
                                 const IcOptions& options = {});

// Per-receiver 2 x K effective channel, columns scaled by sqrt(symbol_power);
// noise covariance diag(1, 1 + forwarded relay noise power).
EffectiveChannel effective_channel_ic(const ChannelRealization& realization,
                                      const IcPrecoderSet& precoders, double symbol_power,
                                      bool joint_beamforming = true);

}  // namespace relayia

#endif
