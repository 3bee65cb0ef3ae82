#ifndef RELAYIA_X_ALIGNMENT_HPP
#define RELAYIA_X_ALIGNMENT_HPP

#include <utility>
#include <vector>

#include "channel_model.hpp"
#include "effective_channel.hpp"
#include "numeric_core.hpp"

namespace relayia {

// Joint-beamforming scheme for the M x N X channel with J relays of L
// antennas. Transmitters broadcast plainly in the N listen slots; in each of
// the M-1 relay slots every relay retransmits a precoded mix of everything it
// heard, and transmitter 1 repeats the sum of its messages so the alignment
// system has a nonzero right side.

// Relay precoding matrices U_{i,gamma}(t'): one L x L matrix per relay i, per
// source slot gamma (0..N-1), per relay slot t' (N..M+N-2).
class XPrecoderSet {
 public:
  XPrecoderSet(int relays, int listen_slots, int relay_slots, int antennas);

  const ComplexMatrix& matrix(int relay, int source_slot, int relay_slot) const {
    return matrices_[index(relay, source_slot, relay_slot)];
  }
  ComplexMatrix& matrix(int relay, int source_slot, int relay_slot) {
    return matrices_[index(relay, source_slot, relay_slot)];
  }

  int relays() const { return relays_; }
  int listen_slots() const { return listen_slots_; }
  int relay_slots() const { return relay_slots_; }

  int resamples_used = 0;

 private:
  std::size_t index(int relay, int source_slot, int relay_slot) const {
    // relay_slot is an absolute slot index, listen_slots_ .. total-1.
    return (static_cast<std::size_t>(relay) * listen_slots_ + source_slot) * relay_slots_ +
           (relay_slot - listen_slots_);
  }

  int relays_;
  int listen_slots_;
  int relay_slots_;
  std::vector<ComplexMatrix> matrices_;
};

// ceil((M-1)(N-1) / L^2): relays sufficient for the optimal DoF MN/(M+N-1).
int required_relays_x(int tx_count, int rx_count, int antennas);

// Builds the per-(gamma, t') linear system H(gamma,t') u = b(gamma,t').
//
// Rows run over (n != gamma, k != 1), n outer; columns over (i, p, q) with the
// relay index outermost and the precoder's row index p before its column q.
// Row (n,k) of H holds h_{nR_i,p}(t') (h_{n1}(gamma) h_{R_ik,q}(gamma) -
// h_{nk}(gamma) h_{R_i1,q}(gamma)); the right side is h_{nk}(gamma) h_{n1}(t'),
// or zero when transmitter 1 stays silent in relay slots.
std::pair<ComplexMatrix, ComplexVector> assemble_x_system(const ChannelRealization& realization,
                                                          int source_slot, int relay_slot,
                                                          bool joint_beamforming = true);

// Solves every (gamma, t') system by minimum-norm least squares and reshapes
// the solutions into precoding matrices. Throws InfeasibleRelayCountError when
// J < required_relays_x, IllConditionedError when a system is row-rank
// deficient (resample trigger).
XPrecoderSet solve_x_precoders(const ChannelRealization& realization,
                               bool joint_beamforming = true);

// Stacks the received signal of all M+N-1 slots into the per-receiver
// effective channel, columns scaled by sqrt(symbol_power). Noise covariance is
// identity plus the forwarded relay noise on the relay-slot block.
EffectiveChannel effective_channel_x(const ChannelRealization& realization,
                                     const XPrecoderSet& precoders, double symbol_power,
                                     bool joint_beamforming = true);

}  // namespace relayia

#endif
