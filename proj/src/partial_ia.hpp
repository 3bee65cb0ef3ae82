#ifndef RELAYIA_PARTIAL_IA_HPP
#define RELAYIA_PARTIAL_IA_HPP

#include <vector>

#include "channel_model.hpp"
#include "effective_channel.hpp"
#include "numeric_core.hpp"

namespace relayia {

// Partial-alignment scheme for the K-user X channel with a single relay
// carrying K-1 antennas. Instead of solving one large joint system, the relay
// matches interference coefficients with per-slot transforms u_i(t), beams
// each transformed signal into the null space of the unintended receivers'
// downlinks with v_{ti}(t'), and finishes the alignment with scalars
// alpha_{ti}(t') that fold the repeated direct transmission in.

class PartialIaPrecoderSet {
 public:
  PartialIaPrecoderSet(int users, int antennas);

  // u_i(t), defined for i != t. Length K-1.
  const ComplexVector& transform(int i, int t) const { return u_[grid(i, t)]; }
  ComplexVector& transform(int i, int t) { return u_[grid(i, t)]; }

  // v_{ti}(t'), unit norm, defined for i != t; relay_slot is absolute
  // (K .. 2K-2).
  const ComplexVector& beamformer(int t, int i, int relay_slot) const {
    return v_[cube(t, i, relay_slot)];
  }
  ComplexVector& beamformer(int t, int i, int relay_slot) { return v_[cube(t, i, relay_slot)]; }

  // alpha_{ti}(t'), defined for i != t.
  std::complex<double> alpha(int t, int i, int relay_slot) const {
    return alpha_[cube(t, i, relay_slot)];
  }
  std::complex<double>& alpha(int t, int i, int relay_slot) {
    return alpha_[cube(t, i, relay_slot)];
  }

  // The relay's end-to-end linear map for block t in relay slot t':
  // sum_{i != t} alpha_{ti}(t') v_{ti}(t') u_i(t)^T.
  ComplexMatrix relay_mix(int t, int relay_slot) const;

  int users() const { return users_; }
  int resamples_used = 0;

 private:
  std::size_t grid(int i, int t) const { return static_cast<std::size_t>(i) * users_ + t; }
  std::size_t cube(int t, int i, int relay_slot) const {
    return (static_cast<std::size_t>(t) * users_ + i) * (users_ - 1) + (relay_slot - users_);
  }

  int users_;
  std::vector<ComplexVector> u_;
  std::vector<ComplexVector> v_;
  std::vector<std::complex<double>> alpha_;
};

// Throws InvalidArgumentError unless the topology is an X channel with
// M == N == K, one relay, and K-1 antennas.
void require_partial_ia_topology(const NetworkTopology& topology);

// u_i(t) solving u_i(t)^T h_{Rk}(t) = h_{ik}(t) for all k != t; one square
// (K-1)x(K-1) system per slot t shared by every i != t.
void solve_partial_transforms(const ChannelRealization& realization,
                              PartialIaPrecoderSet& precoders);

// v_{ti}(t'): unit null-space vector of the stacked rows h_{lR}(t')^T over
// l not in {t, i}; sign/phase fixed by making the largest-magnitude entry real
// positive. Throws IllConditionedError when the stacked matrix is rank
// deficient (null space wider than one dimension).
void solve_beamformers(const ChannelRealization& realization, PartialIaPrecoderSet& precoders);

// alpha_{ti}(t') = h_{it}(t') / [(h_{it}(t) - u_i(t)^T h_{Rt}(t)) *
// (h_{iR}(t')^T v_{ti}(t'))], steering each block's direct stream d_{tt} into
// the line already spanned by that block's relayed interference. Needs the
// transforms and beamformers already in place. With joint beamforming off the
// numerators vanish and so do the scalars. Throws DegenerateDenominatorError
// when a denominator magnitude is <= 1e-10.
void solve_alignment_scalars(const ChannelRealization& realization,
                             PartialIaPrecoderSet& precoders, bool joint_beamforming = true);

// All three stages in order.
PartialIaPrecoderSet solve_partial_precoders(const ChannelRealization& realization,
                                             bool joint_beamforming = true);

// Stacks the 2K-1 received slots per receiver; columns scaled by
// sqrt(symbol_power); noise covariance mirrors effective_channel_x with the
// relay mix in place of the precoding matrices.
EffectiveChannel effective_channel_partial(const ChannelRealization& realization,
                                           const PartialIaPrecoderSet& precoders,
                                           double symbol_power, bool joint_beamforming = true);

}  // namespace relayia

#endif
