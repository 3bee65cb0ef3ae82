#ifndef RELAYIA_CHANNEL_MODEL_HPP
#define RELAYIA_CHANNEL_MODEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace relayia {

enum class ChannelKind { XChannel, Interference };

// Scenario descriptor: who talks to whom, how many relays listen in, and the
// slot schedule implied by the scheme family.
//
// X channel: M transmitters, N receivers, M*N independent messages, N listen
// slots followed by M-1 relay slots. Interference channel: K transmitter-
// receiver pairs, one message each, one listen slot and one relay slot.
class NetworkTopology {
 public:
  static NetworkTopology x_channel(int tx_count, int rx_count, int relay_count,
                                   int antennas_per_relay);
  static NetworkTopology interference(int pair_count, int relay_count,
                                      int antennas_per_relay);

  ChannelKind kind() const { return kind_; }
  int tx_count() const { return tx_count_; }
  int rx_count() const { return rx_count_; }
  // Pair count for the interference channel (tx_count == rx_count there).
  int pair_count() const { return tx_count_; }
  int relay_count() const { return relay_count_; }
  int relay_antennas() const { return antennas_; }

  int listen_slots() const { return kind_ == ChannelKind::XChannel ? rx_count_ : 1; }
  int relay_slots() const { return kind_ == ChannelKind::XChannel ? tx_count_ - 1 : 1; }
  int total_slots() const { return listen_slots() + relay_slots(); }

  int stream_count() const {
    return kind_ == ChannelKind::XChannel ? tx_count_ * rx_count_ : tx_count_;
  }

 private:
  NetworkTopology(ChannelKind kind, int tx, int rx, int relays, int antennas);

  ChannelKind kind_;
  int tx_count_;
  int rx_count_;
  int relay_count_;
  int antennas_;
};

// One Monte Carlo draw of every channel coefficient, for every slot. Indices
// are 0-based; slot s here is slot s+1 in the usual 1-based convention.
//
// Schemes take this by const reference and never mutate it; the mutable
// accessors exist so tests can force degenerate coincidences.
class ChannelRealization {
 public:
  ChannelRealization(const NetworkTopology& topology, std::uint64_t seed, bool time_varying);

  const NetworkTopology& topology() const { return topology_; }
  std::uint64_t seed() const { return seed_; }
  bool time_varying() const { return time_varying_; }

  // h_{nm}(t): transmitter tx -> receiver rx at slot.
  std::complex<double> direct(int rx, int tx, int slot) const {
    return direct_[direct_index(rx, tx, slot)];
  }
  std::complex<double>& direct(int rx, int tx, int slot) {
    return direct_[direct_index(rx, tx, slot)];
  }

  // h_{R_j m}(t): transmitter tx -> relay, length-L vector.
  Eigen::Map<const Eigen::VectorXcd> tx_to_relay(int relay, int tx, int slot) const {
    return {tx_to_relay_.data() + uplink_index(relay, tx, slot), antennas_};
  }
  Eigen::Map<Eigen::VectorXcd> tx_to_relay(int relay, int tx, int slot) {
    return {tx_to_relay_.data() + uplink_index(relay, tx, slot), antennas_};
  }

  // h_{n R_j}(t): relay -> receiver rx, length-L vector.
  Eigen::Map<const Eigen::VectorXcd> relay_to_rx(int rx, int relay, int slot) const {
    return {relay_to_rx_.data() + downlink_index(rx, relay, slot), antennas_};
  }
  Eigen::Map<Eigen::VectorXcd> relay_to_rx(int rx, int relay, int slot) {
    return {relay_to_rx_.data() + downlink_index(rx, relay, slot), antennas_};
  }

  // Smallest coefficient magnitude across all three tensors.
  double min_coefficient_magnitude() const;

 private:
  std::ptrdiff_t direct_index(int rx, int tx, int slot) const {
    return (static_cast<std::ptrdiff_t>(rx) * topology_.tx_count() + tx) * slots_ + slot;
  }
  std::ptrdiff_t uplink_index(int relay, int tx, int slot) const {
    return ((static_cast<std::ptrdiff_t>(relay) * topology_.tx_count() + tx) * slots_ + slot) *
           antennas_;
  }
  std::ptrdiff_t downlink_index(int rx, int relay, int slot) const {
    return ((static_cast<std::ptrdiff_t>(rx) * topology_.relay_count() + relay) * slots_ + slot) *
           antennas_;
  }

  NetworkTopology topology_;
  std::uint64_t seed_;
  bool time_varying_;
  int slots_;
  int antennas_;
  std::vector<std::complex<double>> direct_;
  std::vector<std::complex<double>> tx_to_relay_;
  std::vector<std::complex<double>> relay_to_rx_;
};

// Draws every coefficient i.i.d. circularly-symmetric complex Gaussian with
// unit variance from the counter-based stream keyed by seed. With
// time_varying == false, the slot-0 draw is replicated bitwise across slots.
ChannelRealization generate_realization(const NetworkTopology& topology, std::uint64_t seed,
                                        bool time_varying);

// Raw degeneracy screen: false as soon as any single coefficient magnitude
// falls below threshold. Rank checks on assembled systems are the caller's
// concern, not this one's.
bool condition_guard(const ChannelRealization& realization, double threshold = 1e-12);

// Resample attempts allowed per trial when a solve reports ill-conditioning.
inline constexpr int kResampleBudget = 8;

}  // namespace relayia

#endif
