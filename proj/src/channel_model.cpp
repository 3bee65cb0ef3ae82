#include "channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "prng.hpp"

namespace relayia {

namespace {

// Substream tags so the three coefficient tensors never share counters.
enum : std::uint64_t { kDirectStream = 1, kUplinkStream = 2, kDownlinkStream = 3 };

}  // namespace

NetworkTopology::NetworkTopology(ChannelKind kind, int tx, int rx, int relays, int antennas)
    : kind_(kind), tx_count_(tx), rx_count_(rx), relay_count_(relays), antennas_(antennas) {}

NetworkTopology NetworkTopology::x_channel(int tx_count, int rx_count, int relay_count,
                                           int antennas_per_relay) {
  if (tx_count < 2 || rx_count < 2)
    throw InvalidArgumentError("X channel needs at least 2 transmitters and 2 receivers");
  if (relay_count < 1 || antennas_per_relay < 1)
    throw InvalidArgumentError("need at least one relay with at least one antenna");
  return {ChannelKind::XChannel, tx_count, rx_count, relay_count, antennas_per_relay};
}

NetworkTopology NetworkTopology::interference(int pair_count, int relay_count,
                                              int antennas_per_relay) {
  if (pair_count < 3)
    throw InvalidArgumentError("interference channel needs at least 3 pairs");
  if (relay_count < 1 || antennas_per_relay < 1)
    throw InvalidArgumentError("need at least one relay with at least one antenna");
  return {ChannelKind::Interference, pair_count, pair_count, relay_count, antennas_per_relay};
}

ChannelRealization::ChannelRealization(const NetworkTopology& topology, std::uint64_t seed,
                                       bool time_varying)
    : topology_(topology),
      seed_(seed),
      time_varying_(time_varying),
      slots_(topology.total_slots()),
      antennas_(topology.relay_antennas()) {
  const int n = topology.rx_count();
  const int m = topology.tx_count();
  const int j = topology.relay_count();
  direct_.resize(static_cast<std::size_t>(n) * m * slots_);
  tx_to_relay_.resize(static_cast<std::size_t>(j) * m * slots_ * antennas_);
  relay_to_rx_.resize(static_cast<std::size_t>(n) * j * slots_ * antennas_);
}

double ChannelRealization::min_coefficient_magnitude() const {
  double min_mag = std::numeric_limits<double>::infinity();
  for (const auto& c : direct_) min_mag = std::min(min_mag, std::abs(c));
  for (const auto& c : tx_to_relay_) min_mag = std::min(min_mag, std::abs(c));
  for (const auto& c : relay_to_rx_) min_mag = std::min(min_mag, std::abs(c));
  return min_mag;
}

ChannelRealization generate_realization(const NetworkTopology& topology, std::uint64_t seed,
                                        bool time_varying) {
  ChannelRealization real(topology, seed, time_varying);
  const int rx = topology.rx_count();
  const int tx = topology.tx_count();
  const int relays = topology.relay_count();
  const int antennas = topology.relay_antennas();
  const int slots = topology.total_slots();

  const std::uint64_t direct_key = prng::derive(seed, kDirectStream);
  const std::uint64_t uplink_key = prng::derive(seed, kUplinkStream);
  const std::uint64_t downlink_key = prng::derive(seed, kDownlinkStream);

  for (int n = 0; n < rx; ++n)
    for (int m = 0; m < tx; ++m)
      for (int t = 0; t < slots; ++t) {
        const std::uint64_t draw_slot = time_varying ? t : 0;
        const std::uint64_t counter = (static_cast<std::uint64_t>(n) * tx + m) * slots + draw_slot;
        real.direct(n, m, t) = prng::complex_gaussian(direct_key, counter);
      }

  for (int j = 0; j < relays; ++j)
    for (int m = 0; m < tx; ++m)
      for (int t = 0; t < slots; ++t) {
        auto vec = real.tx_to_relay(j, m, t);
        const std::uint64_t draw_slot = time_varying ? t : 0;
        for (int l = 0; l < antennas; ++l) {
          const std::uint64_t counter =
              ((static_cast<std::uint64_t>(j) * tx + m) * slots + draw_slot) * antennas + l;
          vec(l) = prng::complex_gaussian(uplink_key, counter);
        }
      }

  for (int n = 0; n < rx; ++n)
    for (int j = 0; j < relays; ++j)
      for (int t = 0; t < slots; ++t) {
        auto vec = real.relay_to_rx(n, j, t);
        const std::uint64_t draw_slot = time_varying ? t : 0;
        for (int l = 0; l < antennas; ++l) {
          const std::uint64_t counter =
              ((static_cast<std::uint64_t>(n) * relays + j) * slots + draw_slot) * antennas + l;
          vec(l) = prng::complex_gaussian(downlink_key, counter);
        }
      }

  return real;
}

bool condition_guard(const ChannelRealization& realization, double threshold) {
  return realization.min_coefficient_magnitude() >= threshold;
}

}  // namespace relayia
