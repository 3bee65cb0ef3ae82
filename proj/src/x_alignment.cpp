#include "x_alignment.hpp"

#include <cmath>

namespace relayia {

XPrecoderSet::XPrecoderSet(int relays, int listen_slots, int relay_slots, int antennas)
    : relays_(relays), listen_slots_(listen_slots), relay_slots_(relay_slots) {
  matrices_.assign(static_cast<std::size_t>(relays) * listen_slots * relay_slots,
                   ComplexMatrix::Zero(antennas, antennas));
}

int required_relays_x(int tx_count, int rx_count, int antennas) {
  const long long equations = static_cast<long long>(tx_count - 1) * (rx_count - 1);
  const long long per_relay = static_cast<long long>(antennas) * antennas;
  return static_cast<int>((equations + per_relay - 1) / per_relay);
}

std::pair<ComplexMatrix, ComplexVector> assemble_x_system(const ChannelRealization& realization,
                                                          int source_slot, int relay_slot,
                                                          bool joint_beamforming) {
  const NetworkTopology& topo = realization.topology();
  if (topo.kind() != ChannelKind::XChannel)
    throw InvalidArgumentError("assemble_x_system: topology is not an X channel");
  const int tx = topo.tx_count();
  const int rx = topo.rx_count();
  const int relays = topo.relay_count();
  const int antennas = topo.relay_antennas();
  if (source_slot < 0 || source_slot >= topo.listen_slots() || relay_slot < topo.listen_slots() ||
      relay_slot >= topo.total_slots())
    throw InvalidArgumentError("assemble_x_system: slot out of range");

  const int rows = (tx - 1) * (rx - 1);
  const int cols = relays * antennas * antennas;
  ComplexMatrix matrix(rows, cols);
  ComplexVector rhs(rows);

  int row = 0;
  for (int n = 0; n < rx; ++n) {
    if (n == source_slot) continue;
    for (int k = 1; k < tx; ++k) {
      const std::complex<double> h_n1 = realization.direct(n, 0, source_slot);
      const std::complex<double> h_nk = realization.direct(n, k, source_slot);
      int col = 0;
      for (int i = 0; i < relays; ++i) {
        const auto to_rx = realization.relay_to_rx(n, i, relay_slot);
        const auto from_k = realization.tx_to_relay(i, k, source_slot);
        const auto from_1 = realization.tx_to_relay(i, 0, source_slot);
        for (int p = 0; p < antennas; ++p)
          for (int q = 0; q < antennas; ++q)
            matrix(row, col++) = to_rx(p) * (h_n1 * from_k(q) - h_nk * from_1(q));
      }
      rhs(row) = joint_beamforming
                     ? h_nk * realization.direct(n, 0, relay_slot)
                     : std::complex<double>(0.0, 0.0);
      ++row;
    }
  }
  return {std::move(matrix), std::move(rhs)};
}

XPrecoderSet solve_x_precoders(const ChannelRealization& realization, bool joint_beamforming) {
  const NetworkTopology& topo = realization.topology();
  const int relays = topo.relay_count();
  const int antennas = topo.relay_antennas();
  const int required = required_relays_x(topo.tx_count(), topo.rx_count(), antennas);
  if (relays < required) throw InfeasibleRelayCountError(required, relays);

  XPrecoderSet precoders(relays, topo.listen_slots(), topo.relay_slots(), antennas);
  for (int gamma = 0; gamma < topo.listen_slots(); ++gamma) {
    for (int tp = topo.listen_slots(); tp < topo.total_slots(); ++tp) {
      auto [matrix, rhs] = assemble_x_system(realization, gamma, tp, joint_beamforming);
      const ComplexVector solution = least_norm_solve(matrix, rhs);
      int idx = 0;
      for (int i = 0; i < relays; ++i) {
        ComplexMatrix& u = precoders.matrix(i, gamma, tp);
        for (int p = 0; p < antennas; ++p)
          for (int q = 0; q < antennas; ++q) u(p, q) = solution(idx++);
      }
    }
  }
  return precoders;
}

EffectiveChannel effective_channel_x(const ChannelRealization& realization,
                                     const XPrecoderSet& precoders, double symbol_power,
                                     bool joint_beamforming) {
  const NetworkTopology& topo = realization.topology();
  const int tx = topo.tx_count();
  const int rx = topo.rx_count();
  const int relays = topo.relay_count();
  const int listen = topo.listen_slots();
  const int total = topo.total_slots();
  const double amplitude = std::sqrt(symbol_power);

  EffectiveChannel eff;
  eff.listen_slots = listen;
  eff.relay_slots = topo.relay_slots();
  for (int gamma = 0; gamma < rx; ++gamma)
    for (int m = 0; m < tx; ++m) eff.streams.push_back({gamma, m});

  eff.receivers.resize(rx);
  for (int n = 0; n < rx; ++n) {
    ComplexMatrix gains = ComplexMatrix::Zero(total, eff.stream_count());
    int col = 0;
    for (int gamma = 0; gamma < rx; ++gamma) {
      for (int k = 0; k < tx; ++k, ++col) {
        gains(gamma, col) = realization.direct(n, k, gamma);
        for (int tp = listen; tp < total; ++tp) {
          std::complex<double> entry(0.0, 0.0);
          for (int i = 0; i < relays; ++i) {
            entry += (realization.relay_to_rx(n, i, tp).transpose() *
                      precoders.matrix(i, gamma, tp) * realization.tx_to_relay(i, k, gamma))
                         .value();
          }
          if (k == 0 && joint_beamforming) entry += realization.direct(n, 0, tp);
          gains(tp, col) = entry;
        }
      }
    }

    ComplexMatrix cov = ComplexMatrix::Identity(total, total);
    // Forwarded relay noise: relay i re-broadcasts its slot-t antenna noise
    // through U_{it}(t'), correlating the relay-slot rows.
    for (int tp = listen; tp < total; ++tp) {
      for (int ts = listen; ts < total; ++ts) {
        std::complex<double> entry(0.0, 0.0);
        for (int i = 0; i < relays; ++i) {
          for (int t = 0; t < listen; ++t) {
            const Eigen::RowVectorXcd a_tp = realization.relay_to_rx(n, i, tp).transpose() *
                                             precoders.matrix(i, t, tp);
            const Eigen::RowVectorXcd a_ts = realization.relay_to_rx(n, i, ts).transpose() *
                                             precoders.matrix(i, t, ts);
            entry += (a_tp * a_ts.adjoint())(0, 0);
          }
        }
        cov(tp, ts) += entry;
      }
    }

    eff.receivers[n].gains = amplitude * gains;
    eff.receivers[n].noise_covariance = std::move(cov);
  }
  return eff;
}

}  // namespace relayia
