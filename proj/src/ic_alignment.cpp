#include "ic_alignment.hpp"

#include <cmath>

namespace relayia {

namespace {

// Reference interferer for receiver k: pair 2 when k is pair 1, else pair 1
// (0-based: 1 when k == 0, else 0).
int reference_interferer(int k) { return k == 0 ? 1 : 0; }

}  // namespace

int required_relays_ic(int pair_count, int antennas) {
  const long long equations = static_cast<long long>(pair_count) * (pair_count - 2);
  const long long per_relay = static_cast<long long>(antennas) * antennas;
  return static_cast<int>((equations + per_relay - 1) / per_relay);
}

std::pair<ComplexMatrix, ComplexVector> assemble_ic_system(const ChannelRealization& realization,
                                                           bool joint_beamforming) {
  const NetworkTopology& topo = realization.topology();
  if (topo.kind() != ChannelKind::Interference)
    throw InvalidArgumentError("assemble_ic_system: topology is not an interference channel");
  const int pairs = topo.pair_count();
  const int relays = topo.relay_count();
  const int antennas = topo.relay_antennas();

  const int rows = pairs * (pairs - 2);
  const int cols = relays * antennas * antennas;
  ComplexMatrix matrix(rows, cols);
  ComplexVector rhs(rows);

  int row = 0;
  for (int k = 0; k < pairs; ++k) {
    const int i = reference_interferer(k);
    const std::complex<double> h_ki_1 = realization.direct(k, i, 0);
    if (std::abs(h_ki_1) <= 1e-12)
      throw DegenerateDenominatorError("reference interferer gain vanished");
    for (int l = 0; l < pairs; ++l) {
      if (l == k || l == i) continue;
      const std::complex<double> h_kl_1 = realization.direct(k, l, 0);
      if (std::abs(h_kl_1) <= 1e-12)
        throw DegenerateDenominatorError("interferer gain vanished");

      int col = 0;
      for (int j = 0; j < relays; ++j) {
        const auto to_rx = realization.relay_to_rx(k, j, 1);
        const auto from_i = realization.tx_to_relay(j, i, 0);
        const auto from_l = realization.tx_to_relay(j, l, 0);
        for (int m = 0; m < antennas; ++m)
          for (int n = 0; n < antennas; ++n)
            matrix(row, col++) = to_rx(m) * (from_i(n) / h_ki_1 - from_l(n) / h_kl_1);
      }
      rhs(row) = joint_beamforming
                     ? realization.direct(k, l, 1) / h_kl_1 - realization.direct(k, i, 1) / h_ki_1
                     : std::complex<double>(0.0, 0.0);
      ++row;
    }
  }
  return {std::move(matrix), std::move(rhs)};
}

IcPrecoderSet solve_ic_precoders(const ChannelRealization& realization, const IcOptions& options) {
  const NetworkTopology& topo = realization.topology();
  const int pairs = topo.pair_count();
  const int relays = topo.relay_count();
  const int antennas = topo.relay_antennas();
  const int required = required_relays_ic(pairs, antennas);
  if (relays < required) throw InfeasibleRelayCountError(required, relays);

  const long long equations = static_cast<long long>(pairs) * (pairs - 2);
  const long long variables = static_cast<long long>(relays) * antennas * antennas;
  if (options.null_space_mode && variables <= equations)
    throw InfeasibleRelayCountError(required + 1, relays);  // needs JL^2 > K(K-2)

  auto [matrix, rhs] = assemble_ic_system(realization, options.joint_beamforming);
  ComplexVector solution;
  if (options.null_space_mode) {
    auto basis = null_space_basis(matrix);
    if (basis.empty()) throw IllConditionedError("expected nontrivial null space");
    solution = basis.front();
  } else {
    solution = least_norm_solve(matrix, rhs);
  }

  IcPrecoderSet precoders;
  precoders.matrices.assign(static_cast<std::size_t>(relays),
                            ComplexMatrix::Zero(antennas, antennas));
  int idx = 0;
  for (int j = 0; j < relays; ++j)
    for (int m = 0; m < antennas; ++m)
      for (int n = 0; n < antennas; ++n) precoders.matrices[j](m, n) = solution(idx++);
  return precoders;
}

EffectiveChannel effective_channel_ic(const ChannelRealization& realization,
                                      const IcPrecoderSet& precoders, double symbol_power,
                                      bool joint_beamforming) {
  const NetworkTopology& topo = realization.topology();
  const int pairs = topo.pair_count();
  const int relays = topo.relay_count();
  const double amplitude = std::sqrt(symbol_power);

  EffectiveChannel eff;
  eff.listen_slots = 1;
  eff.relay_slots = 1;
  for (int k = 0; k < pairs; ++k) eff.streams.push_back({k, k});

  eff.receivers.resize(pairs);
  for (int k = 0; k < pairs; ++k) {
    ComplexMatrix gains(2, pairs);
    for (int i = 0; i < pairs; ++i) {
      gains(0, i) = realization.direct(k, i, 0);
      std::complex<double> second(0.0, 0.0);
      if (joint_beamforming) second += realization.direct(k, i, 1);
      for (int j = 0; j < relays; ++j) {
        second += (realization.relay_to_rx(k, j, 1).transpose() * precoders.matrices[j] *
                   realization.tx_to_relay(j, i, 0))
                      .value();
      }
      gains(1, i) = second;
    }

    double forwarded = 0.0;
    for (int j = 0; j < relays; ++j)
      forwarded += (realization.relay_to_rx(k, j, 1).transpose() * precoders.matrices[j])
                       .squaredNorm();

    ComplexMatrix cov = ComplexMatrix::Identity(2, 2);
    cov(1, 1) += forwarded;

    eff.receivers[k].gains = amplitude * gains;
    eff.receivers[k].noise_covariance = std::move(cov);
  }
  return eff;
}

}  // namespace relayia
