#include "partial_ia.hpp"

#include <cmath>

namespace relayia {

PartialIaPrecoderSet::PartialIaPrecoderSet(int users, int antennas) : users_(users) {
  u_.assign(static_cast<std::size_t>(users) * users, ComplexVector::Zero(antennas));
  v_.assign(static_cast<std::size_t>(users) * users * (users - 1), ComplexVector::Zero(antennas));
  alpha_.assign(v_.size(), std::complex<double>(0.0, 0.0));
}

ComplexMatrix PartialIaPrecoderSet::relay_mix(int t, int relay_slot) const {
  const int antennas = users_ - 1;
  ComplexMatrix mix = ComplexMatrix::Zero(antennas, antennas);
  for (int i = 0; i < users_; ++i) {
    if (i == t) continue;
    mix += alpha(t, i, relay_slot) * beamformer(t, i, relay_slot) * transform(i, t).transpose();
  }
  return mix;
}

void require_partial_ia_topology(const NetworkTopology& topology) {
  if (topology.kind() != ChannelKind::XChannel || topology.tx_count() != topology.rx_count())
    throw InvalidArgumentError("partial IA needs a K-user X channel (square)");
  if (topology.relay_count() != 1)
    throw InvalidArgumentError("partial IA uses exactly one relay");
  if (topology.relay_antennas() != topology.tx_count() - 1)
    throw InvalidArgumentError("partial IA needs K-1 antennas at the relay");
}

void solve_partial_transforms(const ChannelRealization& realization,
                              PartialIaPrecoderSet& precoders) {
  require_partial_ia_topology(realization.topology());
  const int users = realization.topology().tx_count();
  const int antennas = users - 1;

  for (int t = 0; t < users; ++t) {
    // Rows h_{Rk}(t)^T over k != t; the same matrix serves every u_i(t).
    ComplexMatrix relay_rows(antennas, antennas);
    int row = 0;
    for (int k = 0; k < users; ++k) {
      if (k == t) continue;
      relay_rows.row(row++) = realization.tx_to_relay(0, k, t).transpose();
    }
    for (int i = 0; i < users; ++i) {
      if (i == t) continue;
      ComplexVector rhs(antennas);
      int r = 0;
      for (int k = 0; k < users; ++k) {
        if (k == t) continue;
        rhs(r++) = realization.direct(i, k, t);
      }
      precoders.transform(i, t) = least_norm_solve(relay_rows, rhs);
    }
  }
}

void solve_beamformers(const ChannelRealization& realization, PartialIaPrecoderSet& precoders) {
  require_partial_ia_topology(realization.topology());
  const int users = realization.topology().tx_count();
  const int antennas = users - 1;

  for (int tp = users; tp < 2 * users - 1; ++tp) {
    for (int t = 0; t < users; ++t) {
      for (int i = 0; i < users; ++i) {
        if (i == t) continue;
        ComplexMatrix blocked(users - 2, antennas);
        int row = 0;
        for (int l = 0; l < users; ++l) {
          if (l == t || l == i) continue;
          blocked.row(row++) = realization.relay_to_rx(l, 0, tp).transpose();
        }
        auto basis = null_space_basis(blocked);
        if (basis.size() != 1)
          throw IllConditionedError("beamformer null space is not one-dimensional");
        ComplexVector v = basis.front();
        // Reproducible phase: rotate so the largest-magnitude entry is real
        // positive.
        Eigen::Index arg_max = 0;
        v.cwiseAbs().maxCoeff(&arg_max);
        const std::complex<double> pivot = v(arg_max);
        v *= std::conj(pivot) / std::abs(pivot);
        precoders.beamformer(t, i, tp) = v;
      }
    }
  }
}

void solve_alignment_scalars(const ChannelRealization& realization,
                             PartialIaPrecoderSet& precoders, bool joint_beamforming) {
  require_partial_ia_topology(realization.topology());
  const int users = realization.topology().tx_count();

  for (int tp = users; tp < 2 * users - 1; ++tp) {
    for (int t = 0; t < users; ++t) {
      for (int i = 0; i < users; ++i) {
        if (i == t) continue;
        const std::complex<double> matched =
            realization.direct(i, t, t) -
            (precoders.transform(i, t).transpose() * realization.tx_to_relay(0, t, t)).value();
        const std::complex<double> beamed =
            (realization.relay_to_rx(i, 0, tp).transpose() * precoders.beamformer(t, i, tp))
                .value();
        const std::complex<double> denominator = matched * beamed;
        if (std::abs(denominator) <= 1e-10)
          throw DegenerateDenominatorError("alignment scalar denominator vanished");
        const std::complex<double> numerator =
            joint_beamforming ? realization.direct(i, t, tp) : std::complex<double>(0.0, 0.0);
        precoders.alpha(t, i, tp) = numerator / denominator;
      }
    }
  }
}

PartialIaPrecoderSet solve_partial_precoders(const ChannelRealization& realization,
                                             bool joint_beamforming) {
  const int users = realization.topology().tx_count();
  PartialIaPrecoderSet precoders(users, users - 1);
  solve_partial_transforms(realization, precoders);
  solve_beamformers(realization, precoders);
  solve_alignment_scalars(realization, precoders, joint_beamforming);
  return precoders;
}

EffectiveChannel effective_channel_partial(const ChannelRealization& realization,
                                           const PartialIaPrecoderSet& precoders,
                                           double symbol_power, bool joint_beamforming) {
  require_partial_ia_topology(realization.topology());
  const NetworkTopology& topo = realization.topology();
  const int users = topo.tx_count();
  const int listen = topo.listen_slots();
  const int total = topo.total_slots();
  const double amplitude = std::sqrt(symbol_power);

  EffectiveChannel eff;
  eff.listen_slots = listen;
  eff.relay_slots = topo.relay_slots();
  for (int gamma = 0; gamma < users; ++gamma)
    for (int k = 0; k < users; ++k) eff.streams.push_back({gamma, k});

  // One relay map per (block, relay slot); shared by all receivers.
  std::vector<ComplexMatrix> mixes(static_cast<std::size_t>(users) * (users - 1));
  for (int t = 0; t < users; ++t)
    for (int tp = listen; tp < total; ++tp)
      mixes[static_cast<std::size_t>(t) * (users - 1) + (tp - listen)] = precoders.relay_mix(t, tp);
  const auto mix_of = [&](int t, int tp) -> const ComplexMatrix& {
    return mixes[static_cast<std::size_t>(t) * (users - 1) + (tp - listen)];
  };

  eff.receivers.resize(users);
  for (int m = 0; m < users; ++m) {
    ComplexMatrix gains = ComplexMatrix::Zero(total, eff.stream_count());
    int col = 0;
    for (int gamma = 0; gamma < users; ++gamma) {
      for (int k = 0; k < users; ++k, ++col) {
        gains(gamma, col) = realization.direct(m, k, gamma);
        for (int tp = listen; tp < total; ++tp) {
          std::complex<double> entry =
              (realization.relay_to_rx(m, 0, tp).transpose() * mix_of(gamma, tp) *
               realization.tx_to_relay(0, k, gamma))
                  .value();
          // Transmitter k repeats d_{kk} in the relay slots.
          if (k == gamma && joint_beamforming) entry += realization.direct(m, k, tp);
          gains(tp, col) = entry;
        }
      }
    }

    ComplexMatrix cov = ComplexMatrix::Identity(total, total);
    for (int tp = listen; tp < total; ++tp) {
      for (int ts = listen; ts < total; ++ts) {
        std::complex<double> entry(0.0, 0.0);
        for (int t = 0; t < listen; ++t) {
          const Eigen::RowVectorXcd a_tp =
              realization.relay_to_rx(m, 0, tp).transpose() * mix_of(t, tp);
          const Eigen::RowVectorXcd a_ts =
              realization.relay_to_rx(m, 0, ts).transpose() * mix_of(t, ts);
          entry += (a_tp * a_ts.adjoint())(0, 0);
        }
        cov(tp, ts) += entry;
      }
    }

    eff.receivers[m].gains = amplitude * gains;
    eff.receivers[m].noise_covariance = std::move(cov);
  }
  return eff;
}

}  // namespace relayia
