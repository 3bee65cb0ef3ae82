#include "ic_alignment.hpp"

#include <cmath>

#include "doctest.h"
#include "test_support.hpp"

using namespace relayia;

namespace {

double max_precoder_entry(const IcPrecoderSet& pre) {
  double max_mag = 0.0;
  for (const auto& u : pre.matrices) max_mag = std::max(max_mag, u.cwiseAbs().maxCoeff());
  return max_mag;
}

ComplexVector flatten(const IcPrecoderSet& pre) {
  const int relays = static_cast<int>(pre.matrices.size());
  const int antennas = static_cast<int>(pre.matrices.front().rows());
  ComplexVector u(relays * antennas * antennas);
  int idx = 0;
  for (int j = 0; j < relays; ++j)
    for (int m = 0; m < antennas; ++m)
      for (int n = 0; n < antennas; ++n) u(idx++) = pre.matrices[j](m, n);
  return u;
}

}  // namespace

TEST_CASE("required relay count") {
  CHECK(required_relays_ic(3, 1) == 3);
  CHECK(required_relays_ic(4, 3) == 1);
  CHECK(required_relays_ic(3, 2) == 1);
  CHECK(required_relays_ic(5, 2) == 4);
}

TEST_CASE("constant channel zeroes the right side exactly") {
  const auto topo = NetworkTopology::interference(3, 3, 1);
  const auto real = generate_realization(topo, 21, false);
  auto [h, b] = assemble_ic_system(real);
  CHECK(b.norm() == 0.0);
  CHECK(h.norm() > 0.0);
}

TEST_CASE("system shape and rank, square case") {
  const auto topo = NetworkTopology::interference(3, 3, 1);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto real = generate_realization(topo, seed, true);
    auto [h, b] = assemble_ic_system(real);
    REQUIRE(h.rows() == 3);
    REQUIRE(h.cols() == 3);
    CHECK(rank_eps(h, 1e-8).rank == 3);
  }
}

TEST_CASE("system shape and row rank, wide case") {
  const auto topo = NetworkTopology::interference(3, 1, 2);
  const auto real = generate_realization(topo, 22, true);
  auto [h, b] = assemble_ic_system(real);
  REQUIRE(h.rows() == 3);
  REQUIRE(h.cols() == 4);
  CHECK(rank_eps(h, 1e-8).rank == 3);
}

TEST_CASE("degenerate slot-1 gain triggers a resample error") {
  const auto topo = NetworkTopology::interference(3, 3, 1);
  auto real = generate_realization(topo, 23, true);
  real.direct(0, 1, 0) = 1e-13;  // reference interferer of receiver 0
  CHECK_THROWS_AS(assemble_ic_system(real), DegenerateDenominatorError);
}

TEST_CASE("square solve is exact") {
  const auto topo = NetworkTopology::interference(3, 3, 1);
  const auto real = generate_realization(topo, 24, true);
  const IcPrecoderSet pre = solve_ic_precoders(real);
  auto [h, b] = assemble_ic_system(real);
  CHECK((h * flatten(pre) - b).norm() <= 1e-10 * (1.0 + b.norm()));
}

TEST_CASE("constant channel, square case: precoders collapse to zero") {
  const auto topo = NetworkTopology::interference(3, 3, 1);
  const auto real = generate_realization(topo, 25, false);
  CHECK(max_precoder_entry(solve_ic_precoders(real)) <= 1e-12);

  // Same collapse with joint beamforming off and a time-varying channel.
  const auto varying = generate_realization(topo, 26, true);
  IcOptions no_jb;
  no_jb.joint_beamforming = false;
  CHECK(max_precoder_entry(solve_ic_precoders(varying, no_jb)) <= 1e-12);
}

TEST_CASE("wide solve meets the residual bound") {
  const auto topo = NetworkTopology::interference(4, 1, 3);  // 8 equations, 9 unknowns
  const auto real = generate_realization(topo, 27, true);
  const IcPrecoderSet pre = solve_ic_precoders(real);
  auto [h, b] = assemble_ic_system(real);
  CHECK((h * flatten(pre) - b).norm() <= 1e-8 * (1.0 + b.norm()));
}

TEST_CASE("infeasible relay counts are rejected") {
  const auto topo = NetworkTopology::interference(3, 1, 1);
  const auto real = generate_realization(topo, 28, true);
  CHECK_THROWS_AS(solve_ic_precoders(real), InfeasibleRelayCountError);

  // Null-space mode needs strictly more variables than equations.
  const auto square = NetworkTopology::interference(3, 3, 1);
  const auto square_real = generate_realization(square, 29, true);
  IcOptions null_mode;
  null_mode.null_space_mode = true;
  CHECK_THROWS_AS(solve_ic_precoders(square_real, null_mode), InfeasibleRelayCountError);
}

TEST_CASE("silent relays leave the raw two-slot channel") {
  const auto topo = NetworkTopology::interference(3, 1, 2);
  const auto real = generate_realization(topo, 30, true);
  IcPrecoderSet zeros;
  zeros.matrices.assign(1, ComplexMatrix::Zero(2, 2));
  const EffectiveChannel eff = effective_channel_ic(real, zeros, 1.0);
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 3; ++i) {
      CHECK(eff.receivers[k].gains(0, i) == real.direct(k, i, 0));
      CHECK(eff.receivers[k].gains(1, i) == real.direct(k, i, 1));
    }
    CHECK((eff.receivers[k].noise_covariance - ComplexMatrix::Identity(2, 2)).norm() == 0.0);
  }
}

TEST_CASE("interference aligns to one dimension; desired stays clear") {
  for (const auto& topo : {NetworkTopology::interference(3, 1, 2),
                           NetworkTopology::interference(3, 3, 1)}) {
    for (std::uint64_t seed = 40; seed < 60; ++seed) {
      const auto real = generate_realization(topo, seed, true);
      if (!condition_guard(real)) continue;
      const IcPrecoderSet pre = solve_ic_precoders(real);
      const EffectiveChannel eff = effective_channel_ic(real, pre, 1.0);
      for (int k = 0; k < 3; ++k) {
        const ComplexMatrix& gains = eff.receivers[k].gains;
        CHECK(rank_eps(select_columns(gains, eff.interference_columns(k)), 1e-6).rank == 1);
        CHECK(rank_eps(gains, 1e-6).rank == 2);
      }
    }
  }
}

TEST_CASE("null-space precoders survive constant channels and silent transmitters") {
  for (const int pairs : {3, 4}) {
    const auto topo = NetworkTopology::interference(pairs, 1, pairs - 1);

    IcOptions null_mode;
    null_mode.null_space_mode = true;

    // Constant channel (joint beamforming on): b = 0, but a nonzero null
    // vector still aligns the interference.
    const auto frozen = generate_realization(topo, 61, false);
    const IcPrecoderSet pre_frozen = solve_ic_precoders(frozen, null_mode);
    CHECK(max_precoder_entry(pre_frozen) > 1e-6);
    const EffectiveChannel eff_frozen = effective_channel_ic(frozen, pre_frozen, 1.0);
    for (int k = 0; k < pairs; ++k) {
      const ComplexMatrix& gains = eff_frozen.receivers[k].gains;
      CHECK(rank_eps(select_columns(gains, eff_frozen.interference_columns(k)), 1e-6).rank == 1);
      CHECK(rank_eps(gains, 1e-6).rank == 2);
    }

    // Transmitters silent in slot 2.
    IcOptions silent = null_mode;
    silent.joint_beamforming = false;
    const auto varying = generate_realization(topo, 62, true);
    const IcPrecoderSet pre_silent = solve_ic_precoders(varying, silent);
    const EffectiveChannel eff_silent = effective_channel_ic(varying, pre_silent, 1.0, false);
    for (int k = 0; k < pairs; ++k) {
      const ComplexMatrix& gains = eff_silent.receivers[k].gains;
      CHECK(rank_eps(select_columns(gains, eff_silent.interference_columns(k)), 1e-6).rank == 1);
      CHECK(rank_eps(gains, 1e-6).rank == 2);
    }
  }
}

TEST_CASE("square case collapses without time variation or joint beamforming") {
  const auto topo = NetworkTopology::interference(3, 3, 1);

  const auto frozen = generate_realization(topo, 63, false);
  const IcPrecoderSet pre_frozen = solve_ic_precoders(frozen);
  CHECK(max_precoder_entry(pre_frozen) <= 1e-12);
  const EffectiveChannel eff_frozen = effective_channel_ic(frozen, pre_frozen, 1.0);
  for (int k = 0; k < 3; ++k)
    CHECK(rank_eps(eff_frozen.receivers[k].gains, 1e-6).rank == 1);

  IcOptions no_jb;
  no_jb.joint_beamforming = false;
  const auto varying = generate_realization(topo, 64, true);
  const IcPrecoderSet pre_silent = solve_ic_precoders(varying, no_jb);
  CHECK(max_precoder_entry(pre_silent) <= 1e-12);
  const EffectiveChannel eff_silent = effective_channel_ic(varying, pre_silent, 1.0, false);
  for (int k = 0; k < 3; ++k)
    CHECK(rank_eps(eff_silent.receivers[k].gains, 1e-6).rank == 1);
}

TEST_CASE("forwarded noise variance matches the precoder norms") {
  const auto topo = NetworkTopology::interference(3, 1, 2);
  const auto real = generate_realization(topo, 65, true);
  const IcPrecoderSet pre = solve_ic_precoders(real);
  const EffectiveChannel eff = effective_channel_ic(real, pre, 1.0);
  for (int k = 0; k < 3; ++k) {
    const double expected =
        1.0 +
        (real.relay_to_rx(k, 0, 1).transpose() * pre.matrices[0]).squaredNorm();
    CHECK(eff.receivers[k].noise_covariance(1, 1).real() == doctest::Approx(expected));
    CHECK(eff.receivers[k].noise_covariance(0, 0).real() == doctest::Approx(1.0));
    CHECK(std::abs(eff.receivers[k].noise_covariance(0, 1)) == 0.0);
  }
}
