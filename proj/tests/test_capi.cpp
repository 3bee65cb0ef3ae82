// Exercises the shared-library surface exactly as an external consumer would:
// only relayia.h, no internal headers.
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "relayia.h"

namespace {

struct Topology {
  ria_topology* handle = nullptr;
  ~Topology() { ria_topology_destroy(handle); }
};

struct Trial {
  ria_trial* handle = nullptr;
  ~Trial() { ria_trial_destroy(handle); }
};

struct Report {
  ria_report* handle = nullptr;
  ~Report() { ria_report_destroy(handle); }
};

struct Sweep {
  ria_sweep* handle = nullptr;
  ~Sweep() { ria_sweep_destroy(handle); }
};

}  // namespace

TEST_CASE("topology creation validates arguments") {
  Topology topo;
  CHECK(ria_topology_create_x(3, 3, 1, 2, &topo.handle) == RIA_OK);
  CHECK(ria_topology_receivers(topo.handle) == 3);
  CHECK(ria_topology_total_slots(topo.handle) == 5);

  ria_topology* bad = nullptr;
  CHECK(ria_topology_create_x(1, 3, 1, 1, &bad) == RIA_ERR_INVALID_ARGUMENT);
  CHECK(ria_topology_create_ic(2, 1, 1, &bad) == RIA_ERR_INVALID_ARGUMENT);
  CHECK(ria_topology_create_x(3, 3, 1, 2, nullptr) == RIA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("required relay counts through the C surface") {
  Topology x;
  REQUIRE(ria_topology_create_x(3, 3, 1, 2, &x.handle) == RIA_OK);
  int count = 0;
  CHECK(ria_required_relays(x.handle, RIA_SCHEME_X_THEOREM1, &count) == RIA_OK);
  CHECK(count == 1);

  Topology ic;
  REQUIRE(ria_topology_create_ic(3, 1, 1, &ic.handle) == RIA_OK);
  CHECK(ria_required_relays(ic.handle, RIA_SCHEME_IC_THEOREM3, &count) == RIA_OK);
  CHECK(count == 3);
}

TEST_CASE("trial, verification, and rates") {
  Topology topo;
  REQUIRE(ria_topology_create_x(3, 3, 1, 2, &topo.handle) == RIA_OK);
  ria_options options;
  ria_options_init(&options);

  Trial trial;
  REQUIRE(ria_trial_run(topo.handle, RIA_SCHEME_X_THEOREM1, 7, &options, &trial.handle) ==
          RIA_OK);
  CHECK(ria_trial_resamples(trial.handle) >= 0);
  CHECK(ria_trial_max_precoder_magnitude(trial.handle) > 0.0);

  Report report;
  REQUIRE(ria_trial_verify(trial.handle, &report.handle) == RIA_OK);
  CHECK(ria_report_pass(report.handle) == 1);
  REQUIRE(ria_report_receiver_count(report.handle) == 3);
  for (int rx = 0; rx < 3; ++rx) {
    int interference = 0, desired = 0, total = 0, pass = 0;
    double retained = 0.0, discarded = 0.0;
    REQUIRE(ria_report_receiver(report.handle, rx, &interference, &desired, &total, &retained,
                                &discarded, &pass) == RIA_OK);
    CHECK(interference == 2);
    CHECK(desired == 3);
    CHECK(total == 5);
    CHECK(pass == 1);
    CHECK(retained > discarded);
  }

  double low = 0.0, high = 0.0;
  REQUIRE(ria_trial_sum_rate(trial.handle, report.handle, 1e4, &low) == RIA_OK);
  REQUIRE(ria_trial_sum_rate(trial.handle, report.handle, 1e6, &high) == RIA_OK);
  CHECK(low > 0.0);
  CHECK(high > low);

  CHECK(ria_report_receiver(report.handle, 99, nullptr, nullptr, nullptr, nullptr, nullptr,
                            nullptr) == RIA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("infeasible relay count surfaces as its own status") {
  Topology topo;
  REQUIRE(ria_topology_create_ic(3, 1, 1, &topo.handle) == RIA_OK);
  ria_options options;
  ria_options_init(&options);
  ria_trial* trial = nullptr;
  CHECK(ria_trial_run(topo.handle, RIA_SCHEME_IC_THEOREM3, 1, &options, &trial) ==
        RIA_ERR_INFEASIBLE_RELAY_COUNT);
  CHECK(trial == nullptr);
}

TEST_CASE("disabled joint beamforming collapses the square IC case") {
  Topology topo;
  REQUIRE(ria_topology_create_ic(3, 3, 1, &topo.handle) == RIA_OK);
  ria_options options;
  ria_options_init(&options);
  options.joint_beamforming = 0;

  Trial trial;
  REQUIRE(ria_trial_run(topo.handle, RIA_SCHEME_IC_THEOREM3, 2, &options, &trial.handle) ==
          RIA_OK);
  CHECK(ria_trial_max_precoder_magnitude(trial.handle) <= 1e-12);

  Report report;
  REQUIRE(ria_trial_verify(trial.handle, &report.handle) == RIA_OK);
  CHECK(ria_report_pass(report.handle) == 0);

  double rate = 0.0;
  CHECK(ria_trial_sum_rate(trial.handle, report.handle, 100.0, &rate) == RIA_ERR_NOT_VERIFIED);
}

TEST_CASE("sweep through the C surface") {
  Topology topo;
  REQUIRE(ria_topology_create_x(2, 2, 1, 1, &topo.handle) == RIA_OK);
  ria_options options;
  ria_options_init(&options);
  const std::vector<double> grid{40.0, 50.0, 60.0, 70.0};

  Sweep sweep;
  REQUIRE(ria_sweep_run(topo.handle, RIA_SCHEME_X_THEOREM1, 11, &options, grid.data(),
                        static_cast<int>(grid.size()), 10, 2, &sweep.handle) == RIA_OK);
  REQUIRE(ria_sweep_point_count(sweep.handle) == 4);

  double previous = 0.0;
  for (int i = 0; i < 4; ++i) {
    double snr = 0.0, rate = 0.0;
    REQUIRE(ria_sweep_point(sweep.handle, i, &snr, &rate) == RIA_OK);
    CHECK(snr == doctest::Approx(grid[i]));
    CHECK(rate > previous);
    previous = rate;
  }

  int used = 0, skipped = 0;
  REQUIRE(ria_sweep_counts(sweep.handle, &used, &skipped) == RIA_OK);
  CHECK(used + skipped == 10);

  double slope = 0.0, residual = 0.0;
  REQUIRE(ria_sweep_slope(sweep.handle, &slope, &residual) == RIA_OK);
  CHECK(slope > 1.2);
  CHECK(slope < 1.45);
  CHECK(residual >= 0.0);
}

TEST_CASE("DoF references as reduced fractions") {
  int64_t num = 0, den = 0;
  REQUIRE(ria_dof_reference(RIA_DOF_X_CHANNEL, 3, 3, &num, &den) == RIA_OK);
  CHECK(num == 9);
  CHECK(den == 5);
  REQUIRE(ria_dof_reference(RIA_DOF_INTERFERENCE, 3, 0, &num, &den) == RIA_OK);
  CHECK(num == 3);
  CHECK(den == 2);
  REQUIRE(ria_dof_reference(RIA_DOF_DELAYED_CSI, 3, 0, &num, &den) == RIA_OK);
  CHECK(num == 18);
  CHECK(den == 11);
  CHECK(ria_dof_reference(RIA_DOF_DELAYED_CSI, 0, 0, &num, &den) == RIA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("seed derivation matches across calls") {
  CHECK(ria_derive_seed(5, 1) == ria_derive_seed(5, 1));
  CHECK(ria_derive_seed(5, 1) != ria_derive_seed(5, 2));
  CHECK(ria_derive_seed(5, 1) != ria_derive_seed(6, 1));
}

TEST_CASE("status messages exist for every code") {
  for (int code = 0; code <= 6; ++code)
    CHECK(ria_status_message(static_cast<ria_status>(code)) != nullptr);
}
