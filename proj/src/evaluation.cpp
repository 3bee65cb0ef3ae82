#include "evaluation.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "prng.hpp"

namespace relayia {

namespace {

// Orthonormal basis of the column span under the relative threshold.
ComplexMatrix column_span_basis(const ComplexMatrix& matrix, double rel_threshold) {
  if (matrix.cols() == 0) return ComplexMatrix(matrix.rows(), 0);
  Eigen::JacobiSVD<ComplexMatrix> svd(matrix, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const double cutoff = sigma.size() > 0 ? rel_threshold * sigma(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

struct TrialOutcome {
  bool usable = false;
  std::vector<double> block_sum_rates;  // per SNR point, bits per block
};

}  // namespace

int expected_interference_dim(const NetworkTopology& topology, Scheme scheme) {
  if (scheme == Scheme::ICTheorem3) return 1;
  return topology.rx_count() - 1;
}

AlignmentReport verify_alignment(const EffectiveChannel& effective,
                                 int expected_interference_dim, double rel_threshold) {
  AlignmentReport report;
  report.expected_interference_dim = expected_interference_dim;
  report.total_slots = effective.total_slots();

  for (std::size_t n = 0; n < effective.receivers.size(); ++n) {
    const ComplexMatrix& gains = effective.receivers[n].gains;
    const auto desired_cols = effective.desired_columns(static_cast<int>(n));
    const auto interference_cols = effective.interference_columns(static_cast<int>(n));

    ReceiverAlignment ra;
    ra.interference_rank =
        rank_eps(select_columns(gains, interference_cols), rel_threshold).rank;
    ra.desired_rank = rank_eps(select_columns(gains, desired_cols), rel_threshold).rank;
    const RankResult total = rank_eps(gains, rel_threshold);
    ra.total_rank = total.rank;
    ra.smallest_retained = total.rank > 0 ? total.singular_values[total.rank - 1] : 0.0;
    ra.largest_discarded = total.rank < static_cast<int>(total.singular_values.size())
                               ? total.singular_values[total.rank]
                               : 0.0;
    ra.pass = ra.interference_rank == expected_interference_dim &&
              ra.total_rank == report.total_slots &&
              ra.desired_rank + ra.interference_rank == ra.total_rank;
    report.receivers.push_back(ra);
  }
  return report;
}

std::vector<std::vector<double>> zf_rates(const EffectiveChannel& effective,
                                          const AlignmentReport& report,
                                          double rel_threshold) {
  if (report.receivers.size() != effective.receivers.size() || !report.all_pass())
    throw AlignmentNotVerifiedError("zf_rates requires a passing alignment report");

  std::vector<std::vector<double>> rates(effective.receivers.size());
  for (std::size_t n = 0; n < effective.receivers.size(); ++n) {
    const ReceiverChannel& rx = effective.receivers[n];
    const auto desired_cols = effective.desired_columns(static_cast<int>(n));
    const auto interference_cols = effective.interference_columns(static_cast<int>(n));

    Eigen::LLT<ComplexMatrix> llt(rx.noise_covariance);
    if (llt.info() != Eigen::Success)
      throw IllConditionedError("noise covariance is not positive definite");

    // Whiten so the noise is identity, then null the interference span.
    const ComplexMatrix whitened_desired =
        llt.matrixL().solve(select_columns(rx.gains, desired_cols));
    const ComplexMatrix whitened_interference =
        llt.matrixL().solve(select_columns(rx.gains, interference_cols));

    const ComplexMatrix basis = column_span_basis(whitened_interference, rel_threshold);
    const ComplexMatrix projected =
        whitened_desired - basis * (basis.adjoint() * whitened_desired);

    const ComplexMatrix gram = projected.adjoint() * projected;
    Eigen::LLT<ComplexMatrix> gram_llt(gram);
    if (gram_llt.info() != Eigen::Success)
      throw IllConditionedError("projected desired block lost rank");
    const ComplexMatrix gram_inverse =
        gram_llt.solve(ComplexMatrix::Identity(gram.rows(), gram.cols()));

    rates[n].reserve(desired_cols.size());
    for (Eigen::Index s = 0; s < gram.rows(); ++s) {
      // Unit-power symbol against post-ZF noise power [ (A^H A)^-1 ]_ss.
      const double noise_power = gram_inverse(s, s).real();
      rates[n].push_back(std::log2(1.0 + 1.0 / noise_power));
    }
  }
  return rates;
}

SchemeRun run_scheme_trial(const NetworkTopology& topology, Scheme scheme, std::uint64_t seed,
                           const SchemeOptions& options) {
  if (scheme == Scheme::PartialIA) require_partial_ia_topology(topology);
  if (scheme == Scheme::ICTheorem3 && topology.kind() != ChannelKind::Interference)
    throw InvalidArgumentError("scheme needs an interference-channel topology");
  if (scheme != Scheme::ICTheorem3 && topology.kind() != ChannelKind::XChannel)
    throw InvalidArgumentError("scheme needs an X-channel topology");

  for (int attempt = 0;; ++attempt) {
    const std::uint64_t sub_seed = attempt == 0 ? seed : derive_seed(seed, attempt);
    ChannelRealization real = generate_realization(topology, sub_seed, options.time_varying);
    try {
      if (!condition_guard(real)) throw IllConditionedError("degenerate raw coefficients");
      SchemeRun run{std::move(real), XPrecoderSet(1, 1, 1, 1), scheme, attempt};
      switch (scheme) {
        case Scheme::XTheorem1:
          run.precoders = solve_x_precoders(run.realization, options.joint_beamforming);
          std::get<XPrecoderSet>(run.precoders).resamples_used = attempt;
          break;
        case Scheme::PartialIA:
          run.precoders = solve_partial_precoders(run.realization, options.joint_beamforming);
          std::get<PartialIaPrecoderSet>(run.precoders).resamples_used = attempt;
          break;
        case Scheme::ICTheorem3: {
          IcOptions ic{options.joint_beamforming, options.null_space_mode};
          run.precoders = solve_ic_precoders(run.realization, ic);
          std::get<IcPrecoderSet>(run.precoders).resamples_used = attempt;
          break;
        }
      }
      return run;
    } catch (const IllConditionedError&) {
      if (attempt >= kResampleBudget) throw;
    } catch (const DegenerateDenominatorError&) {
      if (attempt >= kResampleBudget) throw;
    }
  }
}

EffectiveChannel build_effective(const SchemeRun& run, double symbol_power,
                                 const SchemeOptions& options) {
  switch (run.scheme) {
    case Scheme::XTheorem1:
      return effective_channel_x(run.realization, std::get<XPrecoderSet>(run.precoders),
                                 symbol_power, options.joint_beamforming);
    case Scheme::PartialIA:
      return effective_channel_partial(run.realization,
                                       std::get<PartialIaPrecoderSet>(run.precoders),
                                       symbol_power, options.joint_beamforming);
    case Scheme::ICTheorem3:
      return effective_channel_ic(run.realization, std::get<IcPrecoderSet>(run.precoders),
                                  symbol_power, options.joint_beamforming);
  }
  throw InvalidArgumentError("unknown scheme");
}

DofEstimate estimate_dof(const NetworkTopology& topology, Scheme scheme,
                         const std::vector<double>& snr_grid_db, int trials,
                         std::uint64_t base_seed, const SchemeOptions& options,
                         int max_threads) {
  if (snr_grid_db.size() < 3) throw InvalidArgumentError("need at least 3 SNR points");
  for (std::size_t i = 1; i < snr_grid_db.size(); ++i)
    if (snr_grid_db[i] <= snr_grid_db[i - 1])
      throw InvalidArgumentError("SNR grid must be ascending");
  if (trials < 1) throw InvalidArgumentError("need at least one trial");

  // Fail fast on configurations that can never run (propagates
  // InfeasibleRelayCountError / InvalidArgumentError instead of skipping
  // every trial silently). Numerical failures stay per-trial business.
  try {
    run_scheme_trial(topology, scheme, derive_seed(base_seed, 0), options);
  } catch (const IllConditionedError&) {
  } catch (const DegenerateDenominatorError&) {
  }

  const int dim = expected_interference_dim(topology, scheme);
  const int total_slots = topology.total_slots();
  std::vector<TrialOutcome> outcomes(trials);

  auto run_one = [&](int trial) {
    TrialOutcome outcome;
    try {
      const SchemeRun run =
          run_scheme_trial(topology, scheme, derive_seed(base_seed, trial), options);
      const EffectiveChannel probe = build_effective(run, 1.0, options);
      const AlignmentReport report = verify_alignment(probe, dim, options.verify_threshold);
      if (!report.all_pass()) return outcome;

      outcome.block_sum_rates.reserve(snr_grid_db.size());
      for (double snr_db : snr_grid_db) {
        const double power = std::pow(10.0, snr_db / 10.0) * options.symbol_power;
        const EffectiveChannel eff = build_effective(run, power, options);
        double sum = 0.0;
        for (const auto& per_rx : zf_rates(eff, report))
          sum = std::accumulate(per_rx.begin(), per_rx.end(), sum);
        outcome.block_sum_rates.push_back(sum);
      }
      outcome.usable = true;
    } catch (const IllConditionedError&) {
    } catch (const DegenerateDenominatorError&) {
    } catch (const AlignmentNotVerifiedError&) {
    }
    return outcome;
  };

  int workers = max_threads > 0 ? max_threads : 1;
  workers = std::min(workers, trials);
  if (workers <= 1) {
    for (int trial = 0; trial < trials; ++trial) outcomes[trial] = run_one(trial);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int trial = next.fetch_add(1); trial < trials; trial = next.fetch_add(1))
          outcomes[trial] = run_one(trial);
      });
    }
    for (auto& thread : pool) thread.join();
  }

  DofEstimate estimate;
  estimate.snr_points_db = snr_grid_db;
  estimate.trials = trials;

  std::vector<double> sums(snr_grid_db.size(), 0.0);
  // Deterministic trial-index order, independent of scheduling.
  for (const TrialOutcome& outcome : outcomes) {
    if (!outcome.usable) {
      ++estimate.skipped;
      continue;
    }
    ++estimate.trials_used;
    for (std::size_t s = 0; s < sums.size(); ++s) sums[s] += outcome.block_sum_rates[s];
  }

  estimate.sum_rates_bits.assign(sums.size(), 0.0);
  for (std::size_t s = 0; s < sums.size(); ++s) {
    estimate.sum_rates_bits[s] =
        estimate.trials_used > 0 ? sums[s] / estimate.trials_used / total_slots
                                 : std::numeric_limits<double>::quiet_NaN();
  }

  // Ordinary least squares of mean per-use sum rate against log2(P).
  const std::size_t points = snr_grid_db.size();
  double mean_x = 0.0, mean_y = 0.0;
  std::vector<double> log2p(points);
  for (std::size_t s = 0; s < points; ++s) {
    log2p[s] = snr_grid_db[s] / 10.0 * std::log2(10.0);
    mean_x += log2p[s];
    mean_y += estimate.sum_rates_bits[s];
  }
  mean_x /= points;
  mean_y /= points;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t s = 0; s < points; ++s) {
    sxx += (log2p[s] - mean_x) * (log2p[s] - mean_x);
    sxy += (log2p[s] - mean_x) * (estimate.sum_rates_bits[s] - mean_y);
  }
  estimate.slope_per_log2p = sxy / sxx;
  const double intercept = mean_y - estimate.slope_per_log2p * mean_x;
  double sse = 0.0;
  for (std::size_t s = 0; s < points; ++s) {
    const double fit = intercept + estimate.slope_per_log2p * log2p[s];
    sse += (estimate.sum_rates_bits[s] - fit) * (estimate.sum_rates_bits[s] - fit);
  }
  estimate.fit_residual = std::sqrt(sse / points);
  return estimate;
}

namespace {

long long gcd_ll(long long a, long long b) {
  while (b != 0) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

Rational reduced(long long num, long long den) {
  const long long g = gcd_ll(num, den);
  return {num / g, den / g};
}

}  // namespace

Rational dof_reference_x(int tx_count, int rx_count) {
  if (tx_count < 1 || rx_count < 1) throw InvalidArgumentError("dof_reference_x: bad counts");
  return reduced(static_cast<long long>(tx_count) * rx_count,
                 static_cast<long long>(tx_count) + rx_count - 1);
}

Rational dof_reference_ic(int pair_count) {
  if (pair_count < 1) throw InvalidArgumentError("dof_reference_ic: bad count");
  return reduced(pair_count, 2);
}

Rational dof_reference_delayed_csi(int pair_count) {
  if (pair_count < 1) throw InvalidArgumentError("dof_reference_delayed_csi: bad count");
  // Harmonic number H_K as a fraction, then K / H_K.
  long long num = 0, den = 1;
  for (int i = 1; i <= pair_count; ++i) {
    num = num * i + den;
    den *= i;
    const Rational r = reduced(num, den);
    num = r.num;
    den = r.den;
  }
  return reduced(pair_count * den, num);
}

}  // namespace relayia
