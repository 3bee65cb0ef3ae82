/*
 * relayia: relay-aided interference alignment simulator for the M x N
 * X channel and the K-user interference channel without transmitter CSI.
 *
 * Plain C surface over the C++ core. All objects are opaque handles created
 * and destroyed through these functions; every fallible call returns a
 * ria_status and writes results through out-parameters. Handles are
 * immutable after creation and safe to share across threads.
 */
#ifndef RELAYIA_H
#define RELAYIA_H

#include <stdint.h>

#if defined(_WIN32)
#if defined(RELAYIA_BUILD)
#define RIA_API __declspec(dllexport)
#else
#define RIA_API __declspec(dllimport)
#endif
#else
#define RIA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ria_status {
  RIA_OK = 0,
  RIA_ERR_INVALID_ARGUMENT = 1,
  RIA_ERR_INFEASIBLE_RELAY_COUNT = 2,
  RIA_ERR_ILL_CONDITIONED = 3,
  RIA_ERR_DEGENERATE = 4,
  RIA_ERR_NOT_VERIFIED = 5,
  RIA_ERR_INTERNAL = 6
} ria_status;

typedef enum ria_scheme {
  RIA_SCHEME_X_THEOREM1 = 0,
  RIA_SCHEME_PARTIAL_IA = 1,
  RIA_SCHEME_IC_THEOREM3 = 2
} ria_scheme;

typedef struct ria_topology ria_topology;
typedef struct ria_trial ria_trial;
typedef struct ria_report ria_report;
typedef struct ria_sweep ria_sweep;

typedef struct ria_options {
  int time_varying;      /* nonzero: independent channel draws per slot */
  int joint_beamforming; /* nonzero: transmitters re-send during relay slots */
  int null_space_mode;   /* IC only: precoders from the null space of H */
  double symbol_power;   /* P; SNR sweeps scale this by 10^(dB/10) */
} ria_options;

/* Static description of an error code (never NULL). */
RIA_API const char* ria_status_message(ria_status status);

/* Fills in the defaults: time-varying on, joint beamforming on, null-space
 * mode off, unit symbol power. */
RIA_API void ria_options_init(ria_options* options);

/* Substream derivation used for per-trial and per-resample seeds; exposed so
 * callers enumerate trials exactly the way the sweep does. */
RIA_API uint64_t ria_derive_seed(uint64_t base_seed, uint64_t stream);

/* --- topology ----------------------------------------------------------- */

RIA_API ria_status ria_topology_create_x(int tx_count, int rx_count, int relay_count,
                                         int antennas_per_relay, ria_topology** out);
RIA_API ria_status ria_topology_create_ic(int pair_count, int relay_count,
                                          int antennas_per_relay, ria_topology** out);
RIA_API void ria_topology_destroy(ria_topology* topology);

RIA_API int ria_topology_receivers(const ria_topology* topology);
RIA_API int ria_topology_total_slots(const ria_topology* topology);

/* Relays sufficient for the scheme's alignment system. */
RIA_API ria_status ria_required_relays(const ria_topology* topology, ria_scheme scheme,
                                       int* out_count);

/* --- single trial ------------------------------------------------------- */

/* Generates a realization (resampling internally on numerical degeneracy),
 * solves the scheme's precoders, and keeps both behind the handle. */
RIA_API ria_status ria_trial_run(const ria_topology* topology, ria_scheme scheme, uint64_t seed,
                                 const ria_options* options, ria_trial** out);
RIA_API void ria_trial_destroy(ria_trial* trial);
RIA_API int ria_trial_resamples(const ria_trial* trial);

/* Largest |entry| over all precoding matrices; the negative controls check
 * this collapses to zero. */
RIA_API double ria_trial_max_precoder_magnitude(const ria_trial* trial);

/* Rank diagnostics of the trial's effective channel at P = 1. */
RIA_API ria_status ria_trial_verify(const ria_trial* trial, ria_report** out);

/* Sum rate in bits per channel use at the given symbol power, using the
 * zero-forcing receiver. Fails with RIA_ERR_NOT_VERIFIED unless the report
 * passes. */
RIA_API ria_status ria_trial_sum_rate(const ria_trial* trial, const ria_report* report,
                                      double symbol_power, double* out_bits_per_use);

/* --- alignment report --------------------------------------------------- */

RIA_API void ria_report_destroy(ria_report* report);
RIA_API int ria_report_pass(const ria_report* report); /* 1 iff every receiver passes */
RIA_API int ria_report_receiver_count(const ria_report* report);
RIA_API ria_status ria_report_receiver(const ria_report* report, int receiver,
                                       int* out_interference_rank, int* out_desired_rank,
                                       int* out_total_rank, double* out_smallest_retained,
                                       double* out_largest_discarded, int* out_pass);

/* --- SNR sweep ---------------------------------------------------------- */

/* Monte Carlo sweep over an ascending SNR grid (dB); trial t uses seed
 * ria_derive_seed(base_seed, t). max_threads caps the worker count (0 picks
 * the hardware default); results do not depend on it. */
RIA_API ria_status ria_sweep_run(const ria_topology* topology, ria_scheme scheme,
                                 uint64_t base_seed, const ria_options* options,
                                 const double* snr_db, int snr_count, int trials,
                                 int max_threads, ria_sweep** out);
RIA_API void ria_sweep_destroy(ria_sweep* sweep);
RIA_API int ria_sweep_point_count(const ria_sweep* sweep);
RIA_API ria_status ria_sweep_point(const ria_sweep* sweep, int index, double* out_snr_db,
                                   double* out_mean_sum_rate_bits);
/* trials_used + skipped == trials requested. */
RIA_API ria_status ria_sweep_counts(const ria_sweep* sweep, int* out_trials_used,
                                    int* out_skipped);
/* Least-squares slope of mean sum rate (bits per channel use) against
 * log2(P), and the fit's RMS residual. */
RIA_API ria_status ria_sweep_slope(const ria_sweep* sweep, double* out_slope,
                                   double* out_fit_residual);

/* --- closed-form DoF references ----------------------------------------- */

typedef enum ria_dof_kind {
  RIA_DOF_X_CHANNEL = 0,   /* MN / (M+N-1); a = M, b = N */
  RIA_DOF_INTERFERENCE = 1, /* K / 2; a = K */
  RIA_DOF_DELAYED_CSI = 2   /* K / H_K; a = K */
} ria_dof_kind;

RIA_API ria_status ria_dof_reference(ria_dof_kind kind, int a, int b, int64_t* out_num,
                                     int64_t* out_den);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RELAYIA_H */
