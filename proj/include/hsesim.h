/* Copyright (c) 2026 hsesim developers
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the hsesim shared library.
 *
 * hsesim simulates a single driven qubit and measures how uniformly its
 * time-evolved states cover the Hilbert space: it accumulates moments of the
 * temporal state ensemble in the symmetric (Dicke) subspace and reports
 * trace distances to the corresponding Haar-ensemble moments, evaluates the
 * time-averaging (twirl) channel of a drive, and simulates a
 * photoluminescence-based state-tomography pipeline.
 *
 * Conventions:
 *  - every function returns an hse_status; HSE_OK is 0;
 *  - hse_last_error() gives a thread-local detail message for the most
 *    recent failure on the calling thread;
 *  - kicks are exp(-i theta n.sigma) (no half angle); a kick turns the
 *    Bloch vector by 2*theta about n;
 *  - all entry points are pure and thread-safe; randomness is fully
 *    determined by explicit (seed, stream) arguments.
 */
#ifndef HSESIM_H
#define HSESIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HSE_API __declspec(dllexport)
#else
#define HSE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define HSE_ABI_VERSION 1u

typedef enum hse_status {
    HSE_OK = 0,
    HSE_ERR_INVALID_ARGUMENT = 1,
    HSE_ERR_NUMERIC = 2,
    HSE_ERR_IO = 3,
    HSE_ERR_PARSE = 4,
    HSE_ERR_BUFFER_TOO_SMALL = 5,
    HSE_ERR_INTERNAL = 6
} hse_status;

HSE_API uint32_t hse_abi_version(void);
HSE_API const char* hse_version_string(void);
HSE_API const char* hse_status_message(hse_status status);

/* Thread-local detail for the last failure on this thread ("" if none). */
HSE_API const char* hse_last_error(void);

/* ---- states ---------------------------------------------------------- */

typedef struct hse_spinor {
    double a_re, a_im; /* |0> amplitude */
    double b_re, b_im; /* |1> amplitude */
} hse_spinor;

typedef struct hse_bloch {
    double x, y, z;
} hse_bloch;

/* Hermitian trace-one qubit operator rho = [[p0, a+ib], [a-ib, 1-p0]].
 * Under noisy tomography the stored values may be unphysical (|r| > 1). */
typedef struct hse_density {
    double p0;
    double alpha;
    double beta;
} hse_density;

HSE_API hse_status hse_spinor_from_angles(double theta, double phi, hse_spinor* out);
HSE_API hse_status hse_spinor_to_bloch(const hse_spinor* psi, hse_bloch* out);
HSE_API hse_status hse_spinor_haar(uint64_t seed, uint64_t stream, hse_spinor* out);
HSE_API hse_status hse_density_from_spinor(const hse_spinor* psi, hse_density* out);
HSE_API hse_status hse_density_trace_distance(const hse_density* a,
                                              const hse_density* b, double* out);

/* ---- drive protocols -------------------------------------------------- */

typedef struct hse_protocol hse_protocol; /* opaque */

HSE_API hse_status hse_protocol_floquet(double theta_x, double theta_y,
                                        hse_protocol** out);
HSE_API hse_status hse_protocol_smooth_qp(hse_protocol** out);
HSE_API hse_status hse_protocol_fibonacci(double theta_x, double theta_z,
                                          hse_protocol** out);

/* Arcs must partition [0, 2pi): arc i is [begin[i], end[i]) with kick
 * vector (kick[3i], kick[3i+1], kick[3i+2]). */
HSE_API hse_status hse_protocol_custom(double omega2, const double* begin,
                                       const double* end, const double* kick,
                                       size_t n_arcs, hse_protocol** out);
HSE_API void hse_protocol_free(hse_protocol* protocol);

/* Kick unitary V_t (t >= 1), row-major (re, im) pairs into out[8]. */
HSE_API hse_status hse_protocol_kick(const hse_protocol* protocol, uint64_t t,
                                     double out[8]);

/* States at t = 0..steps-1 (initial state first). */
HSE_API hse_status hse_evolve(const hse_protocol* protocol,
                              const hse_spinor* initial, uint64_t steps,
                              hse_spinor* out_states);

/* Quasienergy eigenstates of U_F = U_y U_x; fails if U_F ~ identity. */
HSE_API hse_status hse_floquet_eigenstates(double theta_x, double theta_y,
                                           hse_spinor* first, hse_spinor* second);

/* ---- ensemble moments -------------------------------------------------- */

/* Trace distances Delta^(k)(T) between the temporal-ensemble moment over
 * the first T states and the Haar moment, for k = 1..k_max (k_max <= 8) at
 * each sample time (ascending, last one sets the trajectory length).
 * out[i*k_max + (k-1)] = Delta^(k)(sample_times[i]). Streaming: memory use
 * is independent of the trajectory length. */
HSE_API hse_status hse_delta_series(const hse_protocol* protocol,
                                    const hse_spinor* initial, int k_max,
                                    const uint64_t* sample_times, size_t n_times,
                                    double* out);

/* Same, from an explicit state list (states[0] is t = 0). */
HSE_API hse_status hse_delta_series_states(const hse_spinor* states,
                                           size_t n_states, int k_max,
                                           const uint64_t* sample_times,
                                           size_t n_times, double* out);

/* Default observation grid: ~target geometrically spaced times in
 * [1, t_max] plus t_max, plus Fibonacci numbers when include_fibonacci.
 * On entry *count is the capacity of out; on success it is the number of
 * times written. When the capacity is too small, *count receives the
 * required size and HSE_ERR_BUFFER_TOO_SMALL is returned. out may be NULL
 * to query the size. */
HSE_API hse_status hse_sample_times(uint64_t t_max, size_t target,
                                    int include_fibonacci, uint64_t* out,
                                    size_t* count);

/* ---- averaging channel -------------------------------------------------- */

/* (1/T) sum_{t=0}^{T-1} U(t) rho U(t)^dag */
HSE_API hse_status hse_time_average(const hse_protocol* protocol,
                                    const hse_density* rho, uint64_t steps,
                                    hse_density* out);

/* Maximal dephasing about axis 'x', 'y' or 'z'. */
HSE_API hse_status hse_dephase(char axis, const hse_density* rho, hse_density* out);

/* Least-squares fit y ~ amplitude * t^{-exponent} on log-log axes. */
HSE_API hse_status hse_power_law_fit(const double* t, const double* y, size_t n,
                                     double* amplitude, double* exponent);

/* ---- tomography --------------------------------------------------------- */

typedef struct hse_tomo_calibration {
    double l0; /* PL rate of |0>, counts per shot */
    double l1; /* PL rate of |1>; requires l0 > l1 > 0 */
    double pe; /* polarization efficiency in (0, 1] */
} hse_tomo_calibration;

typedef struct hse_tomo_record {
    double e[6];    /* E1..E6, counts per shot */
    uint64_t shots; /* 0 = noiseless expectations */
} hse_tomo_record;

typedef struct hse_tomo_step {
    uint64_t t;
    hse_tomo_record record;
} hse_tomo_step;

/* Noiseless six-sequence expectations for rho. */
HSE_API hse_status hse_tomo_expectations(const hse_density* rho,
                                         const hse_tomo_calibration* cal,
                                         hse_tomo_record* out);

/* Poisson shot noise: E_i <- Poisson(shots*E_i)/shots, deterministic per
 * (seed, stream). */
HSE_API hse_status hse_tomo_sample(const hse_tomo_record* record, uint64_t shots,
                                   uint64_t seed, uint64_t stream,
                                   hse_tomo_record* out);

/* Linear inversion of the six expectations. */
HSE_API hse_status hse_tomo_reconstruct(const hse_tomo_record* record,
                                        const hse_tomo_calibration* cal,
                                        hse_density* out);

/* Imperfect preparation (Bloch vector scaled by pe) and its inverse. */
HSE_API hse_status hse_tomo_depolarize(const hse_density* rho, double pe,
                                       hse_density* out);
HSE_API hse_status hse_tomo_correct(const hse_density* rho, double pe,
                                    hse_density* out);

/* Nearest pure state; *bloch_norm (optional) receives the pre-clip norm. */
HSE_API hse_status hse_tomo_purify(const hse_density* rho, hse_spinor* out,
                                   double* bloch_norm);

/* Record files: `# key = value` headers (l0, l1, pe, seed), then one
 * `t E1 E2 E3 E4 E5 E6 shots` row per record with 17 significant digits;
 * the round-trip is bit-exact. Reading with insufficient capacity returns
 * HSE_ERR_BUFFER_TOO_SMALL with *count set to the required size (records
 * may be NULL to query). Parse failures name the line in hse_last_error(). */
HSE_API hse_status hse_tomo_write_records(const char* path,
                                          const hse_tomo_calibration* cal,
                                          uint64_t seed, const hse_tomo_step* steps,
                                          size_t count);
HSE_API hse_status hse_tomo_read_records(const char* path,
                                         hse_tomo_calibration* cal, uint64_t* seed,
                                         hse_tomo_step* records, size_t capacity,
                                         size_t* count);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HSESIM_H */
