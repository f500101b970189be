/**
 * C API for the continuous-variable light-to-atoms teleportation
 * simulator. Configurations and results are opaque handles; every
 * fallible call returns a status code and leaves a message for
 * qtel_last_error(). All handles must be released with the matching
 * free function.
 */
#ifndef QTEL_QTEL_H
#define QTEL_QTEL_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes (also used as process exit codes by the CLI). */
#define QTEL_OK 0
#define QTEL_ERR_RUNTIME 1
#define QTEL_ERR_CONFIG 2

/* Library version, "major.minor.patch". */
const char* qtel_version(void);

/* Message describing the most recent failure on this thread. */
const char* qtel_last_error(void);

/*
 * Configuration: starts as the built-in defaults; JSON documents merge
 * over it key-by-key (later layers win). Unknown keys, wrong types, and
 * out-of-range values are rejected with QTEL_ERR_CONFIG.
 */
typedef struct qtel_config qtel_config;

qtel_config* qtel_config_create(void);
void qtel_config_free(qtel_config* config);

/* Merges a JSON document given as text. */
int qtel_config_merge_json(qtel_config* config, const char* json_text);

/* Merges a JSON document read from a file. */
int qtel_config_merge_file(qtel_config* config, const char* path);

/*
 * Sets one dotted key, e.g. ("protocol.kappa", "0.93") or
 * ("input.kind", "\"prior\""). The value is JSON text.
 */
int qtel_config_set(qtel_config* config, const char* dotted_key,
                    const char* json_value);

/* Effective configuration as a JSON document; free with qtel_string_free. */
char* qtel_config_dump(const qtel_config* config);
void qtel_string_free(char* text);

/*
 * Result of running a command: a JSON summary plus zero or more named
 * numeric tables.
 */
typedef struct qtel_result qtel_result;

/*
 * Executes one of "simulate", "calibrate", "reproduce", "improved",
 * "qubit" with the given configuration.
 */
int qtel_run(const qtel_config* config, const char* command,
             qtel_result** out_result);

void qtel_result_free(qtel_result* result);

/* JSON summary text; owned by the result. */
const char* qtel_result_summary(const qtel_result* result);

int qtel_result_table_count(const qtel_result* result);

/* Table name, or NULL if the index is out of range. */
const char* qtel_result_table_name(const qtel_result* result, int index);

/* CSV text of one table; owned by the result. NULL if out of range. */
const char* qtel_result_table_csv(const qtel_result* result, int index);

/* Writes one table as a CSV file. */
int qtel_result_write_csv(const qtel_result* result, int index,
                          const char* path);

/*
 * Stateless kernels.
 */

/* Fidelity of teleporting coherent states of mean photon number n_avg
 * through a Gaussian channel with the given gains and added variances. */
int qtel_ensemble_fidelity(double n_avg, double gain_x, double gain_p,
                           double sigma2_x, double sigma2_p, double* out);

/* Best classical (measure-and-reprepare) fidelity for the same ensemble. */
int qtel_classical_benchmark(double n_avg, double* out);

/* Average fidelity for a qubit encoded in zero/one photons sent through
 * a Gaussian channel with the given gain and added-noise parameter. */
int qtel_qubit_fidelity(double gain, double s2, double* out);

/* Quadrature sum of independent uncertainty contributions. */
int qtel_error_budget(const double* deltas, int count, double* out);

/* Projection-noise coupling constant from the physical parameters. */
int qtel_compute_kappa(double a1, double n_photons, double n_atoms,
                       double f_detection, double cross_section,
                       double linewidth, double beam_area, double detuning,
                       double* out);

/* Atomic variance from a verification-port variance. use_bare_output
 * selects the larger back-action constant. */
int qtel_reconstruct_variance(double measured_var, double kappa,
                              int use_bare_output, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QTEL_QTEL_H */
