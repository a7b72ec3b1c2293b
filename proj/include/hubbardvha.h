/* C API of the Hubbard VHA simulator.
 *
 * The library prepares the ground state of the 2D Fermi-Hubbard model on a
 * simulated gate-based quantum computer with coherent over-rotation errors,
 * either with the variational Hamiltonian ansatz or with a Trotterized
 * adiabatic ramp, and reports final state fidelities and energies.
 *
 * All functions return hv_status; outputs are written through pointers.
 * Handles are opaque and must be released with their destroy function.
 * Strings returned through char** are heap-allocated; release them with
 * hv_string_free. hv_last_error() carries the detail message of the most
 * recent failure on the calling thread.
 */

#ifndef HUBBARDVHA_H
#define HUBBARDVHA_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hv_status {
  HV_OK = 0,
  HV_ERR_INVALID_ARGUMENT = 1,
  HV_ERR_UNSUPPORTED_SIZE = 2,
  HV_ERR_NO_CONVERGENCE = 3,
  HV_ERR_IO = 4,
  HV_ERR_INTERNAL = 5
} hv_status;

const char* hv_status_message(hv_status status);
const char* hv_version(void);
const char* hv_last_error(void);
void hv_string_free(char* s);

/* Experiment configuration. Keys match the config file and the CLI flags:
 *   lattice (CxR), t, U, method (vha|adiabatic|frozen-transfer),
 *   n (comma list), fidelity (comma list), runs, seed,
 *   starts (baseline|improved), tau-min, tau-max, tau-points, out,
 *   threads, qubit-cap
 */
typedef struct hv_config hv_config;

hv_config* hv_config_create(void);
void hv_config_destroy(hv_config* cfg);
hv_status hv_config_set(hv_config* cfg, const char* key, const char* value);
hv_status hv_config_load_file(hv_config* cfg, const char* path);

/* Exact diagonalization results for the configured lattice. Any output
 * pointer may be NULL. eg and e0 are in absolute energy units. */
hv_status hv_ground_truth(const hv_config* cfg, double* eg, double* e0,
                          double* initial_fidelity);

/* Human-readable ground truth summary. */
hv_status hv_ground_truth_report(const hv_config* cfg, char** report);

/* Per-step two-qubit gate counts of the compiled circuit. */
hv_status hv_gate_counts(const hv_config* cfg, int* total, int* t_gates,
                         int* cz_gates, int* onsite_gates);

/* Runs the configured (n, fidelity) grid with the configured method.
 * *summary receives the formatted fidelity table; the per-realization CSV
 * is written to the configured "out" path when set. */
hv_status hv_run(const hv_config* cfg, char** summary);

/* Writes the compiled n-step circuit, with the over-rotations of the
 * realization-0 noise table at the given gate fidelity, one gate per line:
 * kind, qubits, angle, over-rotation. */
hv_status hv_dump_circuit(const hv_config* cfg, int n, double fbar,
                          const char* path);

#ifdef __cplusplus
}
#endif

#endif /* HUBBARDVHA_H */
