#ifndef QTELE_H
#define QTELE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Number of records written by [`qtele_simulate`].
 */
#define QTELE_NUM_OUTCOMES 32

/**
 * Result code of every fallible call.
 */
typedef enum QteleStatus {
  QTELE_STATUS_OK = 0,
  QTELE_STATUS_NULL_POINTER = 1,
  QTELE_STATUS_INVALID_ARGUMENT = 2,
  QTELE_STATUS_NOT_NORMALIZED = 3,
  QTELE_STATUS_UNKNOWN_STATE = 4,
  QTELE_STATUS_PANIC = 99,
} QteleStatus;

/**
 * Matrix orientation of a transformation operator.
 */
typedef enum QteleLayout {
  /**
   * Row = Bob's index; acts on the input coefficient vector.
   */
  QTELE_LAYOUT_ACTION = 0,
  /**
   * Row = Alice's index (the transpose of `Action`).
   */
  QTELE_LAYOUT_PAPER = 1,
} QteleLayout;

/**
 * How Bob undoes a transformation operator.
 */
typedef enum QteleCorrection {
  QTELE_CORRECTION_ADJOINT = 0,
  QTELE_CORRECTION_INVERSE = 1,
} QteleCorrection;

/**
 * Classification of an assignment over Charlie's angle.
 */
typedef enum QteleThetaClass {
  QTELE_THETA_CLASS_ALL_THETA = 0,
  QTELE_THETA_CLASS_DISCRETE_THETA = 1,
  QTELE_THETA_CLASS_NONE = 2,
} QteleThetaClass;

/**
 * Opaque scan report.
 */
typedef struct QteleScan QteleScan;

/**
 * Opaque pure state.
 */
typedef struct QteleState QteleState;

typedef struct QteleMmesVerdict {
  bool mmes;
  uintptr_t worst_pair_a;
  uintptr_t worst_pair_b;
  double max_deviation;
} QteleMmesVerdict;

/**
 * Qubit labels (1-based) for Alice's two qubits, Bob's two and Charlie's.
 */
typedef struct QteleAssignment {
  uintptr_t alice1;
  uintptr_t alice2;
  uintptr_t bob1;
  uintptr_t bob2;
  uintptr_t charlie;
} QteleAssignment;

typedef struct QteleCriterion {
  bool pass;
  double sigma111_defect;
  double sigma112_defect;
  double purity_alice_pair;
  double purity_bob_pair;
} QteleCriterion;

/**
 * One measurement outcome `(i, j, n)` of the protocol.
 */
typedef struct QteleRecord {
  uint8_t i;
  uint8_t j;
  uint8_t n;
  double probability;
  double fidelity;
  bool recoverable;
} QteleRecord;

typedef struct QteleScanEntry {
  struct QteleAssignment assignment;
  enum QteleThetaClass kind;
  uintptr_t num_roots;
  double min_defect;
  double argmin_theta;
  double purity_alice;
  double purity_bob;
} QteleScanEntry;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or an empty
 * string. The pointer stays valid until the next call on the same thread.
 */
const char *qtele_last_error_message(void);

/**
 * Builds a catalog state (`man_m5`, `brown`, `ghz5`, `bell_phi_plus`,
 * `product_zero_N`, ...).
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum QteleStatus qtele_state_named(const char *name, struct QteleState **out_state);

/**
 * Builds a state from `2^num_qubits` amplitudes given as separate real and
 * imaginary arrays. Nonzero vectors are normalized.
 *
 * # Safety
 * `re` and `im` must each point to `2^num_qubits` doubles; `out` must be
 * writable.
 */
enum QteleStatus qtele_state_from_amplitudes(uintptr_t num_qubits,
                                             const double *re,
                                             const double *im,
                                             struct QteleState **out_state);

/**
 * Releases a state. Null is ignored.
 *
 * # Safety
 * `state` must come from this library and not be freed twice.
 */
void qtele_state_free(struct QteleState *state);

/**
 * Number of qubits, or 0 for a null handle.
 *
 * # Safety
 * `state` must be null or a live handle.
 */
uintptr_t qtele_state_num_qubits(const struct QteleState *state);

/**
 * Reads amplitude `index` (qubit 1 is the most significant bit).
 *
 * # Safety
 * `state` must be a live handle; `re` and `im` must be writable.
 */
enum QteleStatus qtele_state_amplitude(const struct QteleState *state,
                                       uintptr_t index,
                                       double *re,
                                       double *im);

/**
 * Purity of the two-qubit reduced state on qubits `a` and `b`.
 *
 * # Safety
 * `state` must be a live handle; `out_purity` must be writable.
 */
enum QteleStatus qtele_pair_purity(const struct QteleState *state,
                                   uintptr_t a,
                                   uintptr_t b,
                                   double *out_purity);

/**
 * Purity of qubits 1 and 2 of a five-qubit state by the explicit block
 * expansion.
 *
 * # Safety
 * `state` must be a live handle; `out_purity` must be writable.
 */
enum QteleStatus qtele_purity_expansion(const struct QteleState *state, double *out_purity);

/**
 * Whether every two-qubit reduction of a five-qubit state has purity 1/4.
 *
 * # Safety
 * `state` must be a live handle; `out_verdict` must be writable.
 */
enum QteleStatus qtele_mmes_check(const struct QteleState *state,
                                  double tol,
                                  struct QteleMmesVerdict *out_verdict);

/**
 * Writes the 4x4 transformation operator for outcome `(i, j, n)` in
 * row-major order into `re[16]` and `im[16]`.
 *
 * # Safety
 * `channel` must be a live handle; `re` and `im` must hold 16 doubles.
 */
enum QteleStatus qtele_transformation_operator(const struct QteleState *channel,
                                               struct QteleAssignment assign,
                                               uint8_t i,
                                               uint8_t j,
                                               uint8_t n,
                                               double theta,
                                               enum QteleLayout layout,
                                               double *re,
                                               double *im);

/**
 * Unitarity of both operators for outcome `(1, 1, n)` at angle `theta`.
 *
 * # Safety
 * `channel` must be a live handle; `out_report` must be writable.
 */
enum QteleStatus qtele_criterion_check(const struct QteleState *channel,
                                       struct QteleAssignment assign,
                                       double theta,
                                       double tol,
                                       struct QteleCriterion *out_report);

/**
 * Simulates the protocol for a two-qubit input given by four complex
 * coefficients (normalized to within 1e-6) and writes [`QTELE_NUM_OUTCOMES`] records ordered by
 * `i`, then `j`, then `n`.
 *
 * # Safety
 * `channel` must be a live handle; `input_re` and `input_im` must hold 4
 * doubles; `out_records` must hold 32 records.
 */
enum QteleStatus qtele_simulate(const struct QteleState *channel,
                                struct QteleAssignment assign,
                                double theta,
                                const double *input_re,
                                const double *input_im,
                                enum QteleCorrection correction,
                                struct QteleRecord *out_records);

/**
 * Classifies all 30 role assignments of a five-qubit channel.
 *
 * # Safety
 * `channel` must be a live handle; `out_scan` must be writable.
 */
enum QteleStatus qtele_scan(const struct QteleState *channel,
                            double tol,
                            struct QteleScan **out_scan);

/**
 * Number of entries in a scan report, or 0 for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
uintptr_t qtele_scan_len(const struct QteleScan *report);

/**
 * Reads entry `index` of a scan report.
 *
 * # Safety
 * `report` must be a live handle; `out_entry` must be writable.
 */
enum QteleStatus qtele_scan_entry(const struct QteleScan *report,
                                  uintptr_t index,
                                  struct QteleScanEntry *out_entry);

/**
 * Copies up to `capacity` roots of entry `index` into `roots`, sets
 * `*out_count` to the number copied.
 *
 * # Safety
 * `report` must be a live handle; `roots` must hold `capacity` doubles;
 * `out_count` must be writable.
 */
enum QteleStatus qtele_scan_roots(const struct QteleScan *report,
                                  uintptr_t index,
                                  double *roots,
                                  uintptr_t capacity,
                                  uintptr_t *out_count);

/**
 * Releases a scan report. Null is ignored.
 *
 * # Safety
 * `report` must come from this library and not be freed twice.
 */
void qtele_scan_free(struct QteleScan *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QTELE_H */
