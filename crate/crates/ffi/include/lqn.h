#ifndef LQN_H
#define LQN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

/*
 Graph view for [`lqn_export_dot`].
 */
typedef enum LqnDotView {
  LQN_DOT_VIEW_BIPARTITE = 0,
  LQN_DOT_VIEW_DIRECTED = 1,
  LQN_DOT_VIEW_PM_DIAGRAM = 2,
} LqnDotView;

/*
 Amplitude source for the numerical part of [`lqn_analyze_json`].
 */
typedef enum LqnNumeric {
  LQN_NUMERIC_NONE = 0,
  LQN_NUMERIC_NETWORK = 1,
  LQN_NUMERIC_GENERIC = 2,
} LqnNumeric;

/*
 Result code of every fallible call.
 */
typedef enum LqnStatus {
  LQN_STATUS_OK = 0,
  LQN_STATUS_NULL_POINTER = 1,
  LQN_STATUS_INVALID_UTF8 = 2,
  LQN_STATUS_PARSE = 3,
  LQN_STATUS_VALIDATION = 4,
  LQN_STATUS_NO_PERFECT_MATCHING = 5,
  LQN_STATUS_ZERO_STATE = 6,
  LQN_STATUS_TOO_LARGE = 7,
  LQN_STATUS_INTERNAL = 8,
} LqnStatus;

/*
 Network layout for [`lqn_design_w`].
 */
typedef enum LqnWForm {
  LQN_W_FORM_STAR = 0,
  LQN_W_FORM_RING = 1,
} LqnWForm;

/*
 Opaque validated network.
 */
typedef struct LqnNetwork LqnNetwork;

/*
 Opaque normalized post-selected state.
 */
typedef struct LqnState LqnState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or NULL after a
 successful call. Valid until the next call into this library on the same
 thread.
 */
const char *lqn_last_error_message(void);

/*
 Releases a string returned by this library. NULL is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void lqn_string_free(char *s);

/*
 Parses and validates a network from JSON text.

 # Safety
 `json` must be a nul-terminated string; `out` must be writable.
 */
enum LqnStatus lqn_network_from_json(const char *json, struct LqnNetwork **out);

/*
 Releases a network. NULL is ignored.

 # Safety
 `network` must come from this library and not have been freed.
 */
void lqn_network_free(struct LqnNetwork *network);

/*
 Serializes a network to JSON.

 # Safety
 `network` must be a live handle; `out` must be writable.
 */
enum LqnStatus lqn_network_to_json(const struct LqnNetwork *network, char **out);

/*
 Number of particles (and detectors).

 # Safety
 `network` must be a live handle; `out` must be writable.
 */
enum LqnStatus lqn_network_n(const struct LqnNetwork *network, uintptr_t *out);

/*
 GHZ-class ring. `colors` is a `u`/`d` string of length `n`, or NULL for
 all up.

 # Safety
 `colors` must be NULL or nul-terminated; `out` must be writable.
 */
enum LqnStatus lqn_design_ghz(uintptr_t n, const char *colors, struct LqnNetwork **out);

/*
 W-class network. `colors` may be NULL.

 # Safety
 `colors` must be NULL or nul-terminated; `out` must be writable.
 */
enum LqnStatus lqn_design_w(uintptr_t n,
                            enum LqnWForm form,
                            const char *colors,
                            struct LqnNetwork **out);

/*
 Dicke `D_2^N` network. `preset` is `"paper-n4"`, `"paper-n5"` or NULL for
 flat rows.

 # Safety
 `preset` must be NULL or nul-terminated; `out` must be writable.
 */
enum LqnStatus lqn_design_dicke2(uintptr_t n, const char *preset, struct LqnNetwork **out);

/*
 Four-qubit cluster-state network.

 # Safety
 `out` must be writable.
 */
enum LqnStatus lqn_design_cluster4(struct LqnNetwork **out);

/*
 Three-port tritter network.

 # Safety
 `out` must be writable.
 */
enum LqnStatus lqn_preset_tritter(struct LqnNetwork **out);

/*
 Number of perfect matchings of the network graph.

 # Safety
 `network` must be a live handle; `out` must be writable.
 */
enum LqnStatus lqn_count_perfect_matchings(const struct LqnNetwork *network, uintptr_t *out);

/*
 Assembles and normalizes the post-selected state.

 # Safety
 `network` must be a live handle; `out` must be writable.
 */
enum LqnStatus lqn_compute_state(const struct LqnNetwork *network, struct LqnState **out);

/*
 Releases a state. NULL is ignored.

 # Safety
 `state` must come from this library and not have been freed.
 */
void lqn_state_free(struct LqnState *state);

/*
 Serializes a state to JSON, terms sorted by ket.

 # Safety
 `state` must be a live handle; `out` must be writable.
 */
enum LqnStatus lqn_state_to_json(const struct LqnState *state, char **out);

/*
 Number of stored terms.

 # Safety
 `state` must be a live handle; `out` must be writable.
 */
enum LqnStatus lqn_state_num_terms(const struct LqnState *state, uintptr_t *out);

/*
 Amplitude of `ket` (a `u`/`d` string); zero for kets not in the state.

 # Safety
 `state` must be a live handle; `ket` nul-terminated; `re` and `im`
 writable.
 */
enum LqnStatus lqn_state_amplitude(const struct LqnState *state,
                                   const char *ket,
                                   double *re,
                                   double *im);

/*
 Squared norm of the state before normalization.

 # Safety
 `state` must be a live handle; `out` must be writable.
 */
enum LqnStatus lqn_state_postselect_probability(const struct LqnState *state, double *out);

/*
 Largest difference between the assembled state and the brute-force
 permutation sum.

 # Safety
 `network` must be a live handle; `max_diff` must be writable.
 */
enum LqnStatus lqn_verify(const struct LqnNetwork *network, double *max_diff);

/*
 Separability report as JSON. `seed` is used only with
 `LQN_NUMERIC_GENERIC`.

 # Safety
 `network` must be a live handle; `out` must be writable.
 */
enum LqnStatus lqn_analyze_json(const struct LqnNetwork *network,
                                enum LqnNumeric numeric,
                                uint64_t seed,
                                char **out);

/*
 DOT rendering of a graph view. `highlight_pm` is a 1-based matching
 index, or 0 for none.

 # Safety
 `network` must be a live handle; `out` must be writable.
 */
enum LqnStatus lqn_export_dot(const struct LqnNetwork *network,
                              enum LqnDotView view,
                              int show_weights,
                              uintptr_t highlight_pm,
                              char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LQN_H */
