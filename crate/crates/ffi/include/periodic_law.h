#ifndef PERIODIC_LAW_H
#define PERIODIC_LAW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum PlStatus {
  PL_STATUS_OK = 0,
  // A required pointer argument was null.
  PL_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  PL_STATUS_INVALID_UTF8 = 2,
  // The input was rejected; see the last error message.
  PL_STATUS_INVALID_INPUT = 3,
  // The result does not fit the output type.
  PL_STATUS_OVERFLOW = 4,
  // An internal invariant failed.
  PL_STATUS_INTERNAL = 5,
  // A panic was caught at the boundary.
  PL_STATUS_PANIC = 6,
} PlStatus;

// A clustering tree.
typedef struct PlDendrogram PlDendrogram;

// A finite topological space on dendrogram leaves.
typedef struct PlSpace PlSpace;

// A property table.
typedef struct PlTable PlTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, as a new string the
// caller frees with [`pl_string_free`]; null if there is none.
char *pl_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` is null or a string returned by this library, freed at most once.
void pl_string_free(char *s);

// Library version as a static string.
const char *pl_version(void);

// Number of elements in period `n`.
//
// # Safety
// `out` is valid for writes.
enum PlStatus pl_period_cardinality(uint32_t n, uint64_t *out);

// Atomic number closing period `n`.
//
// # Safety
// `out` is valid for writes.
enum PlStatus pl_accumulated_elements(uint32_t n, uint64_t *out);

// Atomic number closing period `n`, from the closed form.
//
// # Safety
// `out` is valid for writes.
enum PlStatus pl_weise_noble_gas(uint32_t n, uint64_t *out);

// # Safety
// `out` is valid for writes.
enum PlStatus pl_mills_weight(uint32_t n, uint32_t t, double *out);

// First `count` shells under `order` (`madelung`, `hydrogenic` or
// `ray:K`), space-separated.
//
// # Safety
// `order` is a NUL-terminated string; `out` is valid for writes.
enum PlStatus pl_shells(const char *order, size_t count, char **out);

// Configuration of `z` electrons, e.g. `1s2 2s2 2p6`.
//
// # Safety
// `order` is a NUL-terminated string; `out` is valid for writes.
enum PlStatus pl_aufbau(uint32_t z, const char *order, char **out);

// 1-based position of `symbol` on the Pettifor scale.
//
// # Safety
// `symbol` is a NUL-terminated string; `out` is valid for writes.
enum PlStatus pl_pettifor_rank(const char *symbol, uint32_t *out);

// The property table shipped with the library.
//
// # Safety
// `out` is valid for writes.
enum PlStatus pl_table_bundled(struct PlTable **out);

// Parses a property table from CSV text.
//
// # Safety
// `csv` is a NUL-terminated string; `out` is valid for writes.
enum PlStatus pl_table_from_csv(const char *csv, struct PlTable **out);

// Number of elements in the table; 0 for null.
//
// # Safety
// `table` is null or a live table handle.
size_t pl_table_len(const struct PlTable *table);

// The table as canonical CSV.
//
// # Safety
// `table` is a live table handle; `out` is valid for writes.
enum PlStatus pl_table_to_csv(const struct PlTable *table, char **out);

// # Safety
// `table` is null or a table handle, freed at most once.
void pl_table_free(struct PlTable *table);

// Clusters the table on standardized properties. `properties` is a
// comma-separated list, or null for every property without missing values;
// `metric` and `linkage` may be null for the defaults (euclidean, average).
//
// # Safety
// `table` is a live table handle; string arguments are null or
// NUL-terminated; `out` is valid for writes.
enum PlStatus pl_cluster(const struct PlTable *table,
                         const char *properties,
                         const char *metric,
                         const char *linkage,
                         struct PlDendrogram **out);

// Reads a tree written by [`pl_dendrogram_to_newick`].
//
// # Safety
// `newick` is a NUL-terminated string; `out` is valid for writes.
enum PlStatus pl_dendrogram_from_newick(const char *newick, struct PlDendrogram **out);

// Number of leaves; 0 for null.
//
// # Safety
// `tree` is null or a live dendrogram handle.
size_t pl_dendrogram_leaf_count(const struct PlDendrogram *tree);

// # Safety
// `tree` is a live dendrogram handle; `out` is valid for writes.
enum PlStatus pl_dendrogram_to_newick(const struct PlDendrogram *tree, char **out);

// Height at which leaves `a` and `b` first share a cluster.
//
// # Safety
// `tree` is a live dendrogram handle; `a` and `b` are NUL-terminated;
// `out` is valid for writes.
enum PlStatus pl_dendrogram_cophenetic(const struct PlDendrogram *tree,
                                       const char *a,
                                       const char *b,
                                       double *out);

// The cut maximizing the product of cluster populations, as JSON; the
// cluster count is also written to `clusters` when it is not null.
//
// # Safety
// `tree` is a live dendrogram handle; `clusters` is null or valid for
// writes; `out` is valid for writes.
enum PlStatus pl_dendrogram_select_cut(const struct PlDendrogram *tree,
                                       size_t *clusters,
                                       char **out);

// # Safety
// `tree` is null or a dendrogram handle, freed at most once.
void pl_dendrogram_free(struct PlDendrogram *tree);

// The space generated by the leaf sets of the tree's internal nodes, plus
// the singletons when `include_singletons` is set.
//
// # Safety
// `tree` is a live dendrogram handle; `out` is valid for writes.
enum PlStatus pl_space_from_dendrogram(const struct PlDendrogram *tree,
                                       bool include_singletons,
                                       struct PlSpace **out);

// Applies `op` (`closure`, `interior`, `boundary` or `derived`) to the
// comma-separated point list `members`; the result is comma-separated in
// point order.
//
// # Safety
// `space` is a live space handle; `op` and `members` are NUL-terminated;
// `out` is valid for writes.
enum PlStatus pl_space_apply(const struct PlSpace *space,
                             const char *op,
                             const char *members,
                             char **out);

// # Safety
// `space` is null or a space handle, freed at most once.
void pl_space_free(struct PlSpace *space);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERIODIC_LAW_H */
