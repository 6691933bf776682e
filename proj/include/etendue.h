/* C interface to the finite-presheaf dimension toolkit.
 *
 * Conventions:
 *   - Every function returns 0 on success or a nonzero ETD_E_* code; the
 *     matching human-readable message is available from
 *     etd_last_error_message() until the next call on the same thread.
 *   - Handles are opaque and must be released with the matching *_free.
 *   - String outputs (char**) are heap-allocated, UTF-8, NUL-terminated, and
 *     released with etd_string_free.
 *   - Extended naturals pass as int64_t: finite values as themselves,
 *     ETD_NEG_INF / ETD_POS_INF for the infinities.
 *   - All operations are deterministic; handles are immutable after creation
 *     and safe to share across threads.
 */
#ifndef ETENDUE_H
#define ETENDUE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define ETD_NEG_INF INT64_MIN
#define ETD_POS_INF INT64_MAX

enum {
  ETD_OK = 0,
  ETD_E_MALFORMED = 1,    /* unreadable input (JSON, reference, argument) */
  ETD_E_AXIOM = 2,        /* input data violates category/presheaf laws */
  ETD_E_UNKNOWN_NAME = 3, /* named object/morphism/element/example missing */
  ETD_E_BUDGET = 4,       /* configured work bound exceeded */
  ETD_E_PARENT = 5,       /* operands live over different parents */
  ETD_E_NOT_NATURAL = 6,  /* a finite natural was required */
  ETD_E_HYPOTHESIS = 7,   /* the base lacks structure the analysis needs */
  ETD_E_INCOMPATIBLE = 8, /* construction does not apply to this base */
  ETD_E_PARSE = 9,        /* formula text does not parse */
  ETD_E_THEOREM = 10,     /* a verified implication failed: report as a bug */
  ETD_E_INTERNAL = 11,    /* invariant breach inside the library: a bug */
  ETD_E_NULL = 100        /* a required pointer argument was NULL */
};

typedef struct etd_category etd_category;
typedef struct etd_presheaf etd_presheaf;

/* Last error on this thread (code of the most recent failing call). */
int etd_last_error_code(void);
const char* etd_last_error_message(void);

void etd_string_free(char* s);
void etd_category_free(etd_category* cat);
void etd_presheaf_free(etd_presheaf* x);

/* Generated sites: kind is "delta" (truncated simplex category) or "finset"
 * (nonempty finite sets up to max_label). */
int etd_site(const char* kind, int max_label, etd_category** out);

/* Category JSON:
 * {"objects": [...], "morphisms": [{"id","dom","cod"}...],
 *  "identities": {obj: mor}, "compose": [[outer, inner, result]...]}.
 * Loading re-validates the unit and associativity laws. */
int etd_category_from_json(const char* text, etd_category** out);
int etd_category_to_json(const etd_category* cat, char** out);
int etd_category_counts(const etd_category* cat, int64_t* objects,
                        int64_t* morphisms);

/* Builds a named example over a base reference such as "delta:2".
 * Examples: "representable(<object>)", "boundary(<n>)", "loop_Y",
 * "collapsed_Z". */
int etd_presheaf_build(const char* base_ref, const char* example,
                       etd_presheaf** out);

/* Presheaf JSON: {"base": "delta:2" | inline category,
 *  "elements": {obj: [...]}, "action": {mor: {y: x}}}. */
int etd_presheaf_from_json(const char* text, etd_presheaf** out);
/* base_ref may be NULL or "" to embed the base category inline. */
int etd_presheaf_to_json(const etd_presheaf* x, const char* base_ref,
                         char** out);
int etd_presheaf_total_size(const etd_presheaf* x, int64_t* total);

/* Least n whose n-skeleton is everything (ETD_NEG_INF for the empty
 * presheaf), and the matching bound computed by forcing the bounded-depth
 * sentences over the site of minimal figures. */
int etd_dim(const etd_presheaf* x, int64_t* out);
int etd_depth(const etd_presheaf* x, int64_t* out);

/* Full dimension report as JSON with fields exactly: dim, depth,
 * strongly_regular, non_singular, localic, etendue,
 * table [{n, dim_le_n, ibd_n}...], witnesses [...]. Rows run n = 0..n_max;
 * pass n_max < 0 for the default (site objects + 1). Returns ETD_E_THEOREM
 * when a verified implication fails — that is a library bug, not bad
 * input. */
int etd_analyze_json(const etd_presheaf* x, int64_t n_max, char** out);

/* Evaluates a formula over a category: {"formula": <printed back>,
 * "satisfied": bool, "forcing_stages": [object names]}. Grammar: bot, top,
 * ibd(N) with N in -inf|0|1|...|inf, forall x. P, P \/ Q, P /\ Q, P => Q,
 * gamma(P,Q), const(<name>) where <name> is "all", "empty", or
 * object names joined by "|". */
int etd_logic_eval_json(const etd_category* site, const char* formula,
                        char** out);

/* Idempotent two-sided ideals: {"count": n, "levels": [{"ideal": [morphism
 * names], "objects": [object names] | null, "level_e": bool}...]}.
 * budget <= 0 selects the default morphism budget. */
int etd_levels_json(const etd_category* cat, int64_t budget, char** out);

/* Runs the built-in example corpus; JSON array of {"name", "base",
 * "report": <dimension report>}. */
int etd_seed_corpus_json(char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ETENDUE_H */
