/* logiso — decision procedures and constructions for algebras of
 * log-integrable functions over finitely presented measure algebras.
 *
 * Every operation returns a status following the shared exit contract
 * (0 = yes/computed, 1 = decision no, 2 = input or usage error) and, when a
 * char** out parameter is given, a heap-allocated JSON document with sorted
 * keys. Release strings with logiso_free and handles with the matching
 * *_release call. Handles are immutable after parsing and safe to share
 * across threads.
 */
#ifndef LOGISO_H
#define LOGISO_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum logiso_status {
  LOGISO_OK = 0,  /* computation succeeded / decision yes */
  LOGISO_NO = 1,  /* decision no (result JSON still produced) */
  LOGISO_ERR = 2  /* invalid input, precondition failure, undecidable tail */
} logiso_status;

typedef struct logiso_space logiso_space;
typedef struct logiso_passport logiso_passport;

const char* logiso_version(void);

void logiso_free(char* s);

/* force_exact != 0 converts decimal literals to exact binary rationals, so
 * the whole computation runs in exact arithmetic. */
logiso_status logiso_space_parse(const char* json, int force_exact, logiso_space** out,
                                 char** error_json);
void logiso_space_release(logiso_space* s);
logiso_status logiso_space_to_json(const logiso_space* s, char** out_json);

logiso_status logiso_passport_parse(const char* json, int force_exact, logiso_passport** out,
                                    char** error_json);
void logiso_passport_release(logiso_passport* p);
logiso_status logiso_passport_to_json(const logiso_passport* p, char** out_json);

/* integral of log(1+|f|) with audit partial sums. */
logiso_status logiso_norm(const logiso_space* space, const char* function_json, char** out_json);
/* Membership in the log-integrable algebra; NO carries divergence bounds. */
logiso_status logiso_member(const logiso_space* space, const char* function_json, char** out_json);
/* Radon-Nikodym derivative d(nu)/d(mu) with a boundedness certificate;
 * status NO means unbounded. */
logiso_status logiso_rn(const logiso_space* mu, const logiso_space* nu, char** out_json);
/* L_log(mu) subset of L_log(nu)? NO carries a divergence-witness preview. */
logiso_status logiso_include(const logiso_space* mu, const logiso_space* nu, char** out_json);
/* L_log(mu) == L_log(nu)? */
logiso_status logiso_equal(const logiso_space* mu, const logiso_space* nu, char** out_json);
/* Passport extraction (components grouped by weight, masses normalized). */
logiso_status logiso_passport_of(const logiso_space* space, char** out_json);
/* Star-isomorphism decision for the function algebras of two passports. */
logiso_status logiso_decide_iso(const logiso_passport* p1, const logiso_passport* p2,
                                char** out_json);
/* Constructive direction: transported measure, its derivatives, and the
 * equality certificate. */
logiso_status logiso_build_iso(const logiso_passport* p1, const logiso_passport* p2,
                               char** out_json);
/* Divergence construction truncated to K cells, with both partial-sum
 * sequences. Requires an unbounded derivative (LOGISO_ERR otherwise). */
logiso_status logiso_counterexample(const logiso_space* mu, const logiso_space* nu, uint64_t K,
                                    char** out_json);
/* Same, with the derivative given directly as a ratio rule over mu's cells. */
logiso_status logiso_counterexample_rule(const logiso_space* mu, const char* ratio_rule_json,
                                         uint64_t K, char** out_json);
/* Checks that the induced map commutes with log(1+|.|) cellwise (exact). */
logiso_status logiso_verify_prop2(const logiso_passport* p1, const logiso_passport* p2,
                                  const char* function_json /* NULL for random */,
                                  uint32_t random_count, uint64_t seed, char** out_json);
/* Checks the integral and norm transport identities against the pushforward
 * or the transported (gamma) measure. */
logiso_status logiso_verify_transport(const logiso_passport* p1, const logiso_passport* p2,
                                      const char* function_json /* NULL for random */,
                                      uint32_t random_count, uint64_t seed,
                                      const char* target /* "gamma" | "pushforward" */,
                                      char** out_json);
/* Log-equivalence of two sigma-finite measures along an explicit pairing
 * (NULL pairing = identity). */
logiso_status logiso_log_equivalent(const logiso_space* mu, const logiso_space* nu,
                                    const char* pairing_json, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* LOGISO_H */
