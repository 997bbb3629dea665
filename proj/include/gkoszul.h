/* C interface to the generalized Koszul complex library.
 *
 * Every entry point communicates through JSON documents (UTF-8, NUL
 * terminated). Inputs use the interchange formats described in README.md;
 * outputs are report documents embedding the tool version and a hash of the
 * echoed input. Strings returned through `char**` parameters are owned by the
 * caller and must be released with gk_string_free.
 *
 * Return codes mirror the process exit contract:
 *   GK_OK        success — the check passed or the problem was feasible;
 *   GK_NEGATIVE  a well-formed negative — a failed identity, an infeasible
 *                problem within its cap, or an unstable sampled bound;
 *   GK_ERROR     malformed input or an internal error; *report (when
 *                requested) carries {"error": "..."}.
 */

#ifndef GKOSZUL_H
#define GKOSZUL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef GK_API
#define GK_API __attribute__((visibility("default")))
#endif

#define GK_OK 0
#define GK_NEGATIVE 2
#define GK_ERROR 1

/* Version string of the library, e.g. "0.1.0". Static storage; do not free. */
GK_API const char* gk_version(void);

/* Releases a string returned through any char** parameter. NULL is a no-op. */
GK_API void gk_string_free(char* s);

/* Opaque handle to a parsed, validated morphism. */
typedef struct gk_morphism gk_morphism;

/* Parses {"n", "m", "r", "columns", "degrees"}. Returns NULL on malformed
 * input, with *error (when non-NULL) set to the reason. */
GK_API gk_morphism* gk_morphism_parse(const char* json_text, char** error);
GK_API void gk_morphism_free(gk_morphism* f);
GK_API int gk_morphism_n(const gk_morphism* f);
GK_API int gk_morphism_m(const gk_morphism* f);
GK_API int gk_morphism_r(const gk_morphism* f);

/* Runs one exact identity check on the morphism:
 *   identity ∈ { "cauchy-binet", "cramer", "homotopy", "omskriv", "omv",
 *                "complex-squares", "exactness" }.
 * options_json may be NULL or an object with optional fields:
 *   "seed" (integer), "count" (elements per level for complex-squares),
 *   "points" (surjective points for exactness), "psi" (column of m
 *   polynomials, required by omv), "phis" (list of r-columns for omskriv).
 * Writes an IdentityCheck report. GK_OK on PASS, GK_NEGATIVE on FAIL. */
GK_API int gk_verify(const gk_morphism* f, const char* identity,
                     const char* options_json, char** report);

/* Solves P·Q = phi with degree cap. problem_json:
 *   {"P": Morphism, "phi": [r polynomials], "cap": integer or "auto"}.
 * Writes a DivisionCertificate (GK_OK) or Infeasible (GK_NEGATIVE) report. */
GK_API int gk_divide(const char* problem_json, char** report);

/* As gk_divide with the cap pinned to deg(phi). problem_json: {"P", "phi"}. */
GK_API int gk_noether(const char* problem_json, char** report);

/* Solves P·Q = I_r. problem_json: {"P": Morphism, "cap": integer or "auto"}. */
GK_API int gk_nullstellensatz(const char* problem_json, char** report);

/* Degree-bound arithmetic. query_json:
 *   {"n", "r", "degrees", optional "m", "rho", "d"}.
 * Always reports the Macaulay bound; adds the solvability-condition check
 * when "m" and "rho" are present and the closed-form exponent bound when "d"
 * is present (requires r*d >= 3). */
GK_API int gk_bounds(const char* query_json, char** report);

/* Seeded samplers. request_json:
 *   {"quantity": "lojasiewicz-ratio", "P": Morphism, "M": integer,
 *    "seed": integer, "count": integer}
 * or
 *   {"quantity": "briancon-skoda-ratio", "f": Morphism,
 *    "phi": [r polynomials], "mu": integer (-1 = default),
 *    "seed": integer, "count": integer}.
 * Writes a SampleReport. GK_NEGATIVE when the sampled bound is not stable
 * under count doubling. */
GK_API int gk_sample(const char* request_json, char** report);

/* Heuristic codimension probe of the rank-drop locus. request_json:
 *   {"f": Morphism, "seed": integer, "trials": integer}. */
GK_API int gk_probe(const char* request_json, char** report);

/* Lifts row solutions to a full division solution. request_json:
 *   {"f": Morphism, "phi": [r polynomials],
 *    "H": [per row: [{"ext": [r column indices], "coeff": Poly}, ...]]}.
 * Writes a FuhrmannLift report with the verified column psi. */
GK_API int gk_fuhrmann(const char* request_json, char** report);

/* Re-validates an emitted report document by exact re-computation.
 * GK_OK when the document checks out, GK_NEGATIVE when it is well-formed but
 * wrong, GK_ERROR when malformed. */
GK_API int gk_revalidate(const char* report_json, char** report);

#ifdef __cplusplus
}
#endif

#endif /* GKOSZUL_H */
