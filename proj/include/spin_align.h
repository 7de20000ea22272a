/* spin_align.h -- C API of the spin alignment toolkit.
 *
 * The library constructs alignment operators for tuples of subset states,
 * compares their spectra against the aligned configuration in the
 * majorization (Ky Fan) order, verifies the three-qubit compatible-marginal
 * majorization statement step by step, and searches for violations.
 *
 * All functions are thread-safe. Objects are opaque handles created and
 * destroyed through this interface; every fallible call returns a
 * sa_status, with sa_last_error() holding a thread-local detail message
 * for the most recent failure on the calling thread.
 */
#ifndef SPIN_ALIGN_H
#define SPIN_ALIGN_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sa_status {
    SA_OK = 0,
    SA_ERR_ARGUMENT = 1,      /* invalid argument or option value */
    SA_ERR_PARSE = 2,         /* malformed JSON input */
    SA_ERR_DIMENSION = 3,     /* shape or subsystem-dimension mismatch */
    SA_ERR_NOT_HERMITIAN = 4, /* matrix input fails the Hermiticity gate */
    SA_ERR_NOT_A_STATE = 5,   /* not PSD / not unit trace / not normalized */
    SA_ERR_NO_VIOLATION = 6,  /* polish requested on a non-violating problem */
    SA_ERR_INTERNAL = 7
} sa_status;

/* An alignment problem: n parties of local dimension d, reference state Q,
 * a subset measure, and either free subset states or one global state. */
typedef struct sa_problem sa_problem;

/* The outcome of a command: a JSON report plus the exit code it maps to
 * (0 holds/pass, 2 violation found) and, for search and reproduce, the
 * associated problem. */
typedef struct sa_report sa_report;

const char* sa_version(void);
const char* sa_status_name(sa_status status);

/* Thread-local message describing the last failure on this thread; empty
 * string when the last call succeeded. The pointer stays valid until the
 * next library call on the same thread. */
const char* sa_last_error(void);

/* ------------------------------------------------------------------ */
/* problems                                                            */

/* Parses the JSON problem-file format. */
sa_status sa_problem_parse_json(const char* json_text, sa_problem** out);

/* The built-in three-qubit violation instance (Q = I/2, uniform measure
 * on the three 2-subsets, fixed rational two-qubit states). */
sa_status sa_problem_counterexample(sa_problem** out);

/* Serializes back to the problem-file format; free with sa_string_free. */
sa_status sa_problem_to_json(const sa_problem* p, char** out_json);

/* max_k interior Ky Fan gap against the aligned target; positive means
 * the majorization relation is violated. */
sa_status sa_problem_violation_score(const sa_problem* p, double* out_score);

/* Monotone local refinement of a violating problem (see the search
 * command); fails with SA_ERR_NO_VIOLATION when the input does not
 * violate. */
sa_status sa_problem_polish(const sa_problem* p, long iters, uint64_t seed, sa_problem** out);

void sa_problem_free(sa_problem* p);

/* ------------------------------------------------------------------ */
/* commands                                                            */

/* Rebuilds the built-in instance and compares spectra, Ky Fan sums, and
 * entropies against the reference values. */
sa_status sa_reproduce(int with_timestamp, sa_report** out);

/* Majorization verdict for a problem at tolerance tol (pass tol <= 0 for
 * the default 1e-9). */
sa_status sa_check(const sa_problem* p, double tol, int with_timestamp, sa_report** out);

/* Eigenvalues of the problem's operator and its aligned target. */
sa_status sa_spectrum(const sa_problem* p, int with_timestamp, sa_report** out);

/* Sampling campaign over the three-qubit two-body majorization statement
 * and its proof steps. ensemble is "pure" or "mixed". */
sa_status sa_verify_proposition(long trials, uint64_t seed, const char* ensemble, double tol,
                                int threads, int with_timestamp, sa_report** out);

typedef struct sa_search_options {
    const char* mode;     /* "free" or "compatible" */
    int n;                /* parties */
    int d;                /* local dimension */
    long restarts;
    long iters;           /* iterations per restart */
    double step_init;
    double step_decay;
    uint64_t seed;
    double tol;
    int threads;
    const char* mu_json;  /* optional measure, JSON array of {subset, weight};
                             NULL defaults to uniform 2-subsets when n = 3 */
} sa_search_options;

/* Fills the defaults documented above (free mode, n = 3, d = 2,
 * 100 restarts x 2000 iters, step 0.25 decaying by 0.9, seed 42). */
void sa_search_options_init(sa_search_options* opt);

sa_status sa_search(const sa_search_options* opt, int with_timestamp, sa_report** out);

/* ------------------------------------------------------------------ */
/* reports                                                             */

/* Serialized JSON report; owned by the report handle. */
const char* sa_report_json(const sa_report* r);

/* 0 = holds / all checks pass, 2 = violation found. */
int sa_report_exit_code(const sa_report* r);

/* The problem associated with a report (search winner, reproduce fixture);
 * SA_ERR_ARGUMENT when the report carries none. */
sa_status sa_report_problem(const sa_report* r, sa_problem** out);

void sa_report_free(sa_report* r);

void sa_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SPIN_ALIGN_H */
