#ifndef COMMUTANTKIT_CAPI_H
#define COMMUTANTKIT_CAPI_H

/* C interface to the commutantkit shared library.  All exchange is JSON:
 * requests are {"command": "<module> <verb>", "args": {...}}, responses are
 * the structured reports produced by the command layer.  Strings returned
 * through out-parameters are owned by the caller and must be released with
 * ck_string_free. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define CK_OK 0              /* all verdicts verified */
#define CK_VERDICT_FAILED 1  /* a verdict failed or was left inconclusive */
#define CK_INVALID_INPUT 2   /* parse error or precondition violation */
#define CK_INTERNAL_ERROR 3  /* unexpected internal failure */

typedef struct ck_context ck_context;

/* A context carries the last error message; contexts are independent and
 * may be used from different threads (each context from one thread). */
ck_context* ck_context_new(void);
void ck_context_free(ck_context* ctx);

/* Runs one command.  On CK_OK / CK_VERDICT_FAILED, *response_json is set to
 * the report (caller frees).  On error codes >= 2, *response_json is left
 * untouched and ck_last_error describes the failure. */
int ck_run(ck_context* ctx, const char* request_json, char** response_json);

/* Message for the most recent failing ck_run on this context; owned by the
 * context, valid until the next call. */
const char* ck_last_error(const ck_context* ctx);

void ck_string_free(char* s);

const char* ck_version(void);

#ifdef __cplusplus
}
#endif

#endif /* COMMUTANTKIT_CAPI_H */
