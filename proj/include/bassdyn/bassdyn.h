#ifndef BASSDYN_BASSDYN_H
#define BASSDYN_BASSDYN_H

#include <stddef.h>

#if defined(BASSDYN_BUILDING)
#  define BASSDYN_API __attribute__((visibility("default")))
#else
#  define BASSDYN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct bassdyn_document bassdyn_document;

typedef enum bassdyn_status {
  BASSDYN_OK              = 0,
  BASSDYN_PARSE           = 1, /* malformed word, path or point */
  BASSDYN_SCHEMA          = 2, /* document does not fit the schema or the command */
  BASSDYN_RESOLVE         = 3, /* unknown vertex or edge */
  BASSDYN_ARG             = 4, /* bad flag, null pointer or non-GBS graph of groups */
  BASSDYN_UNKNOWN_COMMAND = 5,
  BASSDYN_INTERNAL        = 6
} bassdyn_status;

/* Exit codes reported by bassdyn_run. */
enum {
  BASSDYN_EXIT_POSITIVE     = 0,
  BASSDYN_EXIT_FAILED       = 1,
  BASSDYN_EXIT_INCONCLUSIVE = 2,
  BASSDYN_EXIT_INPUT_ERROR  = 3
};

BASSDYN_API char const* bassdyn_version(void);

/* Message of the last failed call on this thread; never null. */
BASSDYN_API char const* bassdyn_last_error(void);

/* Parses a JSON input document. `name` labels reports when the document has
   no "name" field and may be null. */
BASSDYN_API bassdyn_status bassdyn_document_parse(char const*        text,
                                                  size_t             length,
                                                  char const*        name,
                                                  bassdyn_document** out);

BASSDYN_API void bassdyn_document_free(bassdyn_document* doc);

/* Runs a command. flags[i] is "name=value" without leading dashes; "base"
   is accepted by every graph-of-groups command. On success *out holds the
   report as text or JSON (free with bassdyn_string_free) and *exit_code one
   of BASSDYN_EXIT_*. Input errors return a non-OK status with
   *exit_code = BASSDYN_EXIT_INPUT_ERROR and *out = NULL. */
BASSDYN_API bassdyn_status bassdyn_run(bassdyn_document const* doc,
                                       char const*             command,
                                       char const* const*      flags,
                                       size_t                  nflags,
                                       int                     json,
                                       char**                  out,
                                       int*                    exit_code);

BASSDYN_API void bassdyn_string_free(char* s);

/* Normal form of a word on a graph-of-groups document. */
BASSDYN_API bassdyn_status bassdyn_reduce(bassdyn_document const* doc,
                                          char const*             word,
                                          char**                  out);

/* First Betti number of the underlying graph. */
BASSDYN_API bassdyn_status bassdyn_betti(bassdyn_document const* doc, size_t* out);

/* Number of command names and the i-th name. */
BASSDYN_API size_t      bassdyn_command_count(void);
BASSDYN_API char const* bassdyn_command_name(size_t i);

#ifdef __cplusplus
}
#endif

#endif
