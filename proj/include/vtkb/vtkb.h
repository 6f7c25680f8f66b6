#ifndef VTKB_VTKB_H
#define VTKB_VTKB_H

/*
 * C interface to the VTKB engine. Every call that produces data writes a
 * NUL-terminated UTF-8 JSON document to *out_json; on failure the document is
 * {"error": {"code", "message", "line"?, "column"?, "expected"?}}. Release it
 * with vtkb_free_string(). A loaded knowledge base is immutable and may be
 * shared between threads.
 */

#include <stddef.h>

#if defined(VTKB_BUILDING_LIBRARY)
#define VTKB_API __attribute__((visibility("default")))
#else
#define VTKB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct vtkb_kb vtkb_kb;

typedef enum {
  VTKB_OK = 0,
  VTKB_INVALID_ARGUMENT = 1,
  VTKB_IO = 2,
  VTKB_PARSE = 3,
  VTKB_SEMANTIC = 4,
  VTKB_BAD_REQUEST = 5,
  VTKB_UNKNOWN_REFERENCE = 6,
  VTKB_NOT_FOUND = 7,
  VTKB_INFEASIBLE = 8,
  VTKB_INVALID_QUERY = 9,
  VTKB_INTERNAL = 10
} vtkb_status;

typedef struct {
  double default_score;      /* usability of unevaluated techniques, 0.5 */
  int default_rules_enabled; /* rules apply to scenes without active_rules, 1 */
} vtkb_options;

VTKB_API void vtkb_options_init(vtkb_options* options);
VTKB_API const char* vtkb_version(void);

/* Parse and validate a KB. options may be NULL. On failure *out is NULL and
   *error_json (if non-NULL) receives the error document. */
VTKB_API vtkb_status vtkb_load_file(const char* path, const vtkb_options* options,
                                    vtkb_kb** out, char** error_json);
VTKB_API vtkb_status vtkb_load_string(const char* text, const char* origin,
                                      const vtkb_options* options, vtkb_kb** out,
                                      char** error_json);
VTKB_API void vtkb_free(vtkb_kb* kb);

/* {valid, violations:[{line, column, kind, subject, message}]}; succeeds for
   syntactically valid files even when violations are found. */
VTKB_API vtkb_status vtkb_validate_file(const char* path, char** out_json);

VTKB_API vtkb_status vtkb_summary(const vtkb_kb* kb, char** out_json);
VTKB_API vtkb_status vtkb_validate(const vtkb_kb* kb, char** out_json);
VTKB_API vtkb_status vtkb_techniques(const vtkb_kb* kb, char** out_json);
VTKB_API vtkb_status vtkb_technique(const vtkb_kb* kb, const char* id, char** out_json);
/* {pairs:[[sub, sup]...]} or, with emit_hierarchy, {concepts:[{id, parents}]} */
VTKB_API vtkb_status vtkb_classify(const vtkb_kb* kb, int emit_hierarchy, char** out_json);

/* Request documents are JSON text; see docs/api.md for the shapes. */
VTKB_API vtkb_status vtkb_query(const vtkb_kb* kb, const char* request_json, char** out_json);
VTKB_API vtkb_status vtkb_match(const vtkb_kb* kb, const char* request_json, char** out_json);
VTKB_API vtkb_status vtkb_recommend(const vtkb_kb* kb, const char* request_json,
                                    char** out_json);
VTKB_API vtkb_status vtkb_check(const vtkb_kb* kb, const char* request_json, char** out_json);

VTKB_API void vtkb_free_string(char* s);
VTKB_API const char* vtkb_status_name(vtkb_status status);
/* 200, 400, 404, 422 or 500. */
VTKB_API int vtkb_http_status(vtkb_status status);

#ifdef __cplusplus
}
#endif

#endif
