#include "vtkb/vtkb.h"

#include <cstdlib>
#include <cstring>

#include "service.hpp"

struct vtkb_kb {
  vtkb::detail::Service service;
};

namespace {

using vtkb::detail::json;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const json& j) {
  if (out) *out = dup(j.dump(2));
}

template <typename F>
vtkb_status guarded(char** out_json, F&& f) {
  try {
    put(out_json, f());
    return VTKB_OK;
  } catch (const std::exception& e) {
    put(out_json, vtkb::detail::error_json(e));
    return static_cast<vtkb_status>(vtkb::detail::status_of(e));
  } catch (...) {
    put(out_json, json{{"error", {{"code", "InternalError"}, {"message", "unknown failure"}}}});
    return VTKB_INTERNAL;
  }
}

vtkb_status null_argument(char** out_json, const char* what) {
  put(out_json, json{{"error", {{"code", "InvalidArgument"},
                                {"message", std::string(what) + " must not be NULL"}}}});
  return VTKB_INVALID_ARGUMENT;
}

vtkb::detail::ServiceOptions service_options(const vtkb_options* options) {
  vtkb_options o;
  vtkb_options_init(&o);
  if (options) o = *options;
  return {o.default_score, o.default_rules_enabled != 0};
}

vtkb_status load(vtkb::SourceDocument doc, const vtkb_options* options, vtkb_kb** out,
                 char** error_json) {
  try {
    *out = new vtkb_kb{vtkb::detail::Service(doc, service_options(options))};
    if (error_json) *error_json = nullptr;
    return VTKB_OK;
  } catch (const std::exception& e) {
    *out = nullptr;
    put(error_json, vtkb::detail::error_json(e));
    return static_cast<vtkb_status>(vtkb::detail::status_of(e));
  }
}

template <typename F>
vtkb_status with_request(const vtkb_kb* kb, const char* request, char** out_json, F&& f) {
  if (!kb) return null_argument(out_json, "kb");
  if (!request) return null_argument(out_json, "request");
  return guarded(out_json, [&] { return f(vtkb::detail::parse_request(request)); });
}

}  // namespace

extern "C" {

void vtkb_options_init(vtkb_options* options) {
  if (!options) return;
  options->default_score = vtkb::kDefaultUsability;
  options->default_rules_enabled = 1;
}

const char* vtkb_version(void) { return "0.1.0"; }

vtkb_status vtkb_load_file(const char* path, const vtkb_options* options, vtkb_kb** out,
                           char** error_json) {
  if (!out) return null_argument(error_json, "out");
  *out = nullptr;
  if (!path) return null_argument(error_json, "path");
  try {
    return load(vtkb::read_document(path), options, out, error_json);
  } catch (const std::exception& e) {
    put(error_json, vtkb::detail::error_json(e));
    return static_cast<vtkb_status>(vtkb::detail::status_of(e));
  }
}

vtkb_status vtkb_load_string(const char* text, const char* origin, const vtkb_options* options,
                             vtkb_kb** out, char** error_json) {
  if (!out) return null_argument(error_json, "out");
  *out = nullptr;
  if (!text) return null_argument(error_json, "text");
  return load(vtkb::SourceDocument{text, origin ? origin : "<inline>"}, options, out,
              error_json);
}

void vtkb_free(vtkb_kb* kb) { delete kb; }

vtkb_status vtkb_validate_file(const char* path, char** out_json) {
  if (!path) return null_argument(out_json, "path");
  return guarded(out_json,
                 [&] { return vtkb::detail::validate_document(vtkb::read_document(path)); });
}

vtkb_status vtkb_summary(const vtkb_kb* kb, char** out_json) {
  if (!kb) return null_argument(out_json, "kb");
  return guarded(out_json, [&] { return kb->service.summary(); });
}

vtkb_status vtkb_validate(const vtkb_kb* kb, char** out_json) {
  if (!kb) return null_argument(out_json, "kb");
  return guarded(out_json, [&] { return kb->service.validate(); });
}

vtkb_status vtkb_techniques(const vtkb_kb* kb, char** out_json) {
  if (!kb) return null_argument(out_json, "kb");
  return guarded(out_json, [&] { return kb->service.techniques(); });
}

vtkb_status vtkb_technique(const vtkb_kb* kb, const char* id, char** out_json) {
  if (!kb) return null_argument(out_json, "kb");
  if (!id) return null_argument(out_json, "id");
  return guarded(out_json, [&] { return kb->service.technique(id); });
}

vtkb_status vtkb_classify(const vtkb_kb* kb, int emit_hierarchy, char** out_json) {
  if (!kb) return null_argument(out_json, "kb");
  return guarded(out_json, [&] { return kb->service.classify(emit_hierarchy != 0); });
}

vtkb_status vtkb_query(const vtkb_kb* kb, const char* request_json, char** out_json) {
  return with_request(kb, request_json, out_json,
                      [&](const json& r) { return kb->service.query(r); });
}

vtkb_status vtkb_match(const vtkb_kb* kb, const char* request_json, char** out_json) {
  return with_request(kb, request_json, out_json,
                      [&](const json& r) { return kb->service.match(r); });
}

vtkb_status vtkb_recommend(const vtkb_kb* kb, const char* request_json, char** out_json) {
  return with_request(kb, request_json, out_json,
                      [&](const json& r) { return kb->service.recommend(r); });
}

vtkb_status vtkb_check(const vtkb_kb* kb, const char* request_json, char** out_json) {
  return with_request(kb, request_json, out_json,
                      [&](const json& r) { return kb->service.check(r); });
}

void vtkb_free_string(char* s) { std::free(s); }

const char* vtkb_status_name(vtkb_status status) {
  switch (status) {
    case VTKB_OK: return "OK";
    case VTKB_INVALID_ARGUMENT: return "INVALID_ARGUMENT";
    case VTKB_IO: return "IO";
    case VTKB_PARSE: return "PARSE";
    case VTKB_SEMANTIC: return "SEMANTIC";
    case VTKB_BAD_REQUEST: return "BAD_REQUEST";
    case VTKB_UNKNOWN_REFERENCE: return "UNKNOWN_REFERENCE";
    case VTKB_NOT_FOUND: return "NOT_FOUND";
    case VTKB_INFEASIBLE: return "INFEASIBLE";
    case VTKB_INVALID_QUERY: return "INVALID_QUERY";
    case VTKB_INTERNAL: return "INTERNAL";
  }
  return "UNKNOWN";
}

int vtkb_http_status(vtkb_status status) {
  switch (status) {
    case VTKB_OK: return 200;
    case VTKB_PARSE:
    case VTKB_BAD_REQUEST: return 400;
    case VTKB_NOT_FOUND: return 404;
    case VTKB_INTERNAL:
    case VTKB_IO: return 500;
    default: return 422;
  }
}

}  // extern "C"
