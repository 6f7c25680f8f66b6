#pragma once

// Thin RAII over the C API for the command-line tool.

#include <memory>
#include <string>

#include <json.hpp>

#include "vtkb/vtkb.h"

namespace vtkb_cli {

using json = nlohmann::ordered_json;

struct KbDeleter {
  void operator()(vtkb_kb* kb) const { vtkb_free(kb); }
};
using KbPtr = std::unique_ptr<vtkb_kb, KbDeleter>;

// A JSON document returned by the library, plus the call's status.
struct Reply {
  vtkb_status status = VTKB_OK;
  std::string body;  // exactly what the library produced

  bool ok() const { return status == VTKB_OK; }
  json parsed() const { return json::parse(body); }
};

inline Reply take(vtkb_status status, char* text) {
  Reply r{status, text ? text : ""};
  vtkb_free_string(text);
  return r;
}

template <typename F, typename... Args>
Reply call(F f, Args... args) {
  char* out = nullptr;
  vtkb_status s = f(args..., &out);
  return take(s, out);
}

}  // namespace vtkb_cli
