#pragma once

#include <string>

#include "kb_handle.hpp"

namespace vtkb_cli {

struct ServiceConfig {
  std::string kb_path;
  std::string host = "127.0.0.1";
  int port = 8080;
  bool default_rules_enabled = true;
  std::string cors_allowed_origin;  // empty: no CORS headers
};

// Blocks until SIGINT/SIGTERM. Returns a process exit code.
int serve(const vtkb_kb* kb, const ServiceConfig& config);

}  // namespace vtkb_cli
