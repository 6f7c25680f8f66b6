#pragma once

// Running the CLI binary from tests: one-shot commands and a background
// server that is terminated on scope exit.

#include <sys/types.h>

#include <string>
#include <vector>

namespace vtkb::testing {

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// argv[0] is the program path. `input` is fed on stdin.
CommandResult run_command(const std::vector<std::string>& argv, const std::string& input = {},
                          const std::vector<std::string>& extra_env = {});

// A TCP port nothing listens on right now (bound to 0, read back, released).
int free_port();

class ServerProcess {
 public:
  ServerProcess(const std::vector<std::string>& argv, int port);
  ~ServerProcess();
  ServerProcess(const ServerProcess&) = delete;
  ServerProcess& operator=(const ServerProcess&) = delete;

  // Polls until the port accepts connections or the process exits.
  bool wait_ready(int timeout_ms = 5000);
  // Exit status once the process ended, or -1 while it is still running.
  int poll_exit();
  std::string stderr_text() const;

 private:
  pid_t pid_ = -1;
  int port_;
  int status_ = -1;
  std::string err_path_;
};

}  // namespace vtkb::testing
