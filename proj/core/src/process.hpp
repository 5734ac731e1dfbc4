#pragma once

#include <map>
#include <string>

namespace mtwb::detail {

struct ProcessResult {
  int exit_code = 0;  // 128 + signal when killed
  std::string out;
  std::string err;
};

// Runs `/bin/sh -c command` with `input` on stdin and the extra environment
// merged over the current one. Throws std::system_error on spawn failure.
ProcessResult run_shell(const std::string& command,
                        const std::map<std::string, std::string>& extra_env,
                        const std::string& input);

}  // namespace mtwb::detail
