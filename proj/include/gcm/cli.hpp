#pragma once
#include <string>
#include <vector>

namespace gcm {

struct RunOptions {
  bool json = false;
  bool quiet = false;
  std::string at;  // "t1=1/2,t2=0" for the family command
};

struct RunResult {
  int exit_code = 0;  // 0 all checks pass, 1 a check failed, 2 input error
  std::string json;   // structured report, always filled
  std::string text;   // what the CLI prints under the given options
};

const std::vector<std::string> &command_names();

RunResult run_command(const std::string &command, const std::string &path,
                      const RunOptions &opts = {});
// Runs one command over every .gcm file of a directory in name order. The
// JSON output is an array of per-file reports; the exit code is the maximum.
RunResult run_all(const std::string &command, const std::string &dir,
                  const RunOptions &opts = {});

} // namespace gcm
