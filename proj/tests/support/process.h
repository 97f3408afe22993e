#ifndef IDPF_TESTS_PROCESS_H_
#define IDPF_TESTS_PROCESS_H_

#include <sys/types.h>

#include <filesystem>
#include <string>
#include <vector>

namespace idpf::testing {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the idpf CLI synchronously.
RunResult RunCli(const std::vector<std::string>& args);

// Last non-empty stdout line.
std::string LastLine(const std::string& text);

// A CLI process in the background, killed with SIGTERM on destruction.
class ChildProcess {
 public:
  explicit ChildProcess(const std::vector<std::string>& args,
                        const std::filesystem::path& log);
  ~ChildProcess();
  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;

  // SIGTERM and reap; returns the exit status.
  int Stop();

 private:
  pid_t pid_ = -1;
};

// Polls until the file holds a port number or the timeout expires.
int WaitForPortFile(const std::filesystem::path& path, int timeout_ms = 10000);

std::filesystem::path TempDir(const std::string& name);

}  // namespace idpf::testing

#endif  // IDPF_TESTS_PROCESS_H_
