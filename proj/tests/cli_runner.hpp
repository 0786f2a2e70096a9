#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace testing {

struct CommandResult {
  int status = -1;
  std::string out;
};

// Runs the tour binary with a shell-quoted argument string; stderr is
// discarded unless the arguments redirect it.
inline CommandResult run_tour(const std::string& args) {
  const std::string cmd = std::string("'") + NETOUR_TOUR_BINARY + "' " + args;
  CommandResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace testing
