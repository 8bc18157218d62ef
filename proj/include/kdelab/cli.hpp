#pragma once

#include <string>
#include <vector>

namespace kdelab::cli {

inline constexpr const char* kVersion = "0.1.0";

struct RunResult {
  int exit_code = 0;
  std::string output;  // the artifact the subcommand would write
  std::string error;   // diagnostics for stderr
};

// Runs one subcommand (args exclude argv[0]). Exit codes: 0 all checks pass,
// 1 usage error, 2 property violation.
RunResult run(const std::vector<std::string>& args);

int main_entry(int argc, char** argv);

// The lines the determinism guarantee covers: everything except '#' comments
// (CSV) / the "timing" object (JSON).
std::string deterministic_view(const std::string& output);

}  // namespace kdelab::cli
