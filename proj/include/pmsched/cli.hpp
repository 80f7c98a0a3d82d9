#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pmsched/instance.hpp"

namespace pmsched::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInput = 3,     // unreadable or invalid input, infeasible check
  kExternal = 4,  // external solver failure
  kSizeGuard = 5,
};

// Environment variable holding the default --solver-cmd template.
inline constexpr const char* kSolverEnv = "PMSCHED_SOLVER";

struct RunReport {
  std::string command;
  std::string digest;  // "n=.. m=.. sum_p=.. p_max=.."
  std::vector<std::pair<std::string, double>> timings_ms;
  std::vector<std::string> outputs;
  std::vector<std::pair<std::string, std::string>> results;

  void print(std::ostream& out) const;
  const std::string* result(const std::string& key) const;
};

std::string instance_digest(const Instance& inst);

// Entry point shared by the executable and the tests. `args` excludes the
// program name. The report of the last successful command is stored in
// `report` when non-null.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        RunReport* report = nullptr);

}  // namespace pmsched::cli
