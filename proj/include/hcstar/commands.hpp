#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hcstar/report.hpp"
#include "hcstar/workspace.hpp"

namespace hcstar {

struct RunOptions {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int samples = 64;
  int parallel = 1;

  // Object selectors; empty means every applicable object, in declaration order.
  std::string category;
  std::string algebra;
  std::string ambient;
  std::string state;
  std::string bimodule;
  std::string intertwiner;
  std::string left;
  std::string right;
  std::vector<std::string> subalgebras;

  int q = 0;
  int p = 1;
  double beta = 1.0;
  std::vector<int> mode;
  std::vector<int> sizes;
  bool trivial_flow = false;
};

struct RunResult {
  Json report;
  int exit_code = 0;
  std::vector<std::string> summary;
};

const std::vector<std::string>& command_names();

/// Exit code 0 when every check passed, 1 when a check failed, 2 when a
/// target raised an error. Throws UnknownCommand.
RunResult run_command(const std::string& command, const Workspace& ws, const RunOptions& options);

}  // namespace hcstar
