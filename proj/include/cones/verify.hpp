#pragma once

#include <string>
#include <vector>

namespace cones {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  bool disable_jump = false;  // injects the fault of a Frugal without its jump branch
};

/// Runs one invariant suite ("geometry", "solvers", "algorithms", "instances",
/// "oracle") or "all". Throws ParameterError on an unknown suite.
std::vector<CheckResult> run_verify(const std::string& suite, const VerifyOptions& options = {});

const std::vector<std::string>& verify_suites();

}  // namespace cones
