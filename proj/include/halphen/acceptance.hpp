#pragma once

// The ten acceptance criteria, shared by the CLI and the acceptance test.

#include <functional>
#include <string>
#include <vector>

namespace halphen {

enum class AcceptanceMode {
  Fast,  // omega^3 crosscheck once per configuration
  Full,  // omega^3 crosscheck in every run
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// "PASS [n] title: detail (t s)".
std::string format_line(const CriterionResult& r);

/// Runs criteria in order; `on_result` is called as each one finishes.
/// Exceptions inside a criterion become a failing line.
std::vector<CriterionResult> run_acceptance(AcceptanceMode mode,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace halphen
