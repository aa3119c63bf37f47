#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "fbmsig_cli/table.hpp"

namespace fbmsig::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kToleranceFailure = 3,
};

/// Option values keyed by long flag name, after flags and config file have
/// been merged. Missing keys fall back to per-command defaults.
class Settings {
 public:
  void set(std::string key, std::string value) { values_[std::move(key)] = std::move(value); }
  bool has(std::string_view key) const { return values_.find(key) != values_.end(); }
  std::string get(std::string_view key, std::string_view fallback) const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

struct CommandResult {
  Report report;
  int exit_code = kSuccess;
};

/// Exact expected coefficients with the decay bound columns.
CommandResult cmd_expected_sig(const Settings& s);
/// Expected coefficients of the m-cell piecewise-linear interpolation.
CommandResult cmd_approx_sig(const Settings& s);
/// Gaps per m, fitted log-log slope and the coefficient bound check.
CommandResult cmd_convergence(const Settings& s);
CommandResult cmd_cubature_verify(const Settings& s);
CommandResult cmd_cubature_solve(const Settings& s);
/// Cubature against Monte Carlo on a built-in test problem.
CommandResult cmd_sde_compare(const Settings& s);
/// Series constants and error-bound shapes.
CommandResult cmd_bounds(const Settings& s);

}  // namespace fbmsig::cli
