#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minent/matrix.hpp"

namespace minent {

struct CheckConfig {
  std::string check_id;
  long trials = 0;             // <= 0 selects the registry default
  uint64_t seed = 0;           // 0 selects the registry default
  double tolerance = -1.0;     // < 0 selects the registry default
  std::vector<std::vector<int>> dims;  // empty selects the registry default
  std::vector<double> epsilons;
  std::vector<double> alphas;
  bool negate = false;  // debug self-test: swap lhs/rhs on every row
};

struct TrialRecord {
  long trial = 0;
  uint64_t seed = 0;
  std::string params;  // semicolon-separated key=value pairs
  std::string digest;  // input digest, "-" when the input is structural
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs; pass iff slack >= -tolerance
  bool pass = true;
  std::string state_json;  // offending input, only set on failing rows
};

struct VerificationReport {
  std::string check_id;
  std::string claim;
  bool bound_mode = false;  // some rows use certified bound directions
  long trials = 0;
  long rows = 0;
  long failures = 0;
  double min_slack = 0.0;
  double tolerance = 0.0;
  uint64_t seed = 0;
  double runtime_seconds = 0.0;
  std::vector<TrialRecord> records;
};

struct CheckInfo {
  std::string id;
  std::string claim;
  bool bound_mode;
};

std::vector<CheckInfo> registered_checks();

// Deterministic given cfg: trial i draws from derive_seed(seed, i).
VerificationReport run_check(const CheckConfig& cfg);

struct SuiteResult {
  std::vector<VerificationReport> reports;
  long total_rows = 0;
  long total_failures = 0;
  int exit_code = 0;  // 0 clean, 1 violations
  std::string warning;
};

// config_json: "" runs every registered check with defaults; "{}" runs
// nothing (warning + success); otherwise a JSON object mapping check_id to
// {trials, seed, tolerance, dims, epsilons, alphas, negate}. Writes
// report.csv and summary.json into out_dir. Malformed configs throw
// std::invalid_argument (usage error).
SuiteResult run_suite(const std::string& config_json, const std::string& out_dir);

}  // namespace minent
