#pragma once

// Verification suites and their report. Each check is either a claim about
// the mathematics (a failure is exit 1) or an internal consistency check of
// the implementation (a failure is exit 2).

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "twistkl/app/pipeline.hpp"

namespace twistkl {

enum class CheckKind { Claim, Internal };
enum class CheckStatus { Pass, Fail, Skipped };

struct CheckRecord {
  std::string suite;
  std::string id;         // e.g. "hecke.r_product"
  std::string statement;  // the identity in words
  CheckKind kind = CheckKind::Claim;
  CheckStatus status = CheckStatus::Pass;
  std::size_t checked = 0;
  std::string detail;     // first counterexample or skip reason
};

struct VerifyReport {
  std::string system;
  std::vector<std::string> suites;
  std::vector<CheckRecord> checks;

  /// 0 all pass, 1 a claim failed, 2 an internal check failed.
  int exit_code() const;
  std::string text() const;
  nlohmann::json json() const;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"hecke", "cells", "reps", "oracle", "all"};
  return names;
}

/// Runs the named suite ("all" runs every suite; the oracle suite is skipped
/// under "all" when no oracle is configured). Throws ConfigError for an
/// unknown suite or an explicit oracle run without an oracle block.
VerifyReport run_verify(Pipeline& p, const std::string& suite);

}  // namespace twistkl
