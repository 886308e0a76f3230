#pragma once

// Verification pipeline with exit codes, and the reproduction suite shared by
// the `capgeom suite` command and the acceptance test.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "capgeom/io.hpp"

namespace capgeom {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 2,      // bad parameters, unreadable or unwritable files
  kExitNotCap = 3,       // collinear triple or duplicate point
  kExitIncomplete = 4,   // some external point not covered exactly once
  kExitCodeMismatch = 5  // code parameters differ from [N, N-r, 4]_q, radius 2
};

struct RunConfig {
  std::uint32_t p = 3;
  unsigned h = 1;
  unsigned n = 1;
  std::optional<Code> alpha;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::uint64_t max_space = 2'000'000;
};

/// Throws InvalidArgument / QTooSmall / NonPrime / TooLarge before any work is done.
Tower validated_tower(const RunConfig& cfg);

enum class VerifyModes : std::uint8_t { Auto, Exhaustive, Certificate, Both };

struct VerifyOptions {
  VerifyModes modes = VerifyModes::Auto;
  unsigned threads = 1;
  std::uint64_t max_space = 2'000'000;
  bool code = true;
};

struct VerifyResult {
  CapReport cap;
  std::optional<CompletenessReport> exhaustive;
  std::optional<CompletenessReport> certificate;
  /// Both modes ran and assigned the same bisecant to every external point.
  std::optional<bool> modes_agree;
  std::optional<CodeReport> code;
  std::vector<std::string> notes;
  int exit_code = kExitOk;
};

/// Cap check first (exit 3), then completeness (exit 4), then code parameters (exit 5).
/// Later stages are skipped once one fails.
VerifyResult verify_cap_set(const Tower& t, const CapSet& cap, const VerifyOptions& opts = {});

Json to_json(const VerifyResult& r);
void print_summary(std::ostream& os, const VerifyResult& r);

struct SuiteOptions {
  bool include_4_2 = false;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  /// Receives one line per criterion as soon as it finishes.
  std::ostream* log = nullptr;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0;
  std::string detail;
  Json data;
};

struct SuiteResult {
  std::vector<CriterionResult> criteria;
  double seconds = 0;

  bool ok() const noexcept;
};

SuiteResult run_suite(const SuiteOptions& opts);

std::string format_criterion(const CriterionResult& c);
Json to_json(const SuiteResult& r);

}  // namespace capgeom
