#ifndef VARIETAS_SELFTEST_HPP
#define VARIETAS_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "varietas/json_io.hpp"

namespace varietas {

struct SuiteResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  std::vector<std::string> failures; // first few, for diagnosis
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;
  bool ok() const;
  int total_passed() const;
  int total_failed() const;
};

/// Runs every property suite (one per module) with the given seed.
/// Deterministic: identical seeds give identical reports.
SelftestReport run_selftest(std::uint64_t seed);

Json selftest_report_to_json(const SelftestReport &r);

} // namespace varietas

#endif
