#pragma once

#include <string>
#include <vector>

#include "zipring/taut_ring.hpp"
#include "zipring/zip_oracle.hpp"

namespace zipring {

struct CriterionResult {
  int number = 0;
  std::string name;
  std::string module;
  bool passed = false;
  double seconds = 0.0;
  std::string detail;  // names the violated invariant on failure
};

struct SelftestReport {
  std::string profile;
  std::vector<CriterionResult> results;
  bool all_passed = false;

  // Deterministic: timings are not included.
  std::string to_json_string() const;
};

// quick: small genus (<= 3), p = 2 only; full: the entire suite.
// cache_dir, when nonempty, is used for the enumeration results.
SelftestReport run_selftest(const std::string& profile, const std::string& cache_dir = "",
                            const OracleLimits& limits = {});

// Presentation with the degree-2 relation zeroed out, for the negative
// control: dimension counting must detect the corruption.
Presentation corrupted_presentation(int g);

}  // namespace zipring
