#pragma once

// Registry of seeded property suites: each suite stresses one identity or
// theorem-backed invariant and reports its worst residual. Reports are
// deterministic functions of (seed, samples) with no clocks or machine state.

#include <cstdint>
#include <string>
#include <vector>

namespace hyperpack {

struct SuiteResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;   // worst residual or margin observed (suite-specific)
  std::string detail;   // counts and context, stable across identical runs
};

std::vector<SuiteResult> run_verify_suites(std::uint64_t seed, int samples);

// JSON document for the suite results (deterministic bytes).
std::string verify_report_json(const std::vector<SuiteResult>& results,
                               std::uint64_t seed, int samples);

// CSV (name,pass,worst_residual,detail) with 17-significant-digit floats.
std::string verify_report_csv(const std::vector<SuiteResult>& results);

}  // namespace hyperpack
