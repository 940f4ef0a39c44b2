#pragma once

// Seeded self-check of the library: route agreement between the independent IP
// computations, channel algebra, the IP axioms and the kink predictors.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace xip {

struct VerifyOptions {
  std::uint64_t seed = 0;
  int samples = 1000;
  // Test hook: evaluates the Bell-diagonal norm formula with the determinant sign
  // flipped, which the route-agreement suite must reject.
  bool canary = false;
};

struct SuiteResult {
  std::string name;
  int checks = 0;
  double worst = 0.0;      // largest observed discrepancy (or violation)
  double tolerance = 0.0;
  bool passed = true;
  std::string note;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  double seconds = 0.0;

  bool passed() const;
};

VerifyReport run_verification(const VerifyOptions& opts = {});
void print_report(std::ostream& out, const VerifyReport& report);

}  // namespace xip
