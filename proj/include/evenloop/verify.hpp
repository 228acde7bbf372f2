#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace evenloop {

struct CheckResult {
  std::string name;
  double value = 0;
  double threshold = 0;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool pass() const;
};

struct VerifyOptions {
  int max_edges = 10;  // corpus filter on |E| + #sites
  std::uint64_t seed = 0;
  int samples = 50000;
  int trials = 20;
};

// Suites: coupling, order, duality, uniformity.
std::vector<std::string> verify_suite_names();
SuiteReport run_verify_suite(std::string_view suite, const VerifyOptions& options);
nlohmann::json to_json(const SuiteReport& r);

}  // namespace evenloop
