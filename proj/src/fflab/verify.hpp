#pragma once

#include <string>
#include <vector>

namespace fflab {

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
  double seconds = 0;
};

// "fast": q=3 n <= 5 and q=5 n <= 3, a few seconds. "full": larger n.
std::vector<CheckResult> run_verify(const std::string& level, int workers);
std::string verify_json(const std::string& level, const std::vector<CheckResult>& results);

}  // namespace fflab
