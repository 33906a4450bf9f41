// SPDX-License-Identifier: Apache-2.0
// Runs every acceptance criterion and prints one PASS/FAIL line for each.

#include <cstdio>
#include <map>
#include <string>

#include "edgemp/verify.hpp"

int main() {
  using namespace edgemp;
  // Wall-clock limits in seconds for the criteria that state one.
  const std::map<std::string, double> limits = {{"map_protocol", 60.0}, {"certificate", 60.0}, {"bp", 120.0}};
  int failures = 0;
  int index = 0;
  for (const std::string& name : suite_names()) {
    ++index;
    SuiteResult r = run_suite(name);
    if (auto it = limits.find(name); it != limits.end() && r.seconds > it->second) {
      r.passed = false;
      r.detail = "took " + std::to_string(r.seconds) + "s, limit " + std::to_string(it->second) + "s; " + r.detail;
    }
    failures += !r.passed;
    std::printf("%s  [%2d] %-20s %-50s %.2fs  %s\n", r.passed ? "PASS" : "FAIL", index, r.name.c_str(),
                r.title.c_str(), r.seconds, r.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
