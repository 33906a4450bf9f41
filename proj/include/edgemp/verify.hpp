// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace edgemp {

/// Outcome of one verification suite.
struct SuiteResult {
  std::string name;
  std::string title;
  bool passed = false;
  /// Counts and measured values, or the first failure.
  std::string detail;
  double seconds = 0.0;

  nlohmann::json to_json() const;
};

struct VerifyOptions {
  std::uint64_t seed = 20240611;
  std::size_t jobs = 1;
  /// Restricts size-parameterized suites (map, certificate, counting) to
  /// this size instead of their default sizes.
  std::optional<std::size_t> m;
};

/// Suite names in acceptance order:
/// map_protocol, map_dp, certificate, counting, disjointness,
/// edge_simulation, symmetric_simulation, bp, gcn, reproducibility.
const std::vector<std::string>& suite_names();

/// Expands a user-facing selector into suite names: a suite name, "all",
/// or "map" (map_protocol and map_dp). Throws InvalidParameter otherwise.
std::vector<std::string> resolve_suites(const std::string& selector);

SuiteResult run_suite(const std::string& name, const VerifyOptions& options = {});

}  // namespace edgemp
