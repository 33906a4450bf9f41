// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <json.hpp>

#include "edgemp/graph.hpp"
#include "edgemp/protocol.hpp"

namespace edgemp {

/// A task g: alphabet^E -> {0,1}^V given as a function of the full input.
using TaskEvaluator = std::function<VertexOutputs(const EdgeInput&)>;

/// Outcome of the light-cone counting argument: with K a vertex bottleneck
/// and F the edges whose inputs can reach S in T-1 hops without crossing K,
/// M distinct values of g restricted to S over completions of a fixed I_F
/// force T * B >= log2(M) / |K| for any node protocol computing g.
struct CertificateReport {
  nlohmann::json graph;
  VertexSet K;
  VertexSet S;
  std::size_t rounds = 0;
  EdgeSet F;
  /// Symbols on F (aligned with F) for the best I_F found.
  std::vector<Symbol> fixed;
  std::uint64_t distinct_outputs = 0;
  double bound = 0.0;
  std::uint64_t completions_enumerated = 0;
  std::uint64_t completions_total = 0;
  std::uint64_t fixed_candidates = 1;
  std::uint64_t budget = 0;
  /// True when every completion of every candidate I_F was evaluated, so
  /// the bound is certified. False means a partial enumeration; the value
  /// is then a lower estimate.
  bool exhaustive = false;

  nlohmann::json to_json() const;
};

struct CertificateOptions {
  /// Maximum number of task evaluations.
  std::uint64_t budget = std::uint64_t{1} << 24;
  std::size_t jobs = 1;
};

/// Counts distinct g_S(I_F, I_Fbar) over all completions I_Fbar.
/// With `fixed` empty, searches over every I_F and keeps the maximum
/// (subject to the budget). Throws InvalidParameter when K is empty or
/// intersects S, or when rounds is 0.
CertificateReport certified_lower_bound(const Graph& g, const TaskEvaluator& task, const VertexSet& K,
                                        const VertexSet& S, std::size_t rounds,
                                        std::size_t alphabet_size,
                                        const std::optional<std::vector<Symbol>>& fixed,
                                        const CertificateOptions& options = {});

}  // namespace edgemp
