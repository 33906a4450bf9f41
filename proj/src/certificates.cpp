// SPDX-License-Identifier: Apache-2.0
#include "edgemp/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "edgemp/errors.hpp"

namespace edgemp {

nlohmann::json CertificateReport::to_json() const {
  return {{"graph", graph},
          {"K", K},
          {"S", S},
          {"T", rounds},
          {"F", F},
          {"I_F", fixed},
          {"M", distinct_outputs},
          {"bound", bound},
          {"completions_enumerated", completions_enumerated},
          {"completions_total", completions_total},
          {"fixed_candidates", fixed_candidates},
          {"budget", budget},
          {"exhaustive", exhaustive}};
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_power(std::uint64_t base, std::size_t exponent) {
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > kSaturated / base) return kSaturated;
    result *= base;
  }
  return result;
}

// Writes the digits of `index` in base k onto `positions` of `input`,
// least significant digit first.
void decode_index(std::uint64_t index, std::size_t k, const EdgeSet& positions, EdgeInput& input) {
  for (EdgeId e : positions) {
    input[e] = static_cast<Symbol>(index % k);
    index /= k;
  }
}

using OutputSet = std::set<std::vector<bool>>;

void enumerate_range(const TaskEvaluator& task, EdgeInput input, const EdgeSet& free_edges,
                     std::size_t k, const VertexSet& S, std::uint64_t lo, std::uint64_t hi,
                     OutputSet& out) {
  std::vector<bool> restricted(S.size());
  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    decode_index(idx, k, free_edges, input);
    const VertexOutputs y = task(input);
    for (std::size_t s = 0; s < S.size(); ++s) restricted[s] = y.at(S[s]);
    out.insert(restricted);
  }
}

OutputSet count_completions(const TaskEvaluator& task, const EdgeInput& base, const EdgeSet& free_edges,
                            std::size_t k, const VertexSet& S, std::uint64_t count, std::size_t jobs) {
  jobs = std::max<std::size_t>(1, std::min<std::uint64_t>(jobs, count));
  std::vector<OutputSet> partial(jobs);
  if (jobs == 1) {
    enumerate_range(task, base, free_edges, k, S, 0, count, partial[0]);
    return std::move(partial[0]);
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    const std::uint64_t lo = count * w / jobs;
    const std::uint64_t hi = count * (w + 1) / jobs;
    workers.emplace_back([&, w, lo, hi] {
      try {
        enumerate_range(task, base, free_edges, k, S, lo, hi, partial[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  OutputSet merged;
  for (auto& p : partial) merged.merge(p);
  return merged;
}

}  // namespace

CertificateReport certified_lower_bound(const Graph& g, const TaskEvaluator& task, const VertexSet& K,
                                        const VertexSet& S, std::size_t rounds,
                                        std::size_t alphabet_size,
                                        const std::optional<std::vector<Symbol>>& fixed,
                                        const CertificateOptions& options) {
  if (K.empty()) throw InvalidParameter("the bottleneck set K must be non-empty");
  if (rounds == 0) throw InvalidParameter("rounds must be at least 1");
  if (alphabet_size == 0) throw InvalidParameter("alphabet must be non-empty");
  const VertexSet k_set = normalize_set(K, g.num_vertices(), "K");
  const VertexSet s_set = normalize_set(S, g.num_vertices(), "S");

  CertificateReport report;
  report.graph = to_json(g);
  report.K = k_set;
  report.S = s_set;
  report.rounds = rounds;
  report.budget = options.budget;
  report.F = light_cone_edges(g, k_set, s_set, rounds - 1);

  EdgeSet free_edges;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (!std::binary_search(report.F.begin(), report.F.end(), e)) free_edges.push_back(e);
  report.completions_total = saturating_power(alphabet_size, free_edges.size());

  if (fixed) {
    if (fixed->size() != report.F.size())
      throw ShapeMismatch("I_F has " + std::to_string(fixed->size()) + " symbols, F has " +
                          std::to_string(report.F.size()) + " edges");
    for (Symbol s : *fixed)
      if (s >= alphabet_size) throw InvalidParameter("I_F symbol outside the alphabet");
    report.fixed_candidates = 1;
  } else {
    report.fixed_candidates = saturating_power(alphabet_size, report.F.size());
  }

  std::uint64_t remaining = options.budget;
  bool complete = true;
  EdgeInput input(g.num_edges(), 0);
  for (std::uint64_t candidate = 0; candidate < report.fixed_candidates; ++candidate) {
    if (remaining == 0) {
      complete = false;
      break;
    }
    std::vector<Symbol> current(report.F.size());
    if (fixed) {
      current = *fixed;
    } else {
      std::uint64_t idx = candidate;
      for (auto& s : current) {
        s = static_cast<Symbol>(idx % alphabet_size);
        idx /= alphabet_size;
      }
    }
    for (std::size_t i = 0; i < report.F.size(); ++i) input[report.F[i]] = current[i];
    const std::uint64_t count = std::min(report.completions_total, remaining);
    if (count < report.completions_total) complete = false;
    const OutputSet outputs =
        count_completions(task, input, free_edges, alphabet_size, s_set, count, options.jobs);
    remaining -= count;
    report.completions_enumerated += count;
    if (candidate == 0 || outputs.size() > report.distinct_outputs) {
      report.distinct_outputs = outputs.size();
      report.fixed = current;
    }
  }
  report.exhaustive = complete;
  report.bound = report.distinct_outputs == 0
                     ? 0.0
                     : std::log2(static_cast<double>(report.distinct_outputs)) /
                           static_cast<double>(k_set.size());
  return report;
}

}  // namespace edgemp
