// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgemp/graph.hpp"
#include "edgemp/rng.hpp"

namespace edgemp {

/// One feature vector per node or per edge id.
using FeatureMap = std::vector<std::vector<double>>;

/// Residual GCN layers h <- h + sigma(W * mean(neighbor h)), all of width d.
struct GcnStack {
  std::size_t width = 0;
  /// One row-major width x width matrix per layer.
  std::vector<std::vector<double>> weights;
  std::string sigma = "tanh";

  std::size_t depth() const { return weights.size(); }
  void validate() const;

  static GcnStack zeros(std::size_t depth, std::size_t width);
  /// Entries drawn i.i.d. N(0, weight_std^2).
  static GcnStack random(std::size_t depth, std::size_t width, double weight_std, Rng& rng);

  nlohmann::json to_json() const;
  static GcnStack from_json(const nlohmann::json& j);
};

/// Node layers with neighbors N_G(v) minus v. An empty neighborhood has
/// mean zero.
FeatureMap node_gcn_forward(const Graph& g, const GcnStack& stack, const FeatureMap& h0);

/// Edge layers with neighbors M_G(e) minus e, in ascending edge id order.
FeatureMap edge_gcn_forward(const Graph& g, const GcnStack& stack, const FeatureMap& h0);

/// Edge (u, v), u < v, gets the concatenation (x_u, x_v).
FeatureMap init_edge_features_from_nodes(const Graph& g, const FeatureMap& node_features);

/// Root mean squared error over every coordinate of every entry.
double rmse(std::span<const FeatureMap> predictions, std::span<const FeatureMap> labels);
double rmse(const FeatureMap& predictions, const FeatureMap& labels);

/// Star-graph planted-label dataset: one weight stack of the given depth
/// and width drawn once per dataset, x_i ~ N(0, I) per leaf and sample,
/// and labels y_i = final edge embedding of {0, i} after the planted edge
/// GCN starting from h0({0, i}) = x_i. Weight std defaults to
/// 1/sqrt(width).
struct StarDatasetParams {
  std::size_t n_leaves = 16;
  std::size_t depth = 1;
  std::size_t width = 10;
  std::size_t n_samples = 100;
  std::uint64_t seed = 0;
  /// Negative means 1/sqrt(width).
  double weight_std = -1.0;
};

nlohmann::json generate_star_dataset(const StarDatasetParams& params);

}  // namespace edgemp
