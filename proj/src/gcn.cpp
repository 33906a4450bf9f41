// SPDX-License-Identifier: Apache-2.0
#include "edgemp/gcn.hpp"

#include <cmath>

#include "edgemp/errors.hpp"

namespace edgemp {

void GcnStack::validate() const {
  if (width == 0) throw InvalidParameter("GCN width must be positive");
  if (sigma != "tanh") throw InvalidParameter("unsupported nonlinearity '" + sigma + "'");
  for (const auto& w : weights) {
    if (w.size() != width * width) throw ShapeMismatch("GCN weight matrix is not width x width");
    for (double v : w)
      if (!std::isfinite(v)) throw InvalidParameter("non-finite GCN weight");
  }
}

GcnStack GcnStack::zeros(std::size_t depth, std::size_t width) {
  GcnStack s;
  s.width = width;
  s.weights.assign(depth, std::vector<double>(width * width, 0.0));
  return s;
}

GcnStack GcnStack::random(std::size_t depth, std::size_t width, double weight_std, Rng& rng) {
  GcnStack s = zeros(depth, width);
  for (auto& w : s.weights)
    for (double& v : w) v = weight_std * rng.normal();
  return s;
}

nlohmann::json GcnStack::to_json() const {
  return {{"depth", depth()}, {"width", width}, {"sigma", sigma}, {"weights", weights}};
}

GcnStack GcnStack::from_json(const nlohmann::json& j) {
  try {
    GcnStack s;
    s.width = j.at("width").get<std::size_t>();
    s.sigma = j.value("sigma", std::string("tanh"));
    s.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("bad GCN stack JSON: ") + e.what());
  }
}

namespace {

void check_features(const FeatureMap& h, std::size_t count, std::size_t width) {
  if (h.size() != count) throw ShapeMismatch("feature map has the wrong number of entries");
  for (const auto& row : h) {
    if (row.size() != width) throw ShapeMismatch("feature width does not match the stack");
    for (double v : row)
      if (!std::isfinite(v)) throw InvalidParameter("non-finite feature");
  }
}

// Shared residual layer loop; `neighbors(i)` lists the ids averaged for
// entry i in the order they are summed.
FeatureMap forward(const GcnStack& stack, const FeatureMap& h0,
                   const std::function<std::vector<std::uint32_t>(std::size_t)>& neighbors) {
  stack.validate();
  check_features(h0, h0.size(), stack.width);
  const std::size_t d = stack.width;
  std::vector<std::vector<std::uint32_t>> nbrs(h0.size());
  for (std::size_t i = 0; i < h0.size(); ++i) nbrs[i] = neighbors(i);

  FeatureMap h = h0;
  std::vector<double> mean(d);
  for (const auto& w : stack.weights) {
    FeatureMap next = h;
    for (std::size_t i = 0; i < h.size(); ++i) {
      std::fill(mean.begin(), mean.end(), 0.0);
      if (!nbrs[i].empty()) {
        for (auto k : nbrs[i])
          for (std::size_t c = 0; c < d; ++c) mean[c] += h[k][c];
        const double count = static_cast<double>(nbrs[i].size());
        for (double& m : mean) m /= count;
      }
      for (std::size_t r = 0; r < d; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < d; ++c) acc += w[r * d + c] * mean[c];
        next[i][r] += std::tanh(acc);
      }
    }
    h = std::move(next);
  }
  return h;
}

}  // namespace

FeatureMap node_gcn_forward(const Graph& g, const GcnStack& stack, const FeatureMap& h0) {
  if (h0.size() != g.num_vertices()) throw ShapeMismatch("need one feature vector per vertex");
  return forward(stack, h0, [&](std::size_t v) {
    auto n = g.neighbors(static_cast<VertexId>(v));
    return std::vector<std::uint32_t>(n.begin(), n.end());
  });
}

FeatureMap edge_gcn_forward(const Graph& g, const GcnStack& stack, const FeatureMap& h0) {
  if (h0.size() != g.num_edges()) throw ShapeMismatch("need one feature vector per edge");
  return forward(stack, h0, [&](std::size_t e) {
    std::vector<std::uint32_t> out;
    for (EdgeId f : g.edge_neighborhood(static_cast<EdgeId>(e)))
      if (f != e) out.push_back(f);
    return out;
  });
}

FeatureMap init_edge_features_from_nodes(const Graph& g, const FeatureMap& node_features) {
  if (node_features.size() != g.num_vertices()) throw ShapeMismatch("need one feature vector per vertex");
  FeatureMap out;
  out.reserve(g.num_edges());
  for (const Edge& e : g.edges()) {
    std::vector<double> row = node_features[e.u];
    if (node_features[e.v].size() != row.size()) throw ShapeMismatch("node features differ in width");
    row.insert(row.end(), node_features[e.v].begin(), node_features[e.v].end());
    out.push_back(std::move(row));
  }
  return out;
}

double rmse(std::span<const FeatureMap> predictions, std::span<const FeatureMap> labels) {
  if (predictions.size() != labels.size()) throw ShapeMismatch("prediction and label counts differ");
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t s = 0; s < predictions.size(); ++s) {
    if (predictions[s].size() != labels[s].size()) throw ShapeMismatch("feature maps differ in size");
    for (std::size_t i = 0; i < predictions[s].size(); ++i) {
      if (predictions[s][i].size() != labels[s][i].size()) throw ShapeMismatch("feature widths differ");
      for (std::size_t c = 0; c < predictions[s][i].size(); ++c) {
        const double diff = predictions[s][i][c] - labels[s][i][c];
        sum += diff * diff;
        ++count;
      }
    }
  }
  if (count == 0) throw ShapeMismatch("rmse of empty data");
  return std::sqrt(sum / static_cast<double>(count));
}

double rmse(const FeatureMap& predictions, const FeatureMap& labels) {
  return rmse(std::span<const FeatureMap>(&predictions, 1), std::span<const FeatureMap>(&labels, 1));
}

nlohmann::json generate_star_dataset(const StarDatasetParams& params) {
  if (params.n_leaves == 0) throw InvalidParameter("star needs at least one leaf");
  if (params.width == 0) throw InvalidParameter("width must be positive");
  const double weight_std =
      params.weight_std < 0 ? 1.0 / std::sqrt(static_cast<double>(params.width)) : params.weight_std;
  const Graph g = build_star(params.n_leaves);

  // Stream 0 draws the planted weights, stream k+1 draws sample k.
  Rng weight_rng = Rng::stream(params.seed, 0);
  const GcnStack stack = GcnStack::random(params.depth, params.width, weight_std, weight_rng);

  nlohmann::json samples = nlohmann::json::array();
  for (std::size_t k = 0; k < params.n_samples; ++k) {
    Rng rng = Rng::stream(params.seed, k + 1);
    FeatureMap x(params.n_leaves, std::vector<double>(params.width));
    for (auto& row : x)
      for (double& v : row) v = rng.normal();
    // Edge {0, i} has id i - 1, so leaf features line up with edge ids.
    const FeatureMap y = edge_gcn_forward(g, stack, x);
    samples.push_back({{"x", x}, {"y", y}});
  }
  nlohmann::json planted = stack.to_json();
  planted["weight_std"] = weight_std;
  return {{"n_leaves", params.n_leaves},
          {"planted", std::move(planted)},
          {"seed", params.seed},
          {"samples", std::move(samples)}};
}

}  // namespace edgemp
