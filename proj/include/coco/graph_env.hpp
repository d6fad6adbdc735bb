#ifndef COCO_GRAPH_ENV_HPP
#define COCO_GRAPH_ENV_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coco/decision_set.hpp"
#include "coco/rng.hpp"
#include "coco/types.hpp"

namespace coco {

// Directed graph with per-edge base latency (ms) and bandwidth (Mbps).
// Edges are identified by their index in `edges`.
struct Graph {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;  // (tail, head), each pair unique
  Vec base_latency;
  Vec base_bandwidth;
  int source = 0;
  int destination = 0;

  int edge_count() const { return static_cast<int>(edges.size()); }
};

// One round's latency/bandwidth vectors and bandwidth floor. The induced
// cost is f_t(x) = <latency, x> and the constraint g_t(x) = beta - <bandwidth, x>.
struct RoundFunctions {
  Vec latency;
  Vec bandwidth;
  double beta = 0.0;
};

struct PathEnvInstance {
  Graph graph;
  std::vector<RoundFunctions> rounds;
  // per-round multiplicative scale draws, kept for bit-exact export/replay
  std::vector<Vec> latency_scales;
  std::vector<Vec> bandwidth_scales;
};

struct GenerateOptions {
  double latency_scale_lo = 0.5;
  double latency_scale_hi = 1.5;
  double bandwidth_scale_lo = 0.8;
  double bandwidth_scale_hi = 1.2;
  // base draws are log-uniform over these ranges
  double base_latency_lo = 1.0;
  double base_latency_hi = 100.0;
  double base_bandwidth_lo = 10.0;
  double base_bandwidth_hi = 1000.0;
  // congestion at the hub: star edges carry this multiple of their drawn
  // base latency, so the short hub route is the reliable-but-slow default
  double hub_latency_factor = 4.0;
  // bandwidth floor as a fraction of the best single-path bottleneck
  double rho = 0.8;
};

// Hub-centered random instance: a star through a hub node plus m - (n-1)
// uniformly random extra edges, base attributes drawn log-uniform, per-round
// attributes scaled by independent uniform draws. Deterministic given the
// seed. Throws GenerationFailure if no usable graph emerges in 100 attempts.
PathEnvInstance generate_instance(std::uint64_t seed, int n, int m, std::int64_t horizon,
                                  const GenerateOptions& options = {});

// Minimum-total-weight source->destination path under strictly positive edge
// weights; ties are broken toward the smallest lexicographic edge-index
// sequence. Returns edge indices in traversal order.
std::vector<int> dijkstra(const Graph& graph, const Vec& weights);

// Maximum-bottleneck path value: max over s-d paths of the minimum edge
// weight along the path, together with one attaining path.
std::pair<double, std::vector<int>> widest_path(const Graph& graph, const Vec& weights);

// Fractional unit flows from source to destination: the convex hull of
// s-d path indicator vectors. The linear minimization oracle is Dijkstra on
// shifted weights; projection is Frank-Wolfe with away steps, stopped at
// duality gap <= tol^2.
class FlowPolytope final : public DecisionSet {
 public:
  explicit FlowPolytope(Graph graph);

  int dimension() const override { return graph_.edge_count(); }
  double diameter() const override { return diameter_; }
  std::string kind() const override { return "unit-flow-polytope"; }
  Vec project(const Vec& y, double tol) const override;
  bool contains(const Vec& x, double tol) const override;
  Vec linear_minimizer(const Vec& c) const override;
  Vec sample(Rng& rng) const override;
  std::pair<Vec, Vec> bounding_box() const override {
    return {Vec(Vec::Zero(graph_.edge_count())), Vec(Vec::Ones(graph_.edge_count()))};
  }
  double default_tol() const override { return 1e-3; }

  const Graph& graph() const { return graph_; }

  // Iteration budget for the projection loop; 0 means the default
  // max(1000, 10 |E| / tol).
  void set_iteration_cap(std::int64_t cap) { iteration_cap_ = cap; }
  std::int64_t iteration_cap() const { return iteration_cap_; }

 private:
  Graph graph_;
  std::vector<int> topo_order_;  // empty when the graph has a cycle
  double diameter_;
  std::int64_t iteration_cap_ = 0;
};

Vec project_flow(const FlowPolytope& polytope, const Vec& y, double tol);

// Greedy path extraction: repeatedly trace an s-d path through edges with
// residual flow > tol and subtract the bottleneck. At most |E| paths; weights
// are positive and sum to 1 within tol; the weighted indicator sum
// reconstructs x within l_inf error tol.
std::vector<std::pair<std::vector<int>, double>> flow_decompose(const Graph& graph, const Vec& x,
                                                                double tol);

// Categorical draw from a decomposition whose weights sum to 1 within 1e-7.
const std::vector<int>& sample_route(
    const std::vector<std::pair<std::vector<int>, double>>& decomposition, Rng& rng);

// Plain-text persistence. The graph file has a `n m s d` header followed by
// one `tail head base_latency base_bandwidth` line per edge; the rounds file
// carries beta and the per-edge scale factors for every round so an instance
// replays bit-exactly.
void save_instance(const PathEnvInstance& instance, const std::string& graph_path,
                   const std::string& rounds_path);
PathEnvInstance load_instance(const std::string& graph_path, const std::string& rounds_path);

}  // namespace coco

#endif  // COCO_GRAPH_ENV_HPP
