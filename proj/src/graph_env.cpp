#include "coco/graph_env.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

#include "coco/errors.hpp"

namespace coco {

namespace {

std::vector<std::vector<int>> out_edges_by_node(const Graph& graph) {
  std::vector<std::vector<int>> out(graph.node_count);
  for (int e = 0; e < graph.edge_count(); ++e) out[graph.edges[e].first].push_back(e);
  return out;  // edge indices ascend within each list
}

std::vector<std::vector<int>> in_edges_by_node(const Graph& graph) {
  std::vector<std::vector<int>> in(graph.node_count);
  for (int e = 0; e < graph.edge_count(); ++e) in[graph.edges[e].second].push_back(e);
  return in;
}

bool reachable(const Graph& graph) {
  auto out = out_edges_by_node(graph);
  std::vector<char> seen(graph.node_count, 0);
  std::queue<int> frontier;
  frontier.push(graph.source);
  seen[graph.source] = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int e : out[u]) {
      const int v = graph.edges[e].second;
      if (!seen[v]) {
        seen[v] = 1;
        frontier.push(v);
      }
    }
  }
  return seen[graph.destination] != 0;
}

// distances from every node to the destination under `weights`
std::vector<double> distances_to_destination(const Graph& graph, const Vec& weights) {
  auto in = in_edges_by_node(graph);
  std::vector<double> dist(graph.node_count, std::numeric_limits<double>::infinity());
  dist[graph.destination] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  pq.emplace(0.0, graph.destination);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (int e : in[v]) {
      const int u = graph.edges[e].first;
      const double cand = d + weights(e);
      if (cand < dist[u]) {
        dist[u] = cand;
        pq.emplace(cand, u);
      }
    }
  }
  return dist;
}

// Hub-centered acyclic graph: every edge points from a lower to a higher node
// index, so the flow polytope's linear minimization oracle is exact (a
// topological-order pass handles arbitrary weight signs).
Graph try_generate_graph(Rng& rng, int n, int m) {
  Graph graph;
  graph.node_count = n;
  graph.source = 0;
  graph.destination = n - 1;
  std::set<std::pair<int, int>> used;
  auto add_edge = [&](int u, int v) {
    graph.edges.emplace_back(u, v);
    used.insert({u, v});
  };
  if (n == 2) {
    add_edge(0, 1);
  } else {
    const int hub = n / 2;
    add_edge(graph.source, hub);
    add_edge(hub, graph.destination);
    for (int v = 1; v < n - 1; ++v) {
      if (v == hub) continue;
      if (v < hub)
        add_edge(v, hub);
      else
        add_edge(hub, v);
    }
  }
  // extra uniformly random forward edges
  int attempts = 0;
  const int extra_budget = 50 * m + 1000;
  while (graph.edge_count() < m) {
    if (++attempts > extra_budget)
      throw GenerationFailure("instance generation: could not place distinct random edges");
    int u = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
    int v = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (used.count({u, v})) continue;
    add_edge(u, v);
  }
  return graph;
}

}  // namespace

PathEnvInstance generate_instance(std::uint64_t seed, int n, int m, std::int64_t horizon,
                                  const GenerateOptions& options) {
  if (n < 2) throw InvalidInput("instance generation: need at least two nodes");
  if (m < n - 1) throw InvalidInput("instance generation: need at least n-1 edges");
  if (m > n * (n - 1) / 2)
    throw InvalidInput("instance generation: more edges than distinct forward pairs");
  if (horizon < 1) throw InvalidInput("instance generation: horizon must be at least 1");
  if (options.rho <= 0.0 || options.rho > 1.0)
    throw InvalidInput("instance generation: rho must lie in (0, 1]");

  Rng root(Rng::mix(seed));
  PathEnvInstance instance;
  bool built = false;
  for (int attempt = 0; attempt < 100 && !built; ++attempt) {
    Rng rng = root.spawn(static_cast<std::uint64_t>(attempt));
    Graph graph = try_generate_graph(rng, n, m);
    if (!reachable(graph)) continue;
    const int star_edges = n - 1;  // the generator emits the star first
    graph.base_latency = Vec(m);
    graph.base_bandwidth = Vec(m);
    for (int e = 0; e < m; ++e) {
      graph.base_latency(e) = rng.log_uniform(options.base_latency_lo, options.base_latency_hi);
      if (e < star_edges) graph.base_latency(e) *= options.hub_latency_factor;
    }
    for (int e = 0; e < m; ++e)
      graph.base_bandwidth(e) =
          rng.log_uniform(options.base_bandwidth_lo, options.base_bandwidth_hi);
    instance.graph = std::move(graph);
    built = true;

    // bandwidth floor: a fraction of the best single-path bottleneck, lowered
    // per round if needed so the widest path stays feasible every round
    auto [bottleneck, widest] = widest_path(instance.graph, instance.graph.base_bandwidth);
    const double beta_base = options.rho * bottleneck;

    instance.rounds.reserve(static_cast<size_t>(horizon));
    instance.latency_scales.reserve(static_cast<size_t>(horizon));
    instance.bandwidth_scales.reserve(static_cast<size_t>(horizon));
    for (std::int64_t t = 0; t < horizon; ++t) {
      Vec lat_scale(m), bw_scale(m);
      for (int e = 0; e < m; ++e)
        lat_scale(e) = rng.uniform(options.latency_scale_lo, options.latency_scale_hi);
      for (int e = 0; e < m; ++e)
        bw_scale(e) = rng.uniform(options.bandwidth_scale_lo, options.bandwidth_scale_hi);
      RoundFunctions round;
      round.latency = instance.graph.base_latency.cwiseProduct(lat_scale);
      round.bandwidth = instance.graph.base_bandwidth.cwiseProduct(bw_scale);
      double widest_bw = 0.0;
      for (int e : widest) widest_bw += round.bandwidth(e);
      round.beta = std::min(beta_base, widest_bw);
      instance.rounds.push_back(std::move(round));
      instance.latency_scales.push_back(std::move(lat_scale));
      instance.bandwidth_scales.push_back(std::move(bw_scale));
    }
  }
  if (!built) throw GenerationFailure("instance generation: no reachable graph in 100 attempts");
  return instance;
}

std::vector<int> dijkstra(const Graph& graph, const Vec& weights) {
  if (static_cast<int>(weights.size()) != graph.edge_count())
    throw InvalidInput("dijkstra: weight vector has the wrong dimension");
  if (weights.size() > 0 && weights.minCoeff() <= 0.0)
    throw InvalidInput("dijkstra: weights must be strictly positive");

  auto out = out_edges_by_node(graph);
  const int n = graph.node_count;
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> parent_edge(n, -1);
  dist[graph.source] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  pq.emplace(0.0, graph.source);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (int e : out[u]) {
      const int v = graph.edges[e].second;
      const double cand = d + weights(e);
      if (cand < dist[v]) {
        dist[v] = cand;
        parent_edge[v] = e;
        pq.emplace(cand, v);
      }
    }
  }
  if (!std::isfinite(dist[graph.destination]))
    throw NoPath("dijkstra: destination unreachable");

  // lexicographically smallest edge-index sequence among minimum-weight paths:
  // walk from the source, always taking the smallest edge that stays on some
  // shortest path (certified by distances to the destination)
  const std::vector<double> to_dest = distances_to_destination(graph, weights);
  const double total = dist[graph.destination];
  const double slack = 1e-12 * (1.0 + std::abs(total));
  std::vector<int> path;
  int u = graph.source;
  bool stuck = false;
  for (int hops = 0; u != graph.destination && hops <= n; ++hops) {
    int chosen = -1;
    for (int e : out[u]) {
      const int v = graph.edges[e].second;
      if (!std::isfinite(to_dest[v])) continue;
      if (dist[u] + weights(e) + to_dest[v] <= total + slack) {
        chosen = e;
        break;  // out-edge lists ascend by edge index
      }
    }
    if (chosen < 0) {
      stuck = true;
      break;
    }
    path.push_back(chosen);
    u = graph.edges[chosen].second;
  }
  if (stuck || u != graph.destination) {
    // numerical slack failed somewhere; fall back to the parent-pointer path
    path.clear();
    for (int v = graph.destination; v != graph.source;) {
      const int e = parent_edge[v];
      path.push_back(e);
      v = graph.edges[e].first;
    }
    std::reverse(path.begin(), path.end());
  }
  return path;
}

std::pair<double, std::vector<int>> widest_path(const Graph& graph, const Vec& weights) {
  if (static_cast<int>(weights.size()) != graph.edge_count())
    throw InvalidInput("widest_path: weight vector has the wrong dimension");
  auto out = out_edges_by_node(graph);
  const int n = graph.node_count;
  std::vector<double> bottleneck(n, 0.0);
  std::vector<int> parent_edge(n, -1);
  bottleneck[graph.source] = std::numeric_limits<double>::infinity();
  using Item = std::pair<double, int>;
  std::priority_queue<Item> pq;  // max-heap on the bottleneck value
  pq.emplace(bottleneck[graph.source], graph.source);
  while (!pq.empty()) {
    auto [b, u] = pq.top();
    pq.pop();
    if (b < bottleneck[u]) continue;
    for (int e : out[u]) {
      const int v = graph.edges[e].second;
      const double cand = std::min(b, weights(e));
      if (cand > bottleneck[v]) {
        bottleneck[v] = cand;
        parent_edge[v] = e;
        pq.emplace(cand, v);
      }
    }
  }
  if (bottleneck[graph.destination] <= 0.0) throw NoPath("widest_path: destination unreachable");
  std::vector<int> path;
  for (int v = graph.destination; v != graph.source;) {
    const int e = parent_edge[v];
    path.push_back(e);
    v = graph.edges[e].first;
  }
  std::reverse(path.begin(), path.end());
  return {bottleneck[graph.destination], path};
}

// ---------------------------------------------------------------------------
// FlowPolytope

namespace {

// Kahn topological sort; empty when the graph has a cycle.
std::vector<int> topological_order(const Graph& graph) {
  std::vector<int> indegree(graph.node_count, 0);
  for (const auto& [u, v] : graph.edges) ++indegree[v];
  std::vector<int> order;
  order.reserve(graph.node_count);
  std::vector<int> ready;
  for (int v = 0; v < graph.node_count; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  auto out = out_edges_by_node(graph);
  while (!ready.empty()) {
    const int u = ready.back();
    ready.pop_back();
    order.push_back(u);
    for (int e : out[u]) {
      if (--indegree[graph.edges[e].second] == 0) ready.push_back(graph.edges[e].second);
    }
  }
  if (static_cast<int>(order.size()) != graph.node_count) order.clear();
  return order;
}

}  // namespace

FlowPolytope::FlowPolytope(Graph graph) : graph_(std::move(graph)) {
  if (graph_.node_count < 2) throw InvalidInput("flow polytope: need at least two nodes");
  if (!reachable(graph_)) throw InvalidInput("flow polytope: destination unreachable");
  topo_order_ = topological_order(graph_);
  // any two path indicators differ on at most min(2 (n-1), m) coordinates
  const double by_nodes = 2.0 * static_cast<double>(graph_.node_count - 1);
  const double by_edges = static_cast<double>(graph_.edge_count());
  diameter_ = std::sqrt(std::min(by_nodes, by_edges));
}

Vec FlowPolytope::linear_minimizer(const Vec& c) const {
  check_dim(c);
  Vec v = Vec::Zero(c.size());
  if (!topo_order_.empty()) {
    // acyclic graph: one pass in topological order minimizes exactly, whatever
    // the weight signs
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(graph_.node_count, kInf);
    std::vector<int> parent(graph_.node_count, -1);
    dist[graph_.source] = 0.0;
    auto out = out_edges_by_node(graph_);
    for (int u : topo_order_) {
      if (dist[u] == kInf) continue;
      for (int e : out[u]) {
        const int head = graph_.edges[e].second;
        const double cand = dist[u] + c(e);
        if (cand < dist[head]) {
          dist[head] = cand;
          parent[head] = e;
        }
      }
    }
    if (dist[graph_.destination] == kInf)
      throw NoPath("flow polytope: destination unreachable");
    for (int node = graph_.destination; node != graph_.source;) {
      v(parent[node]) = 1.0;
      node = graph_.edges[parent[node]].first;
    }
    return v;
  }
  // cyclic fallback: Dijkstra needs positive weights, so shift them up. The
  // shift penalizes long paths; this oracle is exact only up to that bias.
  const double lo = c.minCoeff();
  const double hi = c.maxCoeff();
  const double eps = (hi > lo) ? 1e-12 * (hi - lo) : 1.0;
  const Vec weights = (c.array() - lo + eps).matrix();
  for (int e : dijkstra(graph_, weights)) v(e) = 1.0;
  return v;
}

Vec FlowPolytope::project(const Vec& y, double tol) const { return project_flow(*this, y, tol); }

Vec project_flow(const FlowPolytope& polytope, const Vec& y, double tol) {
  if (static_cast<int>(y.size()) != polytope.dimension())
    throw InvalidInput("project_flow: point has the wrong dimension");
  if (tol <= 0.0) throw InvalidInput("project_flow: tol must be positive");
  // gap g certifies ||x - x*|| <= sqrt(2g); half of tol^2 keeps the distance
  // error within tol itself
  const double gap_tol = 0.5 * tol * tol;
  const std::int64_t m = polytope.dimension();

  struct Atom {
    Vec vertex;
    double weight;
  };
  std::vector<Atom> atoms;
  auto find_atom = [&](const Vec& v) -> int {
    for (size_t i = 0; i < atoms.size(); ++i)
      if ((atoms[i].vertex - v).lpNorm<Eigen::Infinity>() < 0.5) return static_cast<int>(i);
    return -1;
  };

  Vec x = polytope.linear_minimizer(-y);
  atoms.push_back({x, 1.0});

  auto rebuild = [&] {
    Vec fresh = Vec::Zero(m);
    double total = 0.0;
    for (const Atom& a : atoms) total += a.weight;
    for (Atom& a : atoms) {
      a.weight /= total;
      fresh += a.weight * a.vertex;
    }
    x = fresh;
  };

  std::int64_t cap = polytope.iteration_cap() > 0
                         ? polytope.iteration_cap()
                         : std::max<std::int64_t>(1000, static_cast<std::int64_t>(10.0 * m / tol));

  double gap = std::numeric_limits<double>::infinity();
  for (std::int64_t iter = 0; iter < cap; ++iter) {
    const Vec grad = x - y;
    const Vec s = polytope.linear_minimizer(grad);
    gap = grad.dot(x - s);
    if (gap <= gap_tol) {
      rebuild();
      return x;
    }
    // best away atom
    int away = 0;
    double away_val = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < atoms.size(); ++i) {
      const double v = grad.dot(atoms[i].vertex);
      if (v > away_val) {
        away_val = v;
        away = static_cast<int>(i);
      }
    }
    const double fw_desc = -gap;                     // <grad, s - x>
    const double away_desc = grad.dot(x) - away_val; // <grad, x - a>
    if (fw_desc <= away_desc || atoms[away].weight >= 1.0 - 1e-15) {
      // toward the entering vertex
      const Vec dir = s - x;
      const double denom = dir.squaredNorm();
      if (denom == 0.0) break;
      const double gamma = std::min(1.0, std::max(0.0, -grad.dot(dir) / denom));
      for (Atom& a : atoms) a.weight *= (1.0 - gamma);
      const int idx = find_atom(s);
      if (idx >= 0)
        atoms[idx].weight += gamma;
      else
        atoms.push_back({s, gamma});
      x += gamma * dir;
    } else {
      // shift mass off the worst active vertex
      const Vec dir = x - atoms[away].vertex;
      const double denom = dir.squaredNorm();
      if (denom == 0.0) break;
      const double w = atoms[away].weight;
      const double gamma_max = w / (1.0 - w);
      const double gamma = std::min(gamma_max, std::max(0.0, -grad.dot(dir) / denom));
      for (Atom& a : atoms) a.weight *= (1.0 + gamma);
      atoms[away].weight -= gamma;
      x += gamma * dir;
      if (atoms[away].weight <= 1e-14) atoms.erase(atoms.begin() + away);
    }
    if ((iter & 63) == 63) rebuild();
  }
  rebuild();
  throw ConvergenceFailure("project_flow: iteration cap exceeded", x, gap);
}

bool FlowPolytope::contains(const Vec& x, double tol) const {
  check_dim(x);
  if (x.minCoeff() < -tol || x.maxCoeff() > 1.0 + tol) return false;
  Vec net = Vec::Zero(graph_.node_count);
  for (int e = 0; e < graph_.edge_count(); ++e) {
    net(graph_.edges[e].first) += x(e);
    net(graph_.edges[e].second) -= x(e);
  }
  for (int v = 0; v < graph_.node_count; ++v) {
    double want = 0.0;
    if (v == graph_.source) want = 1.0;
    if (v == graph_.destination) want = -1.0;
    if (std::abs(net(v) - want) > tol) return false;
  }
  return true;
}

Vec FlowPolytope::sample(Rng& rng) const {
  const int paths = 1 + static_cast<int>(rng.uniform_int(4));
  Vec x = Vec::Zero(graph_.edge_count());
  std::vector<double> w(paths);
  double total = 0.0;
  for (double& wi : w) {
    wi = -std::log(std::max(rng.uniform(), 1e-300));
    total += wi;
  }
  Vec weights(graph_.edge_count());
  for (int p = 0; p < paths; ++p) {
    for (int e = 0; e < weights.size(); ++e) weights(e) = rng.uniform(0.05, 1.0);
    for (int e : dijkstra(graph_, weights)) x(e) += w[p] / total;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Flow decomposition and route sampling

std::vector<std::pair<std::vector<int>, double>> flow_decompose(const Graph& graph, const Vec& x,
                                                                double tol) {
  if (static_cast<int>(x.size()) != graph.edge_count())
    throw InvalidInput("flow_decompose: flow vector has the wrong dimension");
  if (tol <= 0.0) throw InvalidInput("flow_decompose: tol must be positive");
  auto out = out_edges_by_node(graph);
  Vec residual = x;
  std::vector<std::pair<std::vector<int>, double>> result;

  for (int extraction = 0; extraction <= graph.edge_count(); ++extraction) {
    // trace a path from the source along edges with residual > tol,
    // cancelling any cycle encountered
    std::vector<int> path;
    std::vector<int> node_at_pos{graph.source};
    int u = graph.source;
    bool stuck_at_source = false;
    while (u != graph.destination) {
      int chosen = -1;
      for (int e : out[u]) {
        if (residual(e) > tol) {
          chosen = e;
          break;
        }
      }
      if (chosen < 0) {
        if (u == graph.source && path.empty()) {
          stuck_at_source = true;
          break;
        }
        throw InvalidInput("flow_decompose: trace stuck; flow conservation violated");
      }
      const int v = graph.edges[chosen].second;
      auto seen = std::find(node_at_pos.begin(), node_at_pos.end(), v);
      if (seen != node_at_pos.end()) {
        // cancel the cycle and resume from its entry node
        const size_t pos = static_cast<size_t>(seen - node_at_pos.begin());
        double bottleneck = residual(chosen);
        for (size_t i = pos; i < path.size(); ++i)
          bottleneck = std::min(bottleneck, residual(path[i]));
        residual(chosen) -= bottleneck;
        for (size_t i = pos; i < path.size(); ++i) residual(path[i]) -= bottleneck;
        path.resize(pos);
        node_at_pos.resize(pos + 1);
        u = node_at_pos.back();
        continue;
      }
      path.push_back(chosen);
      node_at_pos.push_back(v);
      u = v;
    }
    if (stuck_at_source) break;
    double bottleneck = std::numeric_limits<double>::infinity();
    for (int e : path) bottleneck = std::min(bottleneck, residual(e));
    for (int e : path) residual(e) -= bottleneck;
    result.emplace_back(std::move(path), bottleneck);
  }
  return result;
}

const std::vector<int>& sample_route(
    const std::vector<std::pair<std::vector<int>, double>>& decomposition, Rng& rng) {
  if (decomposition.empty()) throw InvalidInput("sample_route: empty decomposition");
  double total = 0.0;
  for (const auto& [path, weight] : decomposition) total += weight;
  if (std::abs(total - 1.0) > 1e-7)
    throw InvalidInput("sample_route: weights sum to " + std::to_string(total));
  const double u = rng.uniform() * total;
  double acc = 0.0;
  for (const auto& [path, weight] : decomposition) {
    acc += weight;
    if (u < acc) return path;
  }
  return decomposition.back().first;
}

// ---------------------------------------------------------------------------
// Persistence

void save_instance(const PathEnvInstance& instance, const std::string& graph_path,
                   const std::string& rounds_path) {
  const Graph& graph = instance.graph;
  std::ofstream gf(graph_path);
  if (!gf) throw IoError("save_instance: cannot open " + graph_path);
  char buf[128];
  gf << graph.node_count << ' ' << graph.edge_count() << ' ' << graph.source << ' '
     << graph.destination << '\n';
  for (int e = 0; e < graph.edge_count(); ++e) {
    std::snprintf(buf, sizeof(buf), "%d %d %.17g %.17g\n", graph.edges[e].first,
                  graph.edges[e].second, graph.base_latency(e), graph.base_bandwidth(e));
    gf << buf;
  }
  if (!gf.good()) throw IoError("save_instance: write failed for " + graph_path);

  std::ofstream rf(rounds_path);
  if (!rf) throw IoError("save_instance: cannot open " + rounds_path);
  rf << instance.rounds.size() << ' ' << graph.edge_count() << '\n';
  for (size_t t = 0; t < instance.rounds.size(); ++t) {
    std::snprintf(buf, sizeof(buf), "%.17g", instance.rounds[t].beta);
    rf << buf;
    for (int e = 0; e < graph.edge_count(); ++e) {
      std::snprintf(buf, sizeof(buf), " %.17g", instance.latency_scales[t](e));
      rf << buf;
    }
    for (int e = 0; e < graph.edge_count(); ++e) {
      std::snprintf(buf, sizeof(buf), " %.17g", instance.bandwidth_scales[t](e));
      rf << buf;
    }
    rf << '\n';
  }
  if (!rf.good()) throw IoError("save_instance: write failed for " + rounds_path);
}

PathEnvInstance load_instance(const std::string& graph_path, const std::string& rounds_path) {
  std::ifstream gf(graph_path);
  if (!gf) throw IoError("load_instance: cannot open " + graph_path);
  PathEnvInstance instance;
  Graph& graph = instance.graph;
  int m = 0;
  gf >> graph.node_count >> m >> graph.source >> graph.destination;
  if (!gf || graph.node_count < 2 || m < 1) throw IoError("load_instance: bad graph header");
  graph.base_latency = Vec(m);
  graph.base_bandwidth = Vec(m);
  for (int e = 0; e < m; ++e) {
    int u = 0, v = 0;
    double lat = 0.0, bw = 0.0;
    gf >> u >> v >> lat >> bw;
    if (!gf) throw IoError("load_instance: truncated edge list");
    graph.edges.emplace_back(u, v);
    graph.base_latency(e) = lat;
    graph.base_bandwidth(e) = bw;
  }

  std::ifstream rf(rounds_path);
  if (!rf) throw IoError("load_instance: cannot open " + rounds_path);
  size_t horizon = 0;
  int m2 = 0;
  rf >> horizon >> m2;
  if (!rf || m2 != m) throw IoError("load_instance: rounds file disagrees with the graph");
  instance.rounds.resize(horizon);
  instance.latency_scales.resize(horizon);
  instance.bandwidth_scales.resize(horizon);
  for (size_t t = 0; t < horizon; ++t) {
    rf >> instance.rounds[t].beta;
    Vec lat(m), bw(m);
    for (int e = 0; e < m; ++e) rf >> lat(e);
    for (int e = 0; e < m; ++e) rf >> bw(e);
    if (!rf) throw IoError("load_instance: truncated rounds file");
    instance.rounds[t].latency = graph.base_latency.cwiseProduct(lat);
    instance.rounds[t].bandwidth = graph.base_bandwidth.cwiseProduct(bw);
    instance.latency_scales[t] = std::move(lat);
    instance.bandwidth_scales[t] = std::move(bw);
  }
  return instance;
}

}  // namespace coco
