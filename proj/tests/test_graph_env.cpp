#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "coco/errors.hpp"
#include "coco/graph_env.hpp"
#include "coco/rng.hpp"

using namespace coco;

namespace {

Graph two_parallel_edges() {
  Graph g;
  g.node_count = 2;
  g.edges = {{0, 1}, {0, 1}};  // used by projection tests only; generator never emits duplicates
  g.base_latency = Vec::Ones(2);
  g.base_bandwidth = Vec::Ones(2);
  g.source = 0;
  g.destination = 1;
  return g;
}

Graph triangle() {
  Graph g;
  g.node_count = 3;
  g.edges = {{0, 1}, {1, 2}, {0, 2}};
  g.base_latency = Vec::Ones(3);
  g.base_bandwidth = Vec::Ones(3);
  g.source = 0;
  g.destination = 2;
  return g;
}

Graph diamond() {
  // two disjoint 2-edge routes: 0->1->3 and 0->2->3
  Graph g;
  g.node_count = 4;
  g.edges = {{0, 1}, {1, 3}, {0, 2}, {2, 3}};
  g.base_latency = Vec::Ones(4);
  g.base_bandwidth = Vec::Ones(4);
  g.source = 0;
  g.destination = 3;
  return g;
}

// exhaustive path enumeration, the independent oracle for Dijkstra
void enumerate_paths(const Graph& g, int node, std::vector<int>& stack, std::vector<char>& seen,
                     std::vector<std::vector<int>>& out) {
  if (node == g.destination) {
    out.push_back(stack);
    return;
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    if (g.edges[e].first != node) continue;
    const int head = g.edges[e].second;
    if (seen[head]) continue;
    seen[head] = 1;
    stack.push_back(e);
    enumerate_paths(g, head, stack, seen, out);
    stack.pop_back();
    seen[head] = 0;
  }
}

std::vector<std::vector<int>> all_paths(const Graph& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  std::vector<char> seen(g.node_count, 0);
  seen[g.source] = 1;
  enumerate_paths(g, g.source, stack, seen, out);
  return out;
}

double path_cost(const std::vector<int>& path, const Vec& w) {
  double c = 0.0;
  for (int e : path) c += w(e);
  return c;
}

Vec indicator(const std::vector<int>& path, int m) {
  Vec x = Vec::Zero(m);
  for (int e : path) x(e) = 1.0;
  return x;
}

}  // namespace

TEST_CASE("instance generation: shape, determinism, degenerate two-node case") {
  PathEnvInstance a = generate_instance(9, 20, 60, 25);
  CHECK(a.graph.node_count == 20);
  CHECK(a.graph.edge_count() == 60);
  CHECK(a.rounds.size() == 25);
  std::set<std::pair<int, int>> unique_edges(a.graph.edges.begin(), a.graph.edges.end());
  CHECK(unique_edges.size() == a.graph.edges.size());

  PathEnvInstance b = generate_instance(9, 20, 60, 25);
  CHECK(a.graph.edges == b.graph.edges);
  CHECK((a.graph.base_latency - b.graph.base_latency).norm() == 0.0);
  for (size_t t = 0; t < a.rounds.size(); ++t) {
    REQUIRE((a.rounds[t].latency - b.rounds[t].latency).norm() == 0.0);
    REQUIRE(a.rounds[t].beta == b.rounds[t].beta);
  }

  PathEnvInstance tiny = generate_instance(4, 2, 1, 3);
  CHECK(tiny.graph.edge_count() == 1);
  CHECK(tiny.graph.edges.front() == std::make_pair(0, 1));
  FlowPolytope singleton(tiny.graph);
  Vec y(1);
  y << -3.7;
  CHECK(singleton.project(y, 1e-6)(0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(generate_instance(1, 1, 1, 5), InvalidInput);
  CHECK_THROWS_AS(generate_instance(1, 5, 2, 5), InvalidInput);
}

TEST_CASE("per-round scales stay inside the configured intervals") {
  GenerateOptions options;
  PathEnvInstance inst = generate_instance(3, 8, 20, 40, options);
  for (size_t t = 0; t < inst.rounds.size(); ++t) {
    REQUIRE(inst.latency_scales[t].minCoeff() >= options.latency_scale_lo);
    REQUIRE(inst.latency_scales[t].maxCoeff() <= options.latency_scale_hi);
    REQUIRE(inst.bandwidth_scales[t].minCoeff() >= options.bandwidth_scale_lo);
    REQUIRE(inst.bandwidth_scales[t].maxCoeff() <= options.bandwidth_scale_hi);
    // the widest base path satisfies the bandwidth floor each round
    FlowPolytope polytope(inst.graph);
    auto [bn, widest] = widest_path(inst.graph, inst.graph.base_bandwidth);
    const Vec x = indicator(widest, inst.graph.edge_count());
    REQUIRE(inst.rounds[t].beta - inst.rounds[t].bandwidth.dot(x) <= 1e-12);
  }
}

TEST_CASE("dijkstra on the small certified cases") {
  Graph single = two_parallel_edges();
  single.edges = {{0, 1}};
  single.base_latency = Vec::Ones(1);
  single.base_bandwidth = Vec::Ones(1);
  Vec w1(1);
  w1 << 5.0;
  CHECK(dijkstra(single, w1) == std::vector<int>{0});

  Graph parallel = two_parallel_edges();
  Vec w2(2);
  w2 << 3.0, 2.0;
  CHECK(dijkstra(parallel, w2) == std::vector<int>{1});

  Graph tri = triangle();
  Vec w3(3);
  w3 << 1.0, 1.0, 3.0;
  CHECK(dijkstra(tri, w3) == std::vector<int>{0, 1});

  Vec bad(3);
  bad << 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(dijkstra(tri, bad), InvalidInput);

  Graph unreachable = triangle();
  unreachable.edges = {{0, 1}, {2, 1}, {2, 0}};
  CHECK_THROWS_AS(dijkstra(unreachable, w3), NoPath);
}

TEST_CASE("dijkstra agrees with exhaustive enumeration on random graphs") {
  Rng rng(606);
  for (int trial = 0; trial < 60; ++trial) {
    PathEnvInstance inst = generate_instance(1000 + trial, 6, 14, 1);
    const Graph& g = inst.graph;
    Vec w(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) w(e) = rng.uniform(0.1, 2.0);
    const auto best = dijkstra(g, w);
    const auto paths = all_paths(g);
    REQUIRE(!paths.empty());
    double best_cost = std::numeric_limits<double>::infinity();
    for (const auto& p : paths) best_cost = std::min(best_cost, path_cost(p, w));
    REQUIRE(path_cost(best, w) == doctest::Approx(best_cost).epsilon(1e-12));
  }
}

TEST_CASE("dijkstra breaks ties toward the smaller edge-index sequence") {
  Graph parallel = two_parallel_edges();
  Vec w(2);
  w << 1.0, 1.0;
  CHECK(dijkstra(parallel, w) == std::vector<int>{0});
  // diamond with equal-cost routes: take the route through edge 0
  Graph d = diamond();
  Vec w4 = Vec::Ones(4);
  CHECK(dijkstra(d, w4) == std::vector<int>{0, 1});
}

TEST_CASE("widest path maximizes the bottleneck") {
  Graph d = diamond();
  Vec bw(4);
  bw << 5.0, 2.0, 3.0, 3.0;  // route 0-1-3 bottleneck 2, route 0-2-3 bottleneck 3
  auto [value, path] = widest_path(d, bw);
  CHECK(value == doctest::Approx(3.0));
  CHECK(path == std::vector<int>{2, 3});
}

TEST_CASE("flow projection: fixed points, the closed-form split, the singleton") {
  FlowPolytope parallel{two_parallel_edges()};
  Vec y(2);
  y << 0.9, 0.3;
  // closed form on the line x0 + x1 = 1: y + ((1 - sum) / 2) (1, 1) = (0.8, 0.2)
  const Vec p = parallel.project(y, 1e-5);
  CHECK(p(0) == doctest::Approx(0.8).epsilon(1e-6));
  CHECK(p(1) == doctest::Approx(0.2).epsilon(1e-6));

  Vec path_point(2);
  path_point << 1.0, 0.0;
  CHECK((parallel.project(path_point, 1e-5) - path_point).norm() <= 1e-5);

  CHECK_THROWS_AS(parallel.project(y, 0.0), InvalidInput);
}

TEST_CASE("flow projection matches the segment closed form on the diamond") {
  FlowPolytope poly{diamond()};
  // members are theta * (1,1,0,0) + (1-theta) * (0,0,1,1)
  Vec p1(4), p2(4);
  p1 << 1, 1, 0, 0;
  p2 << 0, 0, 1, 1;
  Rng rng(99);
  for (int rep = 0; rep < 50; ++rep) {
    Vec y(4);
    for (int i = 0; i < 4; ++i) y(i) = rng.uniform(-1.0, 2.0);
    const double theta =
        std::clamp((y - p2).dot(p1 - p2) / (p1 - p2).squaredNorm(), 0.0, 1.0);
    const Vec expect = theta * p1 + (1.0 - theta) * p2;
    const Vec got = poly.project(y, 1e-5);
    REQUIRE((got - expect).norm() <= 2e-5);
  }
}

TEST_CASE("flow projection keeps conservation and contracts distances") {
  PathEnvInstance inst = generate_instance(77, 6, 12, 1);
  FlowPolytope poly(inst.graph);
  Rng rng(1234);
  const double tol = 1e-4;
  for (int rep = 0; rep < 300; ++rep) {
    Vec a(poly.dimension()), b(poly.dimension());
    for (int i = 0; i < poly.dimension(); ++i) {
      a(i) = rng.uniform(-1.0, 2.0);
      b(i) = rng.uniform(-1.0, 2.0);
    }
    const Vec pa = poly.project(a, tol);
    const Vec pb = poly.project(b, tol);
    REQUIRE(poly.contains(pa, 1e-7));
    REQUIRE((pa - pb).norm() <= (a - b).norm() + 2.0 * tol);
    REQUIRE((poly.project(pa, tol) - pa).norm() <= 2.0 * tol);
  }
}

TEST_CASE("flow polytope diameter upper-bounds sampled member distances") {
  PathEnvInstance inst = generate_instance(31, 8, 24, 1);
  FlowPolytope poly(inst.graph);
  Rng rng(5150);
  for (int rep = 0; rep < 500; ++rep) {
    const Vec a = poly.sample(rng);
    const Vec b = poly.sample(rng);
    REQUIRE(poly.contains(a, 1e-9));
    REQUIRE((a - b).norm() <= poly.diameter() + 1e-9);
  }
}

TEST_CASE("flow decomposition: indicators, splits, random reconstruction") {
  Graph parallel = two_parallel_edges();
  Vec split(2);
  split << 0.6, 0.4;
  auto decomp = flow_decompose(parallel, split, 1e-12);
  REQUIRE(decomp.size() == 2);
  CHECK(decomp[0].second == doctest::Approx(0.6));
  CHECK(decomp[1].second == doctest::Approx(0.4));

  Vec one_path(2);
  one_path << 0.0, 1.0;
  auto single = flow_decompose(parallel, one_path, 1e-12);
  REQUIRE(single.size() == 1);
  CHECK(single[0].second == doctest::Approx(1.0));
  CHECK(single[0].first == std::vector<int>{1});

  PathEnvInstance inst = generate_instance(404, 6, 14, 1);
  FlowPolytope poly(inst.graph);
  Rng rng(31415);
  for (int rep = 0; rep < 200; ++rep) {
    const Vec x = poly.sample(rng);
    auto parts = flow_decompose(inst.graph, x, 1e-12);
    REQUIRE(static_cast<int>(parts.size()) <= inst.graph.edge_count());
    Vec rebuilt = Vec::Zero(inst.graph.edge_count());
    double weight_sum = 0.0;
    for (const auto& [path, weight] : parts) {
      REQUIRE(weight > 0.0);
      weight_sum += weight;
      rebuilt += weight * indicator(path, inst.graph.edge_count());
    }
    REQUIRE(weight_sum == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE((rebuilt - x).lpNorm<Eigen::Infinity>() <= 1e-9);
  }
}

TEST_CASE("flow decomposition rejects non-conserving vectors") {
  Graph tri = triangle();
  Vec bogus(3);
  bogus << 1.0, 0.0, 0.0;  // flow vanishes at node 1
  CHECK_THROWS_AS(flow_decompose(tri, bogus, 1e-9), InvalidInput);
}

TEST_CASE("route sampling: degenerate, frequencies, expected cost") {
  Graph parallel = two_parallel_edges();
  std::vector<std::pair<std::vector<int>, double>> degenerate{{{0}, 1.0}};
  Rng rng(2718);
  CHECK(sample_route(degenerate, rng) == std::vector<int>{0});

  std::vector<std::pair<std::vector<int>, double>> even{{{0}, 0.5}, {{1}, 0.5}};
  int first = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i)
    if (sample_route(even, rng) == std::vector<int>{0}) ++first;
  // binomial: 3 sigma around 0.5 with n = 1e5 is about 0.00474
  CHECK(std::abs(first / static_cast<double>(draws) - 0.5) < 0.00474);

  // Monte Carlo route cost vs the fractional cost
  Vec x(2);
  x << 0.35, 0.65;
  Vec latency(2);
  latency << 3.0, 7.0;
  auto decomp = flow_decompose(parallel, x, 1e-12);
  double total = 0.0;
  for (int i = 0; i < draws; ++i) {
    for (int e : sample_route(decomp, rng)) total += latency(e);
  }
  const double mc = total / draws;
  const double exact = latency.dot(x);
  CHECK(std::abs(mc - exact) / exact < 0.01);

  std::vector<std::pair<std::vector<int>, double>> empty;
  CHECK_THROWS_AS(sample_route(empty, rng), InvalidInput);
  std::vector<std::pair<std::vector<int>, double>> off{{{0}, 0.6}, {{1}, 0.5}};
  CHECK_THROWS_AS(sample_route(off, rng), InvalidInput);
}

TEST_CASE("instance export replays bit-exactly and re-export is byte-identical") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "coco_env_roundtrip";
  fs::create_directories(dir);
  PathEnvInstance a = generate_instance(123, 10, 30, 12);
  const std::string graph_path = (dir / "g.txt").string();
  const std::string rounds_path = (dir / "r.txt").string();
  save_instance(a, graph_path, rounds_path);
  PathEnvInstance b = load_instance(graph_path, rounds_path);
  REQUIRE(b.graph.edges == a.graph.edges);
  REQUIRE((b.graph.base_latency - a.graph.base_latency).norm() == 0.0);
  for (size_t t = 0; t < a.rounds.size(); ++t) {
    REQUIRE((b.rounds[t].latency - a.rounds[t].latency).norm() == 0.0);
    REQUIRE((b.rounds[t].bandwidth - a.rounds[t].bandwidth).norm() == 0.0);
    REQUIRE(b.rounds[t].beta == a.rounds[t].beta);
  }
  const std::string graph2 = (dir / "g2.txt").string();
  const std::string rounds2 = (dir / "r2.txt").string();
  save_instance(b, graph2, rounds2);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  CHECK(slurp(graph_path) == slurp(graph2));
  CHECK(slurp(rounds_path) == slurp(rounds2));
}

TEST_CASE("generation at the published scale") {
  PathEnvInstance inst = generate_instance(42, 191, 1200, 1600);
  CHECK(inst.graph.node_count == 191);
  CHECK(inst.graph.edge_count() == 1200);
  CHECK(inst.rounds.size() == 1600);
  FlowPolytope poly(inst.graph);
  Rng rng(17);
  const Vec member = poly.sample(rng);
  CHECK(poly.contains(member, 1e-9));
}

TEST_CASE("projection reports a convergence failure once its budget is spent") {
  PathEnvInstance inst = generate_instance(55, 10, 24, 1);
  FlowPolytope poly(inst.graph);
  poly.set_iteration_cap(2);
  Vec y(poly.dimension());
  Rng rng(3);
  for (int i = 0; i < y.size(); ++i) y(i) = rng.uniform(-2.0, 2.0);
  try {
    poly.project(y, 1e-10);
    FAIL("expected the iteration cap to trip");
  } catch (const ConvergenceFailure& e) {
    CHECK(poly.contains(e.best_iterate, 1e-7));  // best effort is still a flow
    CHECK(e.residual > 0.0);
  }
}
