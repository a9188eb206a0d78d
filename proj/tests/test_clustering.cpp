#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numeric>

#include "citemap/clustering.hpp"
#include "citemap/error.hpp"
#include "citemap/fixture.hpp"
#include "citemap/random.hpp"

using namespace citemap;

namespace {

WeightedGraph make_graph(std::size_t n, std::initializer_list<std::pair<NodeIndex, NodeIndex>> edges) {
  std::vector<WeightedGraph::Edge> e;
  for (const auto& [u, v] : edges) e.push_back({u, v, 1.0});
  return WeightedGraph(n, e);
}

WeightedGraph two_triangles() { return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}); }

WeightedGraph bridged_triangles() {
  return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

WeightedGraph clique_ring(std::size_t cliques, std::size_t size) {
  std::vector<WeightedGraph::Edge> e;
  for (std::size_t c = 0; c < cliques; ++c) {
    const auto base = static_cast<NodeIndex>(c * size);
    for (NodeIndex i = 0; i < size; ++i) {
      for (NodeIndex j = i + 1; j < size; ++j) e.push_back({base + i, base + j, 1.0});
    }
    const auto next = static_cast<NodeIndex>(((c + 1) % cliques) * size);
    e.push_back({base, next + 1, 1.0});
  }
  return WeightedGraph(cliques * size, e);
}

// Independent route: Q = 1/(2m) sum_ij (A_ij - k_i k_j / 2m) [c_i == c_j]
// over a dense adjacency matrix, self loops stored as A_ii = 2w.
double matrix_modularity(const WeightedGraph& g, const std::vector<std::size_t>& labels) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const auto& e : g.edges()) {
    if (e.u == e.v) {
      a[e.u][e.u] += 2.0 * e.weight;
    } else {
      a[e.u][e.v] += e.weight;
      a[e.v][e.u] += e.weight;
    }
  }
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) k[i] += a[i][j];
    two_m += k[i];
  }
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (labels[i] == labels[j]) q += a[i][j] - k[i] * k[j] / two_m;
    }
  }
  return q / two_m;
}

WeightedGraph random_graph(Rng& rng, std::size_t n, double p, bool weighted = false, bool loops = false) {
  std::vector<WeightedGraph::Edge> e;
  for (NodeIndex u = 0; u < n; ++u) {
    if (loops && rng.bernoulli(0.3)) e.push_back({u, u, 1.0 + static_cast<double>(rng.below(3))});
    for (NodeIndex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) e.push_back({u, v, weighted ? 1.0 + static_cast<double>(rng.below(4)) : 1.0});
    }
  }
  return WeightedGraph(n, e);
}

bool same_up_to_relabeling(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return false;
  std::map<std::size_t, std::size_t> ab, ba;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ab.emplace(a[i], b[i]).first->second != b[i]) return false;
    if (ba.emplace(b[i], a[i]).first->second != a[i]) return false;
  }
  return true;
}

CitationGraph citation_graph(std::size_t n, std::vector<CitationGraph::Arc> arcs) {
  std::vector<PaperId> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("n" + std::string(2 - std::to_string(i).size(), '0') + std::to_string(i));
  return CitationGraph(ids, std::move(arcs));
}

}  // namespace

TEST_SUITE("partition") {
  TEST_CASE("clusters are numbered by size rank") {
    const std::vector<std::size_t> labels{7, 3, 3, 9, 9, 9, 7};
    const auto p = Partition::from_labels(labels);
    CHECK(p.cluster_count() == 3);
    CHECK(p.cluster(3) == 1);  // size 3
    CHECK(p.cluster(0) == 2);  // size 2, smallest member 0
    CHECK(p.cluster(1) == 3);  // size 2, smallest member 1
    CHECK(p.members(1) == std::vector<NodeIndex>{3, 4, 5});
  }
}

TEST_SUITE("modularity") {
  TEST_CASE("one cluster scores zero") {
    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
      const auto g = random_graph(rng, 2 + rng.below(10), 0.5, true);
      if (g.total_weight() == 0.0) continue;
      const std::vector<std::size_t> one(g.node_count(), 0);
      CHECK(modularity(g, one) == doctest::Approx(0.0).epsilon(1e-12));
    }
  }

  TEST_CASE("hand values") {
    const std::vector<std::size_t> by_triangle{0, 0, 0, 1, 1, 1};
    CHECK(std::abs(modularity(two_triangles(), by_triangle) - 0.5) < 1e-12);
    CHECK(std::abs(modularity(bridged_triangles(), by_triangle) - 5.0 / 14.0) < 1e-12);
    CHECK(std::abs(matrix_modularity(bridged_triangles(), by_triangle) - 5.0 / 14.0) < 1e-12);
  }

  TEST_CASE("edgeless graph is an error") {
    const WeightedGraph g(3, {});
    const std::vector<std::size_t> labels{0, 1, 2};
    CHECK_THROWS_AS(modularity(g, labels), DomainError);
  }

  TEST_CASE("oracle: matches the adjacency-matrix formula, stays in [-0.5, 1)") {
    Rng rng(2);
    for (int trial = 0; trial < 300; ++trial) {
      const auto g = random_graph(rng, 1 + rng.below(12), 0.4, trial % 2 == 0, trial % 3 == 0);
      if (g.total_weight() == 0.0) continue;
      std::vector<std::size_t> labels(g.node_count());
      for (auto& l : labels) l = rng.below(4);
      const double q = modularity(g, labels);
      CHECK(std::abs(q - matrix_modularity(g, labels)) < 1e-12);
      CHECK(q >= -0.5 - 1e-12);
      CHECK(q < 1.0);
    }
  }

  TEST_CASE("property: move_gain equals the full recomputation") {
    Rng rng(4);
    for (int trial = 0; trial < 300; ++trial) {
      const auto g = random_graph(rng, 2 + rng.below(12), 0.35, true, trial % 2 == 0);
      if (g.total_weight() == 0.0) continue;
      std::vector<std::size_t> labels(g.node_count());
      for (auto& l : labels) l = rng.below(5);
      const auto node = static_cast<NodeIndex>(rng.below(g.node_count()));
      const std::size_t target = rng.below(6);  // 5 may be a fresh cluster
      auto moved = labels;
      moved[node] = target;
      const double expected = modularity(g, moved) - modularity(g, labels);
      CHECK(std::abs(move_gain(g, labels, node, target) - expected) < 1e-12);
    }
  }
}

TEST_SUITE("brute_force_best_partition") {
  TEST_CASE("single edge: one cluster, Q = 0") {
    const auto r = brute_force_best_partition(make_graph(2, {{0, 1}}));
    CHECK(r.modularity == doctest::Approx(0.0));
    CHECK(r.partition.cluster_count() == 1);
  }

  TEST_CASE("two disjoint triangles") {
    const auto r = brute_force_best_partition(two_triangles());
    CHECK(std::abs(r.modularity - 0.5) < 1e-12);
    CHECK(r.partition.cluster_count() == 2);
  }

  TEST_CASE("path of three nodes") {
    // Enumerating the five partitions by hand: {012} 0, {01}{2} -1/8,
    // {0}{12} -1/8, {02}{1} -1/2, singletons -3/8.
    const auto g = make_graph(3, {{0, 1}, {1, 2}});
    const std::vector<std::vector<std::size_t>> all{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {0, 1, 2}};
    const double expected[] = {0.0, -0.125, -0.5, -0.125, -0.375};
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(std::abs(matrix_modularity(g, all[i]) - expected[i]) < 1e-12);
    const auto r = brute_force_best_partition(g);
    CHECK(std::abs(r.modularity - 0.0) < 1e-12);
    CHECK(r.partition.cluster_count() == 1);
  }

  TEST_CASE("bridged triangles optimum is the triangle split") {
    const auto r = brute_force_best_partition(bridged_triangles());
    CHECK(std::abs(r.modularity - 5.0 / 14.0) < 1e-12);
  }

  TEST_CASE("too many nodes") {
    CHECK_THROWS_AS(brute_force_best_partition(WeightedGraph(13, {})), DomainError);
  }
}

TEST_SUITE("greedy_agglomerative") {
  TEST_CASE("examples") {
    const std::vector<std::size_t> by_triangle{0, 0, 0, 1, 1, 1};
    const auto two = greedy_agglomerative(two_triangles());
    CHECK(same_up_to_relabeling(two.labels(), by_triangle));
    CHECK(std::abs(modularity(two_triangles(), two) - 0.5) < 1e-12);

    const auto edge = greedy_agglomerative(make_graph(2, {{0, 1}}));
    CHECK(edge.cluster_count() == 1);

    const auto bridged = greedy_agglomerative(bridged_triangles());
    CHECK(same_up_to_relabeling(bridged.labels(), by_triangle));
    CHECK(std::abs(modularity(bridged_triangles(), bridged) - 5.0 / 14.0) < 1e-12);
  }

  TEST_CASE("edgeless graph leaves singletons") {
    CHECK(greedy_agglomerative(WeightedGraph(4, {})).cluster_count() == 4);
  }

  TEST_CASE("property: never beats the exhaustive optimum") {
    Rng rng(6);
    for (int trial = 0; trial < 80; ++trial) {
      const auto g = random_graph(rng, 2 + rng.below(7), 0.4);
      if (g.total_weight() == 0.0) continue;
      const auto best = brute_force_best_partition(g);
      CHECK(modularity(g, greedy_agglomerative(g)) <= best.modularity + 1e-12);
    }
  }
}

TEST_SUITE("multilevel_transfer") {
  TEST_CASE("two disjoint triangles for any seed") {
    const std::vector<std::size_t> by_triangle{0, 0, 0, 1, 1, 1};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto p = multilevel_transfer(two_triangles(), seed);
      CHECK(same_up_to_relabeling(p.labels(), by_triangle));
    }
  }

  TEST_CASE("ring of four 4-cliques splits into the cliques") {
    const auto g = clique_ring(4, 4);
    std::vector<std::size_t> truth(16);
    for (std::size_t i = 0; i < 16; ++i) truth[i] = i / 4;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      CHECK(same_up_to_relabeling(multilevel_transfer(g, seed).labels(), truth));
    }
  }

  TEST_CASE("same graph and seed give the same partition") {
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
      const auto g = random_graph(rng, 30, 0.15);
      CHECK(multilevel_transfer(g, 123) == multilevel_transfer(g, 123));
    }
  }

  TEST_CASE("edgeless graph leaves singletons") {
    CHECK(multilevel_transfer(WeightedGraph(3, {}), 1).cluster_count() == 3);
  }

  TEST_CASE("property: bounded by and close to the exhaustive optimum on small graphs") {
    Rng rng(10);
    int compared = 0;
    for (int trial = 0; trial < 150; ++trial) {
      const auto g = random_graph(rng, 2 + rng.below(7), 0.2 + 0.4 * rng.uniform());
      if (g.total_weight() == 0.0) continue;
      const auto best = brute_force_best_partition(g);
      const double q = modularity(g, multilevel_transfer(g, trial));
      CHECK(q <= best.modularity + 1e-12);
      if (best.modularity > 0.0) {
        CHECK(q >= 0.95 * best.modularity);
        ++compared;
      }
    }
    CHECK(compared > 50);
  }

  TEST_CASE("property: node relabeling gives an equivalent partition on separated instances") {
    Rng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
      const auto planted = planted_partition(3, 8, 0.9, 0.01, 100 + trial);
      std::vector<NodeIndex> perm(planted.graph.node_count());
      std::iota(perm.begin(), perm.end(), NodeIndex{0});
      rng.shuffle(std::span(perm));
      auto edges = planted.graph.edges();
      for (auto& e : edges) {
        e.u = perm[e.u];
        e.v = perm[e.v];
      }
      const WeightedGraph permuted(planted.graph.node_count(), edges);
      const auto base = multilevel_transfer(planted.graph, 5).labels();
      const auto moved = multilevel_transfer(permuted, 5).labels();
      std::vector<std::size_t> pulled(base.size());
      for (std::size_t u = 0; u < base.size(); ++u) pulled[u] = moved[perm[u]];
      CHECK(same_up_to_relabeling(base, pulled));
    }
  }

  TEST_CASE("refinement never lowers modularity") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
      const auto g = random_graph(rng, 60, 0.08);
      if (g.total_weight() == 0.0) continue;
      MultilevelOptions plain;
      plain.seed = static_cast<std::uint64_t>(trial);
      plain.refine = false;
      MultilevelOptions refined = plain;
      refined.refine = true;
      CHECK(modularity(g, multilevel_transfer(g, refined)) >= modularity(g, multilevel_transfer(g, plain)) - 1e-12);
    }
  }
}

TEST_SUITE("metagraph") {
  TEST_CASE("single cluster has no meta-edges") {
    const auto g = citation_graph(3, {{1, 0}, {2, 1}});
    const std::vector<std::size_t> one{0, 0, 0};
    const auto meta = build_metagraph(g, Partition::from_labels(one));
    CHECK(meta.edges.empty());
    CHECK(meta.intra_edges == std::vector<std::size_t>{2});
  }

  TEST_CASE("one bridge between two clusters") {
    const auto g = citation_graph(6, {{1, 0}, {2, 0}, {2, 1}, {4, 3}, {5, 3}, {5, 4}, {3, 2}});
    const std::vector<std::size_t> labels{0, 0, 0, 1, 1, 1};
    const auto meta = build_metagraph(g, Partition::from_labels(labels));
    REQUIRE(meta.edges.size() == 1);
    CHECK(meta.edges[0].weight == 1);
    CHECK(meta.edges[0].a == 1);
    CHECK(meta.edges[0].b == 2);
  }

  TEST_CASE("property: conservation of citations and nodes") {
    Rng rng(14);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 2 + rng.below(30);
      std::vector<CitationGraph::Arc> arcs;
      for (NodeIndex u = 0; u < n; ++u) {
        for (NodeIndex v = 0; v < n; ++v) {
          if (u != v && rng.bernoulli(0.1)) arcs.emplace_back(u, v);
        }
      }
      const auto g = citation_graph(n, arcs);
      const auto p = multilevel_transfer(g.undirected(), trial);
      const auto meta = build_metagraph(g, p);
      CHECK(meta.total_meta_weight() + meta.total_intra_edges() == g.arcs().size());
      CHECK(std::accumulate(meta.sizes.begin(), meta.sizes.end(), std::size_t{0}) == n);
    }
  }
}

TEST_CASE("partition export") {
  const auto g = citation_graph(2, {{1, 0}});
  const std::vector<std::size_t> labels{0, 0};
  CHECK(write_partition(g, Partition::from_labels(labels)) == "n00\t1\nn01\t1\n");
}
