#include "citemap/clustering.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "citemap/error.hpp"
#include "citemap/random.hpp"

namespace citemap {

// --- Partition ---------------------------------------------------------------

Partition Partition::from_labels(std::span<const std::size_t> labels) {
  std::map<std::size_t, std::vector<NodeIndex>> groups;
  for (NodeIndex u = 0; u < labels.size(); ++u) groups[labels[u]].push_back(u);

  Partition p;
  p.members_.reserve(groups.size());
  for (auto& [label, members] : groups) p.members_.push_back(std::move(members));
  std::sort(p.members_.begin(), p.members_.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  p.cluster_of_.assign(labels.size(), 0);
  for (std::size_t c = 0; c < p.members_.size(); ++c) {
    for (const auto u : p.members_[c]) p.cluster_of_[u] = static_cast<ClusterId>(c + 1);
  }
  return p;
}

std::vector<std::size_t> Partition::labels() const {
  std::vector<std::size_t> out(cluster_of_.size());
  for (std::size_t u = 0; u < out.size(); ++u) out[u] = cluster_of_[u] - 1;
  return out;
}

// --- Modularity ----------------------------------------------------------------

double modularity(const WeightedGraph& graph, std::span<const std::size_t> labels) {
  if (labels.size() != graph.node_count()) throw DomainError("partition does not cover the graph");
  const double m = graph.total_weight();
  if (graph.node_count() == 0 || m <= 0.0) throw DomainError("modularity is undefined on an edgeless graph");

  struct Sums {
    double internal = 0.0;
    double total = 0.0;
  };
  std::map<std::size_t, Sums> sums;
  for (NodeIndex u = 0; u < graph.node_count(); ++u) {
    auto& s = sums[labels[u]];
    s.total += graph.strength(u);
    s.internal += graph.self_loop(u);
    for (const auto& n : graph.neighbors(u)) {
      if (n.node > u && labels[n.node] == labels[u]) s.internal += n.weight;
    }
  }
  double q = 0.0;
  for (const auto& [label, s] : sums) {
    const double a = s.total / (2.0 * m);
    q += s.internal / m - a * a;
  }
  return q;
}

double modularity(const WeightedGraph& graph, const Partition& partition) {
  const auto labels = partition.labels();
  return modularity(graph, labels);
}

double move_gain(const WeightedGraph& graph, std::span<const std::size_t> labels, NodeIndex node, std::size_t target) {
  if (labels.size() != graph.node_count()) throw DomainError("partition does not cover the graph");
  const double m = graph.total_weight();
  if (m <= 0.0) throw DomainError("modularity is undefined on an edgeless graph");
  const std::size_t source = labels[node];
  if (source == target) return 0.0;

  double to_source = 0.0;
  double to_target = 0.0;
  for (const auto& n : graph.neighbors(node)) {
    if (labels[n.node] == source) to_source += n.weight;
    else if (labels[n.node] == target) to_target += n.weight;
  }
  double tot_source = 0.0;
  double tot_target = 0.0;
  for (NodeIndex u = 0; u < graph.node_count(); ++u) {
    if (u == node) continue;
    if (labels[u] == source) tot_source += graph.strength(u);
    else if (labels[u] == target) tot_target += graph.strength(u);
  }
  const double k = graph.strength(node);
  return (to_target - to_source) / m - k * (tot_target - tot_source) / (2.0 * m * m);
}

// --- Greedy agglomeration -------------------------------------------------------

Partition greedy_agglomerative(const WeightedGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<std::size_t> labels(n);
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  const double m = graph.total_weight();
  if (m <= 0.0) return Partition::from_labels(labels);

  // e[i][j]: half the fraction of edge weight between clusters i and j.
  std::vector<std::map<std::size_t, double>> e(n);
  std::vector<double> a(n);
  std::vector<bool> alive(n, true);
  for (NodeIndex u = 0; u < n; ++u) {
    a[u] = graph.strength(u) / (2.0 * m);
    for (const auto& nb : graph.neighbors(u)) e[u][nb.node] = nb.weight / (2.0 * m);
  }

  constexpr double kTolerance = 1e-12;
  while (true) {
    double best = 0.0;
    std::size_t bi = n;
    std::size_t bj = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (auto it = e[i].upper_bound(i); it != e[i].end(); ++it) {
        const double gain = 2.0 * (it->second - a[i] * a[it->first]);
        if (gain > best + kTolerance) {
          best = gain;
          bi = i;
          bj = it->first;
        }
      }
    }
    if (bi == n) break;

    // Merge bj into bi.
    e[bi].erase(bj);
    e[bj].erase(bi);
    for (const auto& [k, w] : e[bj]) {
      e[bi][k] += w;
      e[k].erase(bj);
      e[k][bi] += w;
    }
    e[bj].clear();
    a[bi] += a[bj];
    a[bj] = 0.0;
    alive[bj] = false;
    for (auto& l : labels) {
      if (l == bj) l = bi;
    }
  }
  return Partition::from_labels(labels);
}

// --- Multilevel transfer ----------------------------------------------------------

namespace {

// Transfer phase: repeated sweeps in a seeded order, each node moving to the
// neighbouring cluster with the largest positive gain. Returns true if any
// node moved. Labels must be < graph.node_count().
bool transfer_phase(const WeightedGraph& graph, std::vector<std::size_t>& labels, Rng& rng, double tolerance) {
  const std::size_t n = graph.node_count();
  const double m = graph.total_weight();
  if (n == 0 || m <= 0.0) return false;

  std::vector<double> tot(n, 0.0);
  for (NodeIndex u = 0; u < n; ++u) tot[labels[u]] += graph.strength(u);

  std::vector<NodeIndex> order(n);
  std::iota(order.begin(), order.end(), NodeIndex{0});
  rng.shuffle(std::span(order));

  std::vector<double> link(n, 0.0);
  std::vector<std::size_t> touched;
  bool any_move = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (const auto u : order) {
      const std::size_t source = labels[u];
      const double k = graph.strength(u);
      touched.clear();
      for (const auto& nb : graph.neighbors(u)) {
        const auto c = labels[nb.node];
        if (link[c] == 0.0) touched.push_back(c);
        link[c] += nb.weight;
      }
      tot[source] -= k;
      // Gain of joining cluster c, up to a term common to all candidates.
      const auto score = [&](std::size_t c) { return link[c] / m - k * tot[c] / (2.0 * m * m); };
      const double stay = score(source);

      std::sort(touched.begin(), touched.end());
      std::size_t best = source;
      double best_gain = tolerance;
      for (const auto c : touched) {
        if (c == source) continue;
        const double gain = score(c) - stay;
        if (gain > best_gain + (best == source ? 0.0 : tolerance)) {
          best_gain = gain;
          best = c;
        }
      }
      for (const auto c : touched) link[c] = 0.0;

      tot[best] += k;
      if (best != source) {
        labels[u] = best;
        moved = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

// Renumbers labels to 0..k-1 by first occurrence.
std::size_t compact_labels(std::vector<std::size_t>& labels) {
  std::map<std::size_t, std::size_t> remap;
  for (auto& l : labels) {
    const auto [it, inserted] = remap.emplace(l, remap.size());
    l = it->second;
  }
  return remap.size();
}

WeightedGraph coarsen(const WeightedGraph& graph, std::span<const std::size_t> labels, std::size_t clusters) {
  auto edges = graph.edges();
  for (auto& e : edges) {
    e.u = static_cast<NodeIndex>(labels[e.u]);
    e.v = static_cast<NodeIndex>(labels[e.v]);
  }
  return WeightedGraph(clusters, edges);
}

// Vertex-mover refinement: each round moves every node once, always taking
// the best available move even when it lowers Q, then rolls back to the best
// prefix. Rounds repeat while the best prefix improves Q.
void vertex_mover_refine(const WeightedGraph& graph, std::vector<std::size_t>& labels, double tolerance) {
  const std::size_t n = graph.node_count();
  const double m = graph.total_weight();
  if (n < 2 || m <= 0.0) return;
  compact_labels(labels);

  while (true) {
    std::vector<double> tot(n + 1, 0.0);
    std::vector<std::size_t> count(n + 1, 0);
    for (NodeIndex u = 0; u < n; ++u) {
      tot[labels[u]] += graph.strength(u);
      ++count[labels[u]];
    }
    std::vector<std::size_t> free_labels;
    for (std::size_t c = n + 1; c-- > 0;) {
      if (count[c] == 0) free_labels.push_back(c);
    }

    std::vector<bool> moved(n, false);
    std::vector<std::pair<NodeIndex, std::size_t>> history;  // (node, previous label)
    std::vector<double> link(n + 1, 0.0);
    std::vector<std::size_t> touched;
    double running = 0.0;
    double best = 0.0;
    std::size_t best_prefix = 0;

    for (std::size_t step = 0; step < n; ++step) {
      NodeIndex best_node = 0;
      std::size_t best_target = 0;
      double best_gain = -std::numeric_limits<double>::infinity();
      for (NodeIndex u = 0; u < n; ++u) {
        if (moved[u]) continue;
        const std::size_t source = labels[u];
        const double k = graph.strength(u);
        touched.clear();
        for (const auto& nb : graph.neighbors(u)) {
          const auto c = labels[nb.node];
          if (link[c] == 0.0) touched.push_back(c);
          link[c] += nb.weight;
        }
        const double rest = tot[source] - k;
        const double stay = link[source] / m - k * rest / (2.0 * m * m);
        const auto consider = [&](std::size_t c, double l, double t) {
          const double gain = l / m - k * t / (2.0 * m * m) - stay;
          if (gain > best_gain + tolerance) {
            best_gain = gain;
            best_node = u;
            best_target = c;
          }
        };
        std::sort(touched.begin(), touched.end());
        for (const auto c : touched) {
          if (c != source) consider(c, link[c], tot[c]);
        }
        if (count[source] > 1 && !free_labels.empty()) consider(free_labels.back(), 0.0, 0.0);
        for (const auto c : touched) link[c] = 0.0;
      }
      if (best_gain == -std::numeric_limits<double>::infinity()) break;

      const std::size_t source = labels[best_node];
      const double k = graph.strength(best_node);
      if (count[best_target] == 0) free_labels.pop_back();
      tot[source] -= k;
      --count[source];
      if (count[source] == 0) free_labels.push_back(source);
      tot[best_target] += k;
      ++count[best_target];
      labels[best_node] = best_target;
      moved[best_node] = true;
      history.emplace_back(best_node, source);
      running += best_gain;
      if (running > best + tolerance) {
        best = running;
        best_prefix = history.size();
      }
    }

    for (std::size_t i = history.size(); i-- > best_prefix;) labels[history[i].first] = history[i].second;
    if (best_prefix == 0) return;
  }
}

// One full level loop followed by projection back to the input graph.
std::vector<std::size_t> multilevel_pass(const WeightedGraph& graph, const MultilevelOptions& options, Rng& rng) {
  std::vector<WeightedGraph> levels;
  std::vector<std::vector<std::size_t>> maps;  // maps[k]: level-k node -> level-(k+1) node
  const WeightedGraph* current = &graph;

  while (true) {
    std::vector<std::size_t> labels(current->node_count());
    std::iota(labels.begin(), labels.end(), std::size_t{0});
    if (!transfer_phase(*current, labels, rng, options.tolerance)) break;
    const std::size_t clusters = compact_labels(labels);
    levels.push_back(coarsen(*current, labels, clusters));
    maps.push_back(std::move(labels));
    current = &levels.back();
  }

  // Project back to the input graph, optionally refining on each level.
  std::vector<std::size_t> labels(current->node_count());
  std::iota(labels.begin(), labels.end(), std::size_t{0});
  for (std::size_t k = maps.size(); k-- > 0;) {
    std::vector<std::size_t> finer(maps[k].size());
    for (std::size_t u = 0; u < finer.size(); ++u) finer[u] = labels[maps[k][u]];
    labels = std::move(finer);
    if (options.refine) {
      const WeightedGraph& level_graph = k == 0 ? graph : levels[k - 1];
      transfer_phase(level_graph, labels, rng, options.tolerance);
    }
  }
  if (options.refine) vertex_mover_refine(graph, labels, options.tolerance);
  return labels;
}

}  // namespace

Partition multilevel_transfer(const WeightedGraph& graph, const MultilevelOptions& options) {
  if (options.restarts == 0) throw DomainError("multilevel_transfer needs at least one restart");
  Rng rng(options.seed);
  auto best = multilevel_pass(graph, options, rng);
  if (graph.total_weight() > 0.0) {
    double best_q = modularity(graph, best);
    for (std::size_t r = 1; r < options.restarts; ++r) {
      auto labels = multilevel_pass(graph, options, rng);
      const double q = modularity(graph, labels);
      if (q > best_q + options.tolerance) {
        best_q = q;
        best = std::move(labels);
      }
    }
  }
  return Partition::from_labels(best);
}

Partition multilevel_transfer(const WeightedGraph& graph, std::uint64_t seed) {
  MultilevelOptions options;
  options.seed = seed;
  return multilevel_transfer(graph, options);
}

// --- Exhaustive oracle ----------------------------------------------------------

BruteForceResult brute_force_best_partition(const WeightedGraph& graph) {
  const std::size_t n = graph.node_count();
  if (n > kBruteForceMaxNodes) {
    throw DomainError("brute force limited to " + std::to_string(kBruteForceMaxNodes) + " nodes");
  }
  if (n == 0 || graph.total_weight() <= 0.0) throw DomainError("modularity is undefined on an edgeless graph");

  constexpr double kTolerance = 1e-12;
  std::vector<std::size_t> rgs(n, 0);
  std::vector<std::size_t> prefix_max(n, 0);
  std::vector<std::size_t> best_labels = rgs;
  double best_q = modularity(graph, rgs);

  // Restricted growth strings in lexicographic order.
  while (true) {
    std::size_t i = n;
    while (i-- > 1) {
      if (rgs[i] <= prefix_max[i - 1]) break;
    }
    if (i == 0 || i >= n) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
    const double q = modularity(graph, rgs);
    if (q > best_q + kTolerance) {
      best_q = q;
      best_labels = rgs;
    }
  }
  return {Partition::from_labels(best_labels), best_q};
}

// --- Meta-graph ---------------------------------------------------------------

std::size_t MetaGraph::total_meta_weight() const {
  std::size_t total = 0;
  for (const auto& e : edges) total += e.weight;
  return total;
}

std::size_t MetaGraph::total_intra_edges() const { return std::accumulate(intra_edges.begin(), intra_edges.end(), std::size_t{0}); }

MetaGraph build_metagraph(const CitationGraph& graph, const Partition& partition) {
  if (partition.node_count() != graph.node_count()) throw DomainError("partition does not cover the graph");
  MetaGraph meta;
  const std::size_t k = partition.cluster_count();
  meta.sizes.resize(k);
  meta.intra_edges.assign(k, 0);
  for (ClusterId c = 1; c <= k; ++c) meta.sizes[c - 1] = partition.size(c);

  std::map<std::pair<ClusterId, ClusterId>, std::size_t> between;
  for (const auto& [citing, cited] : graph.arcs()) {
    const auto a = partition.cluster(citing);
    const auto b = partition.cluster(cited);
    if (a == b) ++meta.intra_edges[a - 1];
    else ++between[std::minmax(a, b)];
  }
  for (const auto& [key, w] : between) meta.edges.push_back({key.first, key.second, w});
  return meta;
}

std::string write_partition(const CitationGraph& graph, const Partition& partition) {
  std::string out;
  for (NodeIndex u = 0; u < graph.node_count(); ++u) {
    out += graph.id(u);
    out.push_back('\t');
    out += std::to_string(partition.cluster(u));
    out.push_back('\n');
  }
  return out;
}

}  // namespace citemap
