#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "citemap/graph.hpp"

namespace citemap {

using ClusterId = std::uint32_t;

/// Total node -> cluster assignment. Cluster ids run from 1 to
/// cluster_count(), numbered by size rank (largest first, ties by smallest
/// member index).
class Partition {
public:
  Partition() = default;

  /// Relabels arbitrary non-negative labels into size-rank order.
  static Partition from_labels(std::span<const std::size_t> labels);

  std::size_t node_count() const noexcept { return cluster_of_.size(); }
  std::size_t cluster_count() const noexcept { return members_.size(); }
  ClusterId cluster(NodeIndex node) const { return cluster_of_[node]; }
  /// Sorted members of cluster c (1-based).
  const std::vector<NodeIndex>& members(ClusterId c) const { return members_.at(c - 1); }
  std::size_t size(ClusterId c) const { return members(c).size(); }
  /// 0-based labels, i.e. cluster(node) - 1 for every node.
  std::vector<std::size_t> labels() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.cluster_of_ == b.cluster_of_; }

private:
  std::vector<ClusterId> cluster_of_;
  std::vector<std::vector<NodeIndex>> members_;
};

/// Newman modularity Q = sum_c (e_cc - a_c^2) on the weighted undirected
/// graph. Throws DomainError on an edgeless graph or a size mismatch.
double modularity(const WeightedGraph& graph, const Partition& partition);
double modularity(const WeightedGraph& graph, std::span<const std::size_t> labels);

/// Exact change in Q from moving `node` into cluster `target` (labels are
/// arbitrary, `target` may be a fresh label). This is the quantity the
/// transfer phase maximises.
double move_gain(const WeightedGraph& graph, std::span<const std::size_t> labels, NodeIndex node, std::size_t target);

/// Agglomerative merging from singletons, always joining the pair with the
/// largest positive gain (ties: lexicographically smallest pair).
Partition greedy_agglomerative(const WeightedGraph& graph);

struct MultilevelOptions {
  std::uint64_t seed = 42;
  /// Re-run the transfer phase on every level while projecting back down,
  /// then finish with a vertex-mover pass that accepts temporary losses.
  bool refine = true;
  /// Gains at or below this are treated as no improvement.
  double tolerance = 1e-12;
  /// Independent passes drawn from the same seeded stream; the highest-Q
  /// result is kept (earliest pass on ties).
  std::size_t restarts = 8;
};

/// Seeded multilevel transfer optimisation: local node transfers until a
/// sweep makes no move, then coarsening of clusters into nodes, repeated
/// until a level brings no improvement. Repeated `restarts` times.
Partition multilevel_transfer(const WeightedGraph& graph, const MultilevelOptions& options = {});
Partition multilevel_transfer(const WeightedGraph& graph, std::uint64_t seed);

struct BruteForceResult {
  Partition partition;
  double modularity = 0.0;
};

inline constexpr std::size_t kBruteForceMaxNodes = 12;

/// Exhaustive search over all set partitions (restricted growth strings);
/// ties keep the lexicographically smallest string.
BruteForceResult brute_force_best_partition(const WeightedGraph& graph);

struct MetaGraph {
  struct MetaEdge {
    ClusterId a;  ///< a < b
    ClusterId b;
    std::size_t weight;  ///< directed citations between a and b, either way
  };
  std::vector<std::size_t> sizes;        ///< index c - 1
  std::vector<std::size_t> intra_edges;  ///< directed edges inside each cluster
  std::vector<MetaEdge> edges;           ///< sorted by (a, b)

  std::size_t total_meta_weight() const;
  std::size_t total_intra_edges() const;
};

MetaGraph build_metagraph(const CitationGraph& graph, const Partition& partition);

/// "node<TAB>cluster" lines in node order.
std::string write_partition(const CitationGraph& graph, const Partition& partition);

}  // namespace citemap
