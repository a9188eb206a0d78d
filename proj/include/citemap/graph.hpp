#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "citemap/corpus.hpp"

namespace citemap {

using NodeIndex = std::uint32_t;

/// Undirected weighted simple graph with optional self-loop weights. Self
/// loops only arise from coarsening during clustering.
class WeightedGraph {
public:
  struct Neighbor {
    NodeIndex node;
    double weight;
  };
  struct Edge {
    NodeIndex u;
    NodeIndex v;
    double weight;
  };

  WeightedGraph() = default;
  /// Parallel edges are merged by summing weights; u == v adds a self loop.
  WeightedGraph(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  /// Neighbors other than the node itself, sorted by index.
  std::span<const Neighbor> neighbors(NodeIndex u) const { return adjacency_[u]; }
  double self_loop(NodeIndex u) const { return self_loops_[u]; }
  /// Sum of incident weights, self loops counted twice.
  double strength(NodeIndex u) const { return strength_[u]; }
  /// Total edge weight m (each edge and self loop once).
  double total_weight() const noexcept { return total_weight_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::vector<Edge> edges() const;

private:
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<double> self_loops_;
  std::vector<double> strength_;
  double total_weight_ = 0.0;
  std::size_t edge_count_ = 0;
};

/// Directed citing -> cited graph over a corpus. Nodes are indexed in
/// ascending id order.
class CitationGraph {
public:
  using Arc = std::pair<NodeIndex, NodeIndex>;  ///< (citing, cited)

  CitationGraph() = default;
  CitationGraph(std::vector<PaperId> ids, std::vector<Arc> arcs);

  std::size_t node_count() const noexcept { return ids_.size(); }
  const std::vector<PaperId>& ids() const noexcept { return ids_; }
  const PaperId& id(NodeIndex u) const { return ids_[u]; }
  /// Throws DomainError for ids outside the graph.
  NodeIndex index_of(std::string_view id) const;
  bool contains(std::string_view id) const;

  /// Sorted (citing, cited) pairs.
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  std::span<const NodeIndex> cited_by(NodeIndex u) const { return out_[u]; }  ///< papers u cites
  std::span<const NodeIndex> citing(NodeIndex u) const { return in_[u]; }     ///< papers citing u

  /// Weight 1 per cited/citing pair, 2 for reciprocal citations.
  WeightedGraph undirected() const;

private:
  std::vector<PaperId> ids_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<NodeIndex>> out_;
  std::vector<std::vector<NodeIndex>> in_;
};

/// Anachronistic edges (citing paper older than the cited one) are reported
/// through `warnings` but kept.
CitationGraph build_graph(const Corpus& corpus, std::vector<std::string>* warnings = nullptr);

/// The first ceil(fraction * n) papers by (times cited desc, year asc, id
/// asc). With include_ties, every paper tied with the last one selected is
/// kept as well.
Corpus select_top_cited(const Corpus& corpus, double fraction, bool include_ties = false);

/// Share of the corpus' index citations received by `selected`.
double citation_coverage(const Corpus& selected, const Corpus& corpus);

/// Connected components of the undirected view, largest first, ties broken
/// by smallest member index. Members are sorted.
std::vector<std::vector<NodeIndex>> weak_components(const CitationGraph& graph);

Corpus filter_by_required_terms(const Corpus& corpus, const std::set<TermId>& required);

/// "citing<TAB>cited" lines in arc order.
std::string write_edge_list(const CitationGraph& graph);

}  // namespace citemap
