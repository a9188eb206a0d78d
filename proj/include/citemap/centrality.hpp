#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "citemap/clustering.hpp"
#include "citemap/corpus.hpp"
#include "citemap/graph.hpp"

namespace citemap {

/// Number of cluster members (other than `node`) that reach `node` by
/// following citing -> cited arcs without leaving the cluster. `cluster`
/// must be sorted and contain `node`.
std::size_t hierarchy_score(NodeIndex node, std::span<const NodeIndex> cluster, const CitationGraph& graph);

/// Same count over the whole graph, ignoring clusters.
std::size_t global_hierarchy_score(NodeIndex node, const CitationGraph& graph);

/// Effective number of incident edge weights, (sum w)^2 / sum w^2; 0 for an
/// isolated node. Self loops are not incident edges here.
double effective_degree(NodeIndex node, const WeightedGraph& graph);

struct CentralityScores {
  std::vector<std::size_t> hierarchy;         ///< cluster-restricted
  std::vector<std::size_t> global_hierarchy;  ///< whole graph, diagnostic
  std::vector<double> effective_degree;
};

/// Scores for every node. With per_cluster, effective degree only counts
/// edges that stay inside the node's cluster.
CentralityScores compute_centrality(const CitationGraph& graph, const Partition& partition, bool per_cluster = false);

struct CentralPapers {
  std::vector<NodeIndex> by_hierarchy;
  std::vector<NodeIndex> by_effective_degree;
};

/// Top-k members by each score, ties by (year asc, id asc). Throws
/// DomainError for an empty cluster or k == 0.
CentralPapers central_papers(std::span<const NodeIndex> cluster, const CitationGraph& graph, const Corpus& corpus,
                             const CentralityScores& scores, std::size_t k);

/// "node<TAB>hierarchy<TAB>effective_degree" lines in node order.
std::string write_centrality(const CitationGraph& graph, const CentralityScores& scores);

}  // namespace citemap
