#include "citemap/centrality.hpp"

#include <algorithm>
#include <tuple>

#include "citemap/error.hpp"
#include "citemap/text.hpp"

namespace citemap {

namespace {

// Reverse BFS over "citing" links: everything found is a descendant.
template <class Allowed>
std::size_t descendants(NodeIndex node, const CitationGraph& graph, Allowed allowed) {
  std::vector<bool> seen(graph.node_count(), false);
  std::vector<NodeIndex> stack{node};
  seen[node] = true;
  std::size_t count = 0;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (const auto v : graph.citing(u)) {
      if (seen[v] || !allowed(v)) continue;
      seen[v] = true;
      ++count;
      stack.push_back(v);
    }
  }
  return count;
}

}  // namespace

std::size_t hierarchy_score(NodeIndex node, std::span<const NodeIndex> cluster, const CitationGraph& graph) {
  if (!std::binary_search(cluster.begin(), cluster.end(), node)) {
    throw DomainError("node '" + graph.id(node) + "' is not in the cluster");
  }
  return descendants(node, graph, [&](NodeIndex v) { return std::binary_search(cluster.begin(), cluster.end(), v); });
}

std::size_t global_hierarchy_score(NodeIndex node, const CitationGraph& graph) {
  return descendants(node, graph, [](NodeIndex) { return true; });
}

double effective_degree(NodeIndex node, const WeightedGraph& graph) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& n : graph.neighbors(node)) {
    sum += n.weight;
    sum_sq += n.weight * n.weight;
  }
  return sum_sq == 0.0 ? 0.0 : sum * sum / sum_sq;
}

CentralityScores compute_centrality(const CitationGraph& graph, const Partition& partition, bool per_cluster) {
  if (partition.node_count() != graph.node_count()) throw DomainError("partition does not cover the graph");
  const std::size_t n = graph.node_count();
  CentralityScores s;
  s.hierarchy.resize(n);
  s.global_hierarchy.resize(n);
  s.effective_degree.resize(n);
  for (NodeIndex u = 0; u < n; ++u) {
    s.hierarchy[u] = hierarchy_score(u, partition.members(partition.cluster(u)), graph);
    s.global_hierarchy[u] = global_hierarchy_score(u, graph);
  }

  WeightedGraph view = graph.undirected();
  if (per_cluster) {
    std::vector<WeightedGraph::Edge> kept;
    for (const auto& e : view.edges()) {
      if (partition.cluster(e.u) == partition.cluster(e.v)) kept.push_back(e);
    }
    view = WeightedGraph(n, kept);
  }
  for (NodeIndex u = 0; u < n; ++u) s.effective_degree[u] = effective_degree(u, view);
  return s;
}

CentralPapers central_papers(std::span<const NodeIndex> cluster, const CitationGraph& graph, const Corpus& corpus,
                             const CentralityScores& scores, std::size_t k) {
  if (cluster.empty()) throw DomainError("empty cluster");
  if (k == 0) throw DomainError("top-k must be at least 1");

  const auto tie_key = [&](NodeIndex u) {
    const auto& id = graph.id(u);
    return std::tuple(corpus.at(id).year, std::string_view(id));
  };
  const auto top = [&](auto score) {
    std::vector<NodeIndex> order(cluster.begin(), cluster.end());
    std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
      const auto sa = score(a);
      const auto sb = score(b);
      if (sa != sb) return sa > sb;
      return tie_key(a) < tie_key(b);
    });
    if (order.size() > k) order.resize(k);
    return order;
  };

  CentralPapers out;
  out.by_hierarchy = top([&](NodeIndex u) { return static_cast<double>(scores.hierarchy[u]); });
  out.by_effective_degree = top([&](NodeIndex u) { return scores.effective_degree[u]; });
  return out;
}

std::string write_centrality(const CitationGraph& graph, const CentralityScores& scores) {
  std::string out;
  for (NodeIndex u = 0; u < graph.node_count(); ++u) {
    out += graph.id(u);
    out.push_back('\t');
    out += std::to_string(scores.hierarchy[u]);
    out.push_back('\t');
    out += text::fixed(scores.effective_degree[u], 6);
    out.push_back('\n');
  }
  return out;
}

}  // namespace citemap
