#include "citemap/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include "citemap/error.hpp"

namespace citemap {

WeightedGraph::WeightedGraph(std::size_t node_count, std::span<const Edge> edges)
    : adjacency_(node_count), self_loops_(node_count, 0.0), strength_(node_count, 0.0) {
  std::map<std::pair<NodeIndex, NodeIndex>, double> merged;
  for (const auto& e : edges) {
    if (e.u >= node_count || e.v >= node_count) throw DomainError("edge endpoint out of range");
    if (e.u == e.v) {
      self_loops_[e.u] += e.weight;
    } else {
      merged[std::minmax(e.u, e.v)] += e.weight;
    }
  }
  for (const auto& [key, w] : merged) {
    adjacency_[key.first].push_back({key.second, w});
    adjacency_[key.second].push_back({key.first, w});
    total_weight_ += w;
    strength_[key.first] += w;
    strength_[key.second] += w;
  }
  for (std::size_t u = 0; u < node_count; ++u) {
    std::sort(adjacency_[u].begin(), adjacency_[u].end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    total_weight_ += self_loops_[u];
    strength_[u] += 2.0 * self_loops_[u];
  }
  edge_count_ = merged.size();
}

std::vector<WeightedGraph::Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  for (NodeIndex u = 0; u < adjacency_.size(); ++u) {
    if (self_loops_[u] != 0.0) out.push_back({u, u, self_loops_[u]});
    for (const auto& n : adjacency_[u]) {
      if (n.node > u) out.push_back({u, n.node, n.weight});
    }
  }
  return out;
}

CitationGraph::CitationGraph(std::vector<PaperId> ids, std::vector<Arc> arcs)
    : ids_(std::move(ids)), arcs_(std::move(arcs)), out_(ids_.size()), in_(ids_.size()) {
  if (!std::is_sorted(ids_.begin(), ids_.end()) || std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
    throw DomainError("graph ids must be unique and sorted");
  }
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
  for (const auto& [citing, cited] : arcs_) {
    if (citing >= ids_.size() || cited >= ids_.size()) throw DomainError("arc endpoint out of range");
    if (citing == cited) throw DomainError("self-loop on '" + ids_[citing] + "'");
    out_[citing].push_back(cited);
    in_[cited].push_back(citing);
  }
  for (auto& v : in_) std::sort(v.begin(), v.end());
}

NodeIndex CitationGraph::index_of(std::string_view id) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) throw DomainError("node '" + std::string(id) + "' not in graph");
  return static_cast<NodeIndex>(it - ids_.begin());
}

bool CitationGraph::contains(std::string_view id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

WeightedGraph CitationGraph::undirected() const {
  std::vector<WeightedGraph::Edge> edges;
  edges.reserve(arcs_.size());
  for (const auto& [citing, cited] : arcs_) edges.push_back({citing, cited, 1.0});
  return WeightedGraph(ids_.size(), edges);
}

CitationGraph build_graph(const Corpus& corpus, std::vector<std::string>* warnings) {
  std::vector<PaperId> ids;
  ids.reserve(corpus.size());
  for (const auto& p : corpus.papers()) ids.push_back(p.id);
  std::sort(ids.begin(), ids.end());
  const auto index = [&](const PaperId& id) {
    return static_cast<NodeIndex>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  std::vector<CitationGraph::Arc> arcs;
  for (const auto& p : corpus.papers()) {
    for (const auto& ref : p.cited_refs) {
      const auto& cited = corpus.at(ref);
      if (warnings && p.year < cited.year) {
        warnings->push_back("anachronistic citation " + p.id + " (" + std::to_string(p.year) + ") -> " + cited.id +
                            " (" + std::to_string(cited.year) + ")");
      }
      arcs.emplace_back(index(p.id), index(ref));
    }
  }
  return CitationGraph(std::move(ids), std::move(arcs));
}

Corpus select_top_cited(const Corpus& corpus, double fraction, bool include_ties) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw DomainError("selection fraction must lie in (0, 1]");
  if (corpus.empty()) throw DomainError("cannot select from an empty corpus");

  const auto& papers = corpus.papers();
  std::vector<std::size_t> order(papers.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = papers[a];
    const auto& pb = papers[b];
    return std::tuple(-pa.external_citation_count, pa.year, std::string_view(pa.id)) <
           std::tuple(-pb.external_citation_count, pb.year, std::string_view(pb.id));
  });

  // 0.2 * 1747 = 349.4 must give 350, but 0.2 * 10 must give 2 despite
  // floating error; snap to the nearest integer when within 1e-9.
  const double exact = fraction * static_cast<double>(papers.size());
  const double nearest = std::round(exact);
  std::size_t keep = static_cast<std::size_t>(std::abs(exact - nearest) < 1e-9 ? nearest : std::ceil(exact));
  keep = std::clamp<std::size_t>(keep, 1, papers.size());
  if (include_ties) {
    const long long cutoff = papers[order[keep - 1]].external_citation_count;
    while (keep < order.size() && papers[order[keep]].external_citation_count == cutoff) ++keep;
  }

  std::set<PaperId> selected;
  for (std::size_t i = 0; i < keep; ++i) selected.insert(papers[order[i]].id);
  return corpus.restrict_to(selected);
}

double citation_coverage(const Corpus& selected, const Corpus& corpus) {
  long double part = 0;
  long double total = 0;
  for (const auto& p : corpus.papers()) total += static_cast<long double>(p.external_citation_count);
  for (const auto& p : selected.papers()) {
    const auto* match = corpus.find(p.id);
    if (!match) throw DomainError("selected paper '" + p.id + "' is not in the corpus");
    part += static_cast<long double>(match->external_citation_count);
  }
  if (total == 0) return 0.0;
  return static_cast<double>(part / total);
}

std::vector<std::vector<NodeIndex>> weak_components(const CitationGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<NodeIndex> parent(n);
  std::iota(parent.begin(), parent.end(), NodeIndex{0});
  const auto find = [&](NodeIndex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [a, b] : graph.arcs()) {
    const auto ra = find(a);
    const auto rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::map<NodeIndex, std::vector<NodeIndex>> groups;
  for (NodeIndex u = 0; u < n; ++u) groups[find(u)].push_back(u);

  std::vector<std::vector<NodeIndex>> out;
  out.reserve(groups.size());
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return out;
}

Corpus filter_by_required_terms(const Corpus& corpus, const std::set<TermId>& required) {
  std::set<PaperId> keep;
  for (const auto& p : corpus.papers()) {
    if (std::includes(p.terms.begin(), p.terms.end(), required.begin(), required.end())) keep.insert(p.id);
  }
  return corpus.restrict_to(keep);
}

std::string write_edge_list(const CitationGraph& graph) {
  std::string out;
  for (const auto& [citing, cited] : graph.arcs()) {
    out += graph.id(citing);
    out.push_back('\t');
    out += graph.id(cited);
    out.push_back('\n');
  }
  return out;
}

}  // namespace citemap
