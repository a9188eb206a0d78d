#pragma once

#include <optional>
#include <span>
#include <string>

#include "citemap/centrality.hpp"
#include "citemap/clustering.hpp"
#include "citemap/corpus.hpp"
#include "citemap/graph.hpp"
#include "citemap/layout.hpp"
#include "citemap/semantics.hpp"

namespace citemap {

/// SVG 1.1 map: the citation network on the left, and, when there is more
/// than one cluster, the meta-graph on the right (meta-node radius grows
/// with sqrt(cluster size), meta-edge stroke with the citation count).
/// `profiles` is indexed by cluster id - 1.
std::string render_svg(const CitationGraph& graph, const LayoutResult& layout, const Partition& partition,
                       const MetaGraph& meta, std::span<const ClusterProfile> profiles,
                       const ColorScale& scale = {});

/// GraphML with declared keys x, y, cluster, clinical_rate, hierarchy,
/// effective_degree, year, institution, country. Unknown rates are written
/// as NaN. Throws DomainError naming the first node an input does not cover.
std::string export_graphml(const CitationGraph& graph, const Corpus& corpus, const LayoutResult& layout,
                           const Partition& partition, const CentralityScores& scores,
                           std::span<const std::optional<double>> rates);

}  // namespace citemap
