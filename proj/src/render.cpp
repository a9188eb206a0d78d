#include "citemap/render.hpp"

#include <algorithm>
#include <cmath>

#include "citemap/error.hpp"
#include "citemap/text.hpp"

namespace citemap {

namespace {

constexpr double kPanelGap = 40.0;
constexpr double kNodeRadius = 5.0;
constexpr double kMaxMetaRadius = 60.0;
constexpr double kMinMetaStroke = 1.0;
constexpr double kMaxMetaStroke = 16.0;

std::string num(double v) { return text::fixed(v, 2); }

}  // namespace

std::string render_svg(const CitationGraph& graph, const LayoutResult& layout, const Partition& partition,
                       const MetaGraph& meta, std::span<const ClusterProfile> profiles, const ColorScale& scale) {
  const std::size_t n = graph.node_count();
  if (layout.positions.size() != n || layout.colors.size() != n) throw DomainError("layout does not cover the graph");
  if (partition.node_count() != n) throw DomainError("partition does not cover the graph");

  const bool meta_panel = partition.cluster_count() > 1;
  const double total_width = meta_panel ? 2.0 * layout.width + kPanelGap : layout.width;
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(total_width) + "\" height=\"" +
         num(layout.height) + "\" viewBox=\"0 0 " + num(total_width) + " " + num(layout.height) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + num(total_width) + "\" height=\"" + num(layout.height) +
         "\" fill=\"#ffffff\"/>\n";

  svg += "<g id=\"network\">\n<g id=\"edges\" stroke=\"#b0b0b0\" stroke-width=\"0.6\">\n";
  for (const auto& [citing, cited] : graph.arcs()) {
    const auto& a = layout.positions[citing];
    const auto& b = layout.positions[cited];
    svg += "<line x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) + "\" x2=\"" + num(b.x) + "\" y2=\"" + num(b.y) + "\"/>\n";
  }
  svg += "</g>\n<g id=\"nodes\" stroke=\"#303030\" stroke-width=\"0.5\">\n";
  for (NodeIndex u = 0; u < n; ++u) {
    const auto& p = layout.positions[u];
    svg += "<circle cx=\"" + num(p.x) + "\" cy=\"" + num(p.y) + "\" r=\"" + num(kNodeRadius) + "\" fill=\"" +
           to_hex(layout.colors[u]) + "\"><title>" + text::xml_escape(graph.id(u)) + " (cluster " +
           std::to_string(partition.cluster(u)) + ")</title></circle>\n";
  }
  svg += "</g>\n</g>\n";

  if (meta_panel) {
    const std::size_t k = partition.cluster_count();
    if (meta.sizes.size() != k) throw DomainError("meta-graph does not match the partition");
    // Meta-nodes sit at the centroid of their members.
    std::vector<Point> centroid(k);
    for (ClusterId c = 1; c <= k; ++c) {
      for (const auto u : partition.members(c)) {
        centroid[c - 1].x += layout.positions[u].x;
        centroid[c - 1].y += layout.positions[u].y;
      }
      centroid[c - 1].x /= static_cast<double>(partition.size(c));
      centroid[c - 1].y /= static_cast<double>(partition.size(c));
    }
    const double max_size = static_cast<double>(*std::max_element(meta.sizes.begin(), meta.sizes.end()));
    std::size_t max_weight = 0;
    for (const auto& e : meta.edges) max_weight = std::max(max_weight, e.weight);

    std::optional<double> lo, hi;
    for (const auto& prof : profiles) {
      if (!prof.clinical_rate) continue;
      lo = lo ? std::min(*lo, *prof.clinical_rate) : *prof.clinical_rate;
      hi = hi ? std::max(*hi, *prof.clinical_rate) : *prof.clinical_rate;
    }

    svg += "<g id=\"meta\" transform=\"translate(" + num(layout.width + kPanelGap) + ",0)\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + num(layout.width) + "\" height=\"" + num(layout.height) +
           "\" fill=\"none\" stroke=\"#d0d0d0\"/>\n";
    svg += "<g id=\"meta-edges\" stroke=\"#808080\" stroke-opacity=\"0.7\">\n";
    for (const auto& e : meta.edges) {
      const auto& a = centroid[e.a - 1];
      const auto& b = centroid[e.b - 1];
      const double w = max_weight == 0 ? kMinMetaStroke
                                       : kMinMetaStroke + (kMaxMetaStroke - kMinMetaStroke) *
                                                              static_cast<double>(e.weight) /
                                                              static_cast<double>(max_weight);
      svg += "<line x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) + "\" x2=\"" + num(b.x) + "\" y2=\"" + num(b.y) +
             "\" stroke-width=\"" + num(w) + "\"><title>" + std::to_string(e.a) + "-" + std::to_string(e.b) + ": " +
             std::to_string(e.weight) + " citations</title></line>\n";
    }
    svg += "</g>\n<g id=\"meta-nodes\" stroke=\"#303030\" stroke-width=\"1\">\n";
    for (ClusterId c = 1; c <= k; ++c) {
      const auto& p = centroid[c - 1];
      const double r = kMaxMetaRadius * std::sqrt(static_cast<double>(meta.sizes[c - 1]) / max_size);
      Rgb fill = kUnratedColor;
      if (c - 1 < profiles.size() && profiles[c - 1].clinical_rate) {
        fill = color_for_rate(*profiles[c - 1].clinical_rate, *lo, *hi, scale);
      }
      svg += "<circle cx=\"" + num(p.x) + "\" cy=\"" + num(p.y) + "\" r=\"" + num(r) + "\" fill=\"" + to_hex(fill) +
             "\" fill-opacity=\"0.85\"><title>cluster " + std::to_string(c) + ": " +
             std::to_string(meta.sizes[c - 1]) + " papers</title></circle>\n";
      svg += "<text x=\"" + num(p.x) + "\" y=\"" + num(p.y + 4.0) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + std::to_string(c) +
             "</text>\n";
    }
    svg += "</g>\n</g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string export_graphml(const CitationGraph& graph, const Corpus& corpus, const LayoutResult& layout,
                           const Partition& partition, const CentralityScores& scores,
                           std::span<const std::optional<double>> rates) {
  const std::size_t n = graph.node_count();
  const auto check = [&](std::size_t provided, const char* what) {
    if (provided < n) {
      throw DomainError("missing attribute '" + std::string(what) + "' for node '" + graph.id(static_cast<NodeIndex>(provided)) + "'");
    }
  };
  check(layout.positions.size(), "x");
  check(partition.node_count(), "cluster");
  check(rates.size(), "clinical_rate");
  check(scores.hierarchy.size(), "hierarchy");
  check(scores.effective_degree.size(), "effective_degree");
  for (NodeIndex u = 0; u < n; ++u) {
    if (!corpus.contains(graph.id(u))) throw DomainError("missing attribute 'year' for node '" + graph.id(u) + "'");
  }

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" "
         "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
         "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
         "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
  const struct {
    const char* name;
    const char* type;
  } keys[] = {{"x", "double"},           {"y", "double"},          {"cluster", "int"},
              {"clinical_rate", "double"}, {"hierarchy", "int"},   {"effective_degree", "double"},
              {"year", "int"},           {"institution", "string"}, {"country", "string"}};
  for (const auto& key : keys) {
    out += "  <key id=\"" + std::string(key.name) + "\" for=\"node\" attr.name=\"" + key.name + "\" attr.type=\"" +
           key.type + "\"/>\n";
  }
  out += "  <graph id=\"citations\" edgedefault=\"directed\">\n";
  for (NodeIndex u = 0; u < n; ++u) {
    const auto& paper = corpus.at(graph.id(u));
    const auto data = [&](const char* key, const std::string& value) {
      out += "      <data key=\"" + std::string(key) + "\">" + text::xml_escape(value) + "</data>\n";
    };
    out += "    <node id=\"" + text::xml_escape(graph.id(u)) + "\">\n";
    data("x", text::fixed(layout.positions[u].x, 4));
    data("y", text::fixed(layout.positions[u].y, 4));
    data("cluster", std::to_string(partition.cluster(u)));
    data("clinical_rate", rates[u] ? text::fixed(*rates[u], 6) : "NaN");
    data("hierarchy", std::to_string(scores.hierarchy[u]));
    data("effective_degree", text::fixed(scores.effective_degree[u], 6));
    data("year", std::to_string(paper.year));
    data("institution", paper.corr_institution.value_or(""));
    data("country", paper.corr_country.value_or(""));
    out += "    </node>\n";
  }
  std::size_t e = 0;
  for (const auto& [citing, cited] : graph.arcs()) {
    out += "    <edge id=\"e" + std::to_string(e++) + "\" source=\"" + text::xml_escape(graph.id(citing)) +
           "\" target=\"" + text::xml_escape(graph.id(cited)) + "\"/>\n";
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

}  // namespace citemap
