#include "citemap/pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "citemap/error.hpp"
#include "citemap/render.hpp"

namespace citemap {

using nlohmann::json;

namespace {

template <class F>
auto run_stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw PipelineError(name, e.what());
  }
}

std::vector<const PaperRecord*> member_records(const Partition& partition, ClusterId c, const CitationGraph& graph,
                                               const Corpus& corpus) {
  std::vector<const PaperRecord*> out;
  for (const auto u : partition.members(c)) out.push_back(&corpus.at(graph.id(u)));
  return out;
}

json counted(const std::vector<CountedLabel>& items, const char* label_key, const VocabularyTree* vocab) {
  json arr = json::array();
  for (const auto& item : items) {
    json entry = {{label_key, item.label}, {"papers", item.count}};
    if (vocab) entry["name"] = vocab->contains(item.label) ? json(vocab->name(item.label)) : json(nullptr);
    arr.push_back(std::move(entry));
  }
  return arr;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

double one_decimal(double v) { return std::round(v * 10.0) / 10.0; }

}  // namespace

std::string_view to_string(ClusterMethod method) {
  return method == ClusterMethod::kGreedy ? "greedy" : "multilevel";
}

ClusterMethod parse_cluster_method(std::string_view name) {
  if (name == "multilevel") return ClusterMethod::kMultilevel;
  if (name == "greedy") return ClusterMethod::kGreedy;
  throw InputError("unknown clustering method '" + std::string(name) + "' (expected multilevel or greedy)");
}

void PipelineConfig::validate() const {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw InputError("--fraction must lie in (0, 1]");
  try {
    thresholds.validate();
  } catch (const DomainError& e) {
    throw InputError(std::string("--thresholds: ") + e.what());
  }
  if (top_k == 0) throw InputError("--top-k must be at least 1");
  if (layout_iterations == 0) throw InputError("--iterations must be at least 1");
  if (corpus_path.empty() == tagged_export_path.empty()) {
    throw InputError("exactly one of --corpus and --tagged-export is required");
  }
  if (vocabulary_path.empty()) throw InputError("--vocab is required");
}

PipelineResult run_pipeline(const PipelineConfig& config, const Corpus& corpus, const VocabularyTree& vocab,
                            const IngestStats& ingest) {
  PipelineResult r;
  r.warnings = ingest.warnings;
  r.corpus_size = corpus.size();

  const Corpus selected = run_stage("select", [&] { return select_top_cited(corpus, config.fraction, config.include_ties); });
  r.selected_size = selected.size();
  r.coverage = run_stage("coverage", [&] { return citation_coverage(selected, corpus); });

  const CitationGraph selected_graph = run_stage("graph", [&] { return build_graph(selected, &r.warnings); });
  const auto components = run_stage("components", [&] { return weak_components(selected_graph); });
  r.component_count = components.size();
  r.largest_component = components.empty() ? 0 : components.front().size();
  std::set<PaperId> core;
  if (!components.empty()) {
    for (const auto u : components.front()) core.insert(selected_graph.id(u));
  }

  r.network_corpus = run_stage("filter", [&] {
    return filter_by_required_terms(selected.restrict_to(core), config.required_terms);
  });
  if (r.network_corpus.empty()) {
    throw PipelineError("filter", "no papers left after the required-term filter");
  }
  r.graph = run_stage("graph", [&] { return build_graph(r.network_corpus); });
  const WeightedGraph view = r.graph.undirected();

  run_stage("cluster", [&] {
    MultilevelOptions opts;
    opts.seed = config.seed;
    Partition multilevel = multilevel_transfer(view, opts);
    Partition greedy = greedy_agglomerative(view);
    if (view.total_weight() > 0.0) {
      r.modularity_multilevel = modularity(view, multilevel);
      r.modularity_greedy = modularity(view, greedy);
    }
    r.partition = config.method == ClusterMethod::kGreedy ? std::move(greedy) : std::move(multilevel);
    r.modularity = config.method == ClusterMethod::kGreedy ? r.modularity_greedy : r.modularity_multilevel;
    return 0;
  });
  r.meta = run_stage("metagraph", [&] { return build_metagraph(r.graph, r.partition); });

  const TermPolicy policy{config.strict_terms};
  run_stage("profiles", [&] {
    for (ClusterId c = 1; c <= r.partition.cluster_count(); ++c) {
      const auto members = member_records(r.partition, c, r.graph, r.network_corpus);
      r.profiles.push_back(profile_cluster(c, members, vocab, config.thresholds, config.top_k, policy));
      if (r.profiles.back().unrated_members > 0) {
        r.warnings.push_back("cluster " + std::to_string(c) + ": " + std::to_string(r.profiles.back().unrated_members) +
                             " paper(s) without terms excluded from the clinical rate");
      }
    }
    return 0;
  });

  run_stage("centrality", [&] {
    r.scores = compute_centrality(r.graph, r.partition, config.per_cluster);
    for (ClusterId c = 1; c <= r.partition.cluster_count(); ++c) {
      r.central.push_back(central_papers(r.partition.members(c), r.graph, r.network_corpus, r.scores, config.top_k));
    }
    return 0;
  });

  std::vector<std::optional<double>> rates(r.graph.node_count());
  for (NodeIndex u = 0; u < r.graph.node_count(); ++u) {
    const auto& paper = r.network_corpus.at(r.graph.id(u));
    try {
      rates[u] = clinical_rate(paper, vocab, policy);
    } catch (const DomainError&) {
      rates[u] = std::nullopt;
    }
  }

  LayoutResult layout = run_stage("layout", [&] {
    LayoutOptions opts;
    opts.seed = config.seed;
    opts.iterations = config.layout_iterations;
    LayoutResult l = spring_layout(view, opts);
    assign_colors(l, rates, config.colors);
    return l;
  });

  run_stage("render", [&] {
    r.artifacts.svg = render_svg(r.graph, layout, r.partition, r.meta, r.profiles, config.colors);
    r.artifacts.graphml = export_graphml(r.graph, r.network_corpus, layout, r.partition, r.scores, rates);
    r.artifacts.partition_tsv = write_partition(r.graph, r.partition);
    r.artifacts.centrality_tsv = write_centrality(r.graph, r.scores);
    r.artifacts.edges_tsv = write_edge_list(r.graph);
    return 0;
  });

  // --- report ---
  json report;
  report["version"] = kVersion;
  report["config"] = {
      {"corpus", config.corpus_path},
      {"tagged_export", config.tagged_export_path},
      {"vocabulary", config.vocabulary_path},
      {"fraction", config.fraction},
      {"required_terms", config.required_terms},
      {"method", to_string(config.method)},
      {"seed", config.seed},
      {"thresholds", {{"translational", config.thresholds.translational}, {"clinical", config.thresholds.clinical}}},
      {"top_k", config.top_k},
      {"include_ties", config.include_ties},
      {"strict_terms", config.strict_terms},
      {"per_cluster", config.per_cluster},
      {"color_low", to_hex(config.colors.low)},
      {"color_high", to_hex(config.colors.high)},
      {"layout_iterations", config.layout_iterations},
  };
  json ingest_json = {{"format", ingest.format}, {"dangling_references", ingest.dangling_references}};
  if (ingest.resolution) {
    ingest_json["references"] = {{"total", ingest.resolution->total},
                                 {"resolved", ingest.resolution->resolved},
                                 {"unresolved", ingest.resolution->unresolved},
                                 {"ambiguous", ingest.resolution->ambiguous}};
  }
  report["corpus"] = {{"papers", r.corpus_size},
                      {"selected", r.selected_size},
                      {"citation_coverage", r.coverage},
                      {"ingest", ingest_json}};
  report["components"] = {{"count", r.component_count}, {"largest", r.largest_component}};
  report["network"] = {{"papers", r.graph.node_count()},
                       {"citations", r.graph.arcs().size()},
                       {"undirected_edges", view.edge_count()}};
  report["clustering"] = {{"method", to_string(config.method)},
                          {"seed", config.seed},
                          {"clusters", r.partition.cluster_count()},
                          {"modularity", optional_number(r.modularity)},
                          {"modularity_multilevel", optional_number(r.modularity_multilevel)},
                          {"modularity_greedy", optional_number(r.modularity_greedy)}};

  json assignment = json::object();
  for (NodeIndex u = 0; u < r.graph.node_count(); ++u) assignment[r.graph.id(u)] = r.partition.cluster(u);
  report["partition"] = std::move(assignment);

  json meta_nodes = json::array();
  for (std::size_t c = 0; c < r.meta.sizes.size(); ++c) {
    meta_nodes.push_back({{"cluster", c + 1}, {"size", r.meta.sizes[c]}, {"intra_citations", r.meta.intra_edges[c]}});
  }
  json meta_edges = json::array();
  for (const auto& e : r.meta.edges) meta_edges.push_back({{"a", e.a}, {"b", e.b}, {"citations", e.weight}});
  report["metagraph"] = {{"nodes", meta_nodes}, {"edges", meta_edges}};

  json profiles = json::array();
  for (std::size_t i = 0; i < r.profiles.size(); ++i) {
    const auto& p = r.profiles[i];
    const auto paper_entries = [&](const std::vector<NodeIndex>& nodes) {
      json arr = json::array();
      for (const auto u : nodes) {
        const auto& paper = r.network_corpus.at(r.graph.id(u));
        arr.push_back({{"id", paper.id},
                       {"title", paper.title},
                       {"year", paper.year},
                       {"hierarchy", r.scores.hierarchy[u]},
                       {"global_hierarchy", r.scores.global_hierarchy[u]},
                       {"effective_degree", r.scores.effective_degree[u]}});
      }
      return arr;
    };
    profiles.push_back({
        {"cluster", p.cluster},
        {"size", p.size},
        {"avg_year", one_decimal(p.avg_year)},
        {"year_range", {p.year_range.first, p.year_range.second}},
        {"clinical_rate", optional_number(p.clinical_rate)},
        {"stage", p.stage ? json(std::string(to_string(*p.stage))) : json(nullptr)},
        {"unrated_papers", p.unrated_members},
        {"top_terms", counted(p.top_terms, "term", &vocab)},
        {"top_institutions", counted(p.top_institutions, "institution", nullptr)},
        {"central_papers",
         {{"by_hierarchy", paper_entries(r.central[i].by_hierarchy)},
          {"by_effective_degree", paper_entries(r.central[i].by_effective_degree)}}},
    });
  }
  report["profiles"] = std::move(profiles);
  report["stage_thresholds"] = {{"translational", config.thresholds.translational},
                                {"clinical", config.thresholds.clinical},
                                {"note", "calibrated reconstruction; cut points are configurable"}};
  report["warnings"] = r.warnings;
  r.artifacts.report = report.dump(2) + "\n";
  return r;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  config.validate();
  IngestStats ingest;
  Corpus corpus;
  if (!config.corpus_path.empty()) {
    ParseReport report;
    corpus = parse_corpus(read_file(config.corpus_path), &report);
    ingest.format = "native";
    ingest.dangling_references = report.dangling_references;
    ingest.warnings = std::move(report.warnings);
  } else {
    auto exported = parse_tagged_export(read_file(config.tagged_export_path));
    ResolveReport resolution;
    corpus = resolve_references(exported.records, &resolution);
    ingest.format = "tagged";
    ingest.resolution = resolution;
    ingest.warnings = std::move(exported.warnings);
  }
  const VocabularyTree vocab = load_vocabulary(read_file(config.vocabulary_path));
  return run_pipeline(config, corpus, vocab, ingest);
}

void write_artifacts(const PipelineArtifacts& artifacts, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw PipelineError("write", "cannot create '" + dir + "': " + ec.message());
  const auto put = [&](const char* name, const std::string& content) {
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw PipelineError("write", "cannot write '" + path.string() + "'");
  };
  put("report.json", artifacts.report);
  put("map.svg", artifacts.svg);
  put("network.graphml", artifacts.graphml);
  put("partition.tsv", artifacts.partition_tsv);
  put("centrality.tsv", artifacts.centrality_tsv);
  put("edges.tsv", artifacts.edges_tsv);
}

}  // namespace citemap
