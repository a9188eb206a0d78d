#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "citemap/centrality.hpp"
#include "citemap/clustering.hpp"
#include "citemap/corpus.hpp"
#include "citemap/graph.hpp"
#include "citemap/layout.hpp"
#include "citemap/semantics.hpp"

namespace citemap {

inline constexpr const char* kVersion = "citemap 1.0.0";

enum class ClusterMethod { kMultilevel, kGreedy };

std::string_view to_string(ClusterMethod method);
ClusterMethod parse_cluster_method(std::string_view name);

struct PipelineConfig {
  std::string corpus_path;         ///< native line format
  std::string tagged_export_path;  ///< alternative to corpus_path
  std::string vocabulary_path;
  double fraction = 0.2;
  std::set<TermId> required_terms;
  ClusterMethod method = ClusterMethod::kMultilevel;
  std::uint64_t seed = 42;
  StageThresholds thresholds;
  std::size_t top_k = 5;
  std::string output_dir;
  bool include_ties = false;
  bool strict_terms = false;
  bool per_cluster = false;
  ColorScale colors;
  std::size_t layout_iterations = 500;

  /// Throws InputError on invalid values.
  void validate() const;
};

/// Counters from the ingest stage, echoed into the report.
struct IngestStats {
  std::string format;  ///< "native" or "tagged"
  std::size_t dangling_references = 0;
  std::optional<ResolveReport> resolution;
  std::vector<std::string> warnings;
};

struct PipelineArtifacts {
  std::string report;          ///< report.json
  std::string svg;             ///< map.svg
  std::string graphml;         ///< network.graphml
  std::string partition_tsv;   ///< partition.tsv
  std::string centrality_tsv;  ///< centrality.tsv
  std::string edges_tsv;       ///< edges.tsv
};

struct PipelineResult {
  std::size_t corpus_size = 0;
  std::size_t selected_size = 0;
  double coverage = 0.0;
  std::size_t component_count = 0;
  std::size_t largest_component = 0;
  Corpus network_corpus;  ///< after the required-term filter
  CitationGraph graph;
  Partition partition;
  std::optional<double> modularity;
  std::optional<double> modularity_multilevel;
  std::optional<double> modularity_greedy;
  MetaGraph meta;
  std::vector<ClusterProfile> profiles;
  CentralityScores scores;
  std::vector<CentralPapers> central;
  std::vector<std::string> warnings;
  PipelineArtifacts artifacts;
};

/// Ingest -> top-cited selection -> citation graph -> largest weak component
/// -> required-term filter -> clustering -> meta-graph -> profiles ->
/// centrality -> layout -> rendering. Stage failures raise PipelineError.
PipelineResult run_pipeline(const PipelineConfig& config, const Corpus& corpus, const VocabularyTree& vocab,
                            const IngestStats& ingest = {});

/// Loads the configured files (InputError on failure) and runs the pipeline.
PipelineResult run_pipeline(const PipelineConfig& config);

/// Writes report.json, map.svg, network.graphml, partition.tsv,
/// centrality.tsv and edges.tsv into `dir`, creating it if needed.
void write_artifacts(const PipelineArtifacts& artifacts, const std::string& dir);

}  // namespace citemap
