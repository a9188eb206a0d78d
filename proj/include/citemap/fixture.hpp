#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "citemap/corpus.hpp"
#include "citemap/graph.hpp"

namespace citemap {

struct FixtureOptions {
  /// Times cited of the rank-1 paper; rank r gets round(max / r^exponent).
  double max_citations = 2000.0;
  int first_year = 1981;
  int last_year = 2012;
  std::size_t topics = 4;
  std::size_t max_refs_per_paper = 8;
  /// Chance that a reference stays inside the citing paper's topic.
  double topic_affinity = 0.85;
  std::size_t min_terms = 3;
  std::size_t max_terms = 6;
  /// Probability of drawing a clinical term, interpolated from the first to
  /// the last year.
  double clinical_share_start = 0.05;
  double clinical_share_end = 0.55;
  /// Chance that a paper carries each of the two core terms.
  double core_term_share = 0.9;
  double missing_institution_share = 0.1;
};

struct Fixture {
  Corpus corpus;
  std::string vocabulary_text;
  /// Core term ids a pipeline run can require.
  std::vector<TermId> core_terms;
};

/// Synthetic corpus with Zipf-distributed index citation counts, topic-biased
/// preferential attachment citations to older papers (weights follow times
/// cited), and terms whose clinical share grows with publication year.
/// Deterministic per (n, exponent, seed, options). Requires n >= 10.
Fixture generate_fixture(std::size_t n, double exponent, std::uint64_t seed, const FixtureOptions& options = {});

/// The vocabulary used by generate_fixture.
std::string fixture_vocabulary();

struct PlantedGraph {
  WeightedGraph graph;
  std::vector<std::size_t> truth;  ///< community of each node
};

/// Stochastic block model: `groups` blocks of `group_size` nodes, unit edges
/// with probability p_in inside blocks and p_out across.
PlantedGraph planted_partition(std::size_t groups, std::size_t group_size, double p_in, double p_out,
                               std::uint64_t seed);

}  // namespace citemap
