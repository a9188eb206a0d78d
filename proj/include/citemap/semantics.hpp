#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citemap/corpus.hpp"

namespace citemap {

enum class Stage { kBasic, kTranslational, kClinical };

std::string_view to_string(Stage stage);

/// Rate cut points: basic below `translational`, clinical at or above
/// `clinical`. Must satisfy 0 <= translational < clinical <= 1.
struct StageThresholds {
  double translational = 0.15;
  double clinical = 0.33;

  void validate() const;
};

struct TermPolicy {
  /// Exclude terms missing from the vocabulary from the denominator instead
  /// of counting them as non-clinical.
  bool strict_terms = false;
};

/// Share of a paper's terms that are clinical. Throws DomainError when the
/// paper has no (countable) terms.
double clinical_rate(const PaperRecord& paper, const VocabularyTree& vocab, const TermPolicy& policy = {});

/// Mean of member rates, skipping members without countable terms. Throws
/// DomainError if nothing is left.
double cluster_clinical_rate(std::span<const PaperRecord* const> members, const VocabularyTree& vocab,
                             const TermPolicy& policy = {});

Stage stage_label(double rate, const StageThresholds& thresholds = {});

struct CountedLabel {
  std::string label;
  std::size_t count;

  friend bool operator==(const CountedLabel&, const CountedLabel&) = default;
};

/// Terms by number of member papers carrying them, ties by term id.
std::vector<CountedLabel> term_distribution(std::span<const PaperRecord* const> members, std::size_t k);

/// Arithmetic mean of member years; empty input is an error.
double avg_year(std::span<const PaperRecord* const> members);

inline constexpr std::string_view kNoInformation = "No information";

/// Corresponding institutions by paper count, ties by name. Absent
/// institutions count as "No information".
std::vector<CountedLabel> institution_tally(std::span<const PaperRecord* const> members);

struct ClusterProfile {
  std::size_t cluster = 0;
  std::size_t size = 0;
  double avg_year = 0.0;
  std::pair<int, int> year_range{0, 0};
  /// Empty when no member has countable terms.
  std::optional<double> clinical_rate;
  std::optional<Stage> stage;
  /// Members without countable terms; they do not enter the rate.
  std::size_t unrated_members = 0;
  std::vector<CountedLabel> top_terms;
  std::vector<CountedLabel> top_institutions;
};

ClusterProfile profile_cluster(std::size_t cluster, std::span<const PaperRecord* const> members,
                               const VocabularyTree& vocab, const StageThresholds& thresholds, std::size_t top_k,
                               const TermPolicy& policy = {});

}  // namespace citemap
