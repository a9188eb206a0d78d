#include "citemap/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "citemap/error.hpp"

namespace citemap {

namespace {

std::vector<CountedLabel> ranked(const std::map<std::string, std::size_t>& counts) {
  std::vector<CountedLabel> out;
  out.reserve(counts.size());
  for (const auto& [label, count] : counts) out.push_back({label, count});
  // Map order is label ascending, so a stable sort keeps ties by label.
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.count > b.count; });
  return out;
}

bool has_countable_terms(const PaperRecord& paper, const VocabularyTree& vocab, const TermPolicy& policy) {
  if (!policy.strict_terms) return !paper.terms.empty();
  return std::any_of(paper.terms.begin(), paper.terms.end(), [&](const auto& t) { return vocab.contains(t); });
}

}  // namespace

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::kBasic: return "basic";
    case Stage::kTranslational: return "translational";
    case Stage::kClinical: return "clinical";
  }
  return "unknown";
}

void StageThresholds::validate() const {
  if (!(translational >= 0.0 && translational < clinical && clinical <= 1.0)) {
    throw DomainError("stage thresholds must satisfy 0 <= translational < clinical <= 1");
  }
}

double clinical_rate(const PaperRecord& paper, const VocabularyTree& vocab, const TermPolicy& policy) {
  std::size_t clinical = 0;
  std::size_t counted = 0;
  for (const auto& term : paper.terms) {
    if (!vocab.contains(term)) {
      if (!policy.strict_terms) ++counted;
      continue;
    }
    ++counted;
    if (vocab.is_clinical(term)) ++clinical;
  }
  if (counted == 0) throw DomainError("paper '" + paper.id + "' has no terms to rate");
  return static_cast<double>(clinical) / static_cast<double>(counted);
}

double cluster_clinical_rate(std::span<const PaperRecord* const> members, const VocabularyTree& vocab,
                             const TermPolicy& policy) {
  if (members.empty()) throw DomainError("empty cluster");
  double sum = 0.0;
  std::size_t rated = 0;
  for (const auto* p : members) {
    if (!has_countable_terms(*p, vocab, policy)) continue;
    sum += clinical_rate(*p, vocab, policy);
    ++rated;
  }
  if (rated == 0) throw DomainError("no cluster member has terms to rate");
  return sum / static_cast<double>(rated);
}

Stage stage_label(double rate, const StageThresholds& thresholds) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw DomainError("clinical rate outside [0, 1]");
  if (rate < thresholds.translational) return Stage::kBasic;
  if (rate < thresholds.clinical) return Stage::kTranslational;
  return Stage::kClinical;
}

std::vector<CountedLabel> term_distribution(std::span<const PaperRecord* const> members, std::size_t k) {
  if (k == 0) throw DomainError("top-k must be at least 1");
  std::map<std::string, std::size_t> counts;
  for (const auto* p : members) {
    for (const auto& t : p->terms) ++counts[t];
  }
  auto out = ranked(counts);
  if (out.size() > k) out.resize(k);
  return out;
}

double avg_year(std::span<const PaperRecord* const> members) {
  if (members.empty()) throw DomainError("empty cluster");
  long long sum = 0;
  for (const auto* p : members) sum += p->year;
  return static_cast<double>(sum) / static_cast<double>(members.size());
}

std::vector<CountedLabel> institution_tally(std::span<const PaperRecord* const> members) {
  std::map<std::string, std::size_t> counts;
  for (const auto* p : members) ++counts[p->corr_institution.value_or(std::string(kNoInformation))];
  return ranked(counts);
}

ClusterProfile profile_cluster(std::size_t cluster, std::span<const PaperRecord* const> members,
                               const VocabularyTree& vocab, const StageThresholds& thresholds, std::size_t top_k,
                               const TermPolicy& policy) {
  if (members.empty()) throw DomainError("empty cluster");
  ClusterProfile prof;
  prof.cluster = cluster;
  prof.size = members.size();
  prof.avg_year = avg_year(members);
  const auto [lo, hi] = std::minmax_element(members.begin(), members.end(),
                                            [](const auto* a, const auto* b) { return a->year < b->year; });
  prof.year_range = {(*lo)->year, (*hi)->year};
  for (const auto* p : members) {
    if (!has_countable_terms(*p, vocab, policy)) ++prof.unrated_members;
  }
  if (prof.unrated_members < members.size()) {
    prof.clinical_rate = cluster_clinical_rate(members, vocab, policy);
    prof.stage = stage_label(*prof.clinical_rate, thresholds);
  }
  prof.top_terms = term_distribution(members, top_k);
  prof.top_institutions = institution_tally(members);
  if (prof.top_institutions.size() > top_k) prof.top_institutions.resize(top_k);
  return prof;
}

}  // namespace citemap
