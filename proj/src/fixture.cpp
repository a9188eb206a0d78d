#include "citemap/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "citemap/error.hpp"
#include "citemap/random.hpp"

namespace citemap {

namespace {

struct TermDef {
  const char* id;
  const char* name;
  const char* parents;
};

constexpr TermDef kTerms[] = {
    {"D001", "Therapeutics", ""},
    {"D002", "Diagnosis", ""},
    {"D003", "Persons", ""},
    {"D010", "Chemicals and Drugs", ""},
    {"D011", "Phenomena and Processes", ""},
    {"D012", "Organisms", ""},
    {"D100", "Drug Therapy", "D001"},
    {"D101", "Antineoplastic Combined Chemotherapy Protocols", "D100"},
    {"D102", "Hyperthermia, Induced", "D001"},
    {"D103", "Treatment Outcome", "D001"},
    {"D104", "Drug Delivery Systems", "D001,D010"},
    {"D110", "Tomography, X-Ray Computed", "D002"},
    {"D111", "Prognosis", "D002"},
    {"D120", "Patients", "D003"},
    {"D121", "Middle Aged", "D003"},
    {"D200", "Doxorubicin", "D010"},
    {"D201", "Liposomes", "D010"},
    {"D202", "Polyethylene Glycols", "D010"},
    {"D203", "Antibodies, Monoclonal", "D010"},
    {"D204", "Folic Acid", "D010"},
    {"D210", "Pharmacokinetics", "D011"},
    {"D211", "Cardiotoxicity", "D011"},
    {"D212", "Drug Stability", "D011"},
    {"D213", "Tissue Distribution", "D011"},
    {"D220", "Mice", "D012"},
    {"D221", "Rats", "D012"},
    {"D222", "Cell Line, Tumor", "D012"},
};

constexpr const char* kClinicalRoots = "D001,D002,D003";
constexpr const char* kCoreTerms[] = {"D200", "D201"};

// Per-topic term pools; each topic is biased toward its own vocabulary.
const std::vector<std::vector<const char*>> kClinicalPools = {
    {"D100", "D103", "D120"}, {"D101", "D111", "D121"}, {"D102", "D110", "D103"}, {"D104", "D120", "D111"}};
const std::vector<std::vector<const char*>> kBasicPools = {
    {"D211", "D212", "D220"}, {"D202", "D210", "D213"}, {"D203", "D204", "D222"}, {"D210", "D221", "D212"}};

struct Institution {
  const char* name;
  const char* country;
};

constexpr Institution kInstitutions[] = {
    {"Hadassah Med Org", "Israel"},
    {"Univ Alberta", "Canada"},
    {"Roswell Pk Canc Inst", "USA"},
    {"Univ Calif San Francisco", "USA"},
    {"Liposome Technol Inc", "USA"},
    {"Univ Texas MD Anderson Canc Ctr", "USA"},
    {"Natl Canc Ctr", "Japan"},
    {"Univ Milan", "Italy"},
    {"British Columbia Canc Agcy", "Canada"},
    {"Duke Univ", "USA"},
    {"Gustave Roussy Inst", "France"},
    {"Peking Univ", "Peoples R China"},
};

std::string padded_id(std::size_t i, std::size_t n) {
  const std::size_t width = std::to_string(n).size();
  std::string digits = std::to_string(i + 1);
  return "P" + std::string(width - digits.size(), '0') + digits;
}

// Weighted draw over candidates with non-negative weights (sum > 0).
std::size_t weighted_pick(std::span<const double> weights, double total, Rng& rng) {
  double x = rng.uniform() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (x < weights[i]) return i;
    x -= weights[i];
  }
  return weights.size() - 1;
}

}  // namespace

std::string fixture_vocabulary() {
  std::string out = std::string("clinical_roots: ") + kClinicalRoots + "\n";
  for (const auto& t : kTerms) out += std::string(t.id) + "\t" + t.name + "\t" + t.parents + "\n";
  return out;
}

Fixture generate_fixture(std::size_t n, double exponent, std::uint64_t seed, const FixtureOptions& options) {
  if (n < 10) throw DomainError("fixture needs at least 10 papers");
  if (!(exponent > 0.0)) throw DomainError("Zipf exponent must be positive");
  if (options.topics == 0 || options.topics > kClinicalPools.size()) throw DomainError("fixture topics must be 1-4");
  if (options.first_year > options.last_year) throw DomainError("fixture year range is empty");
  Rng rng(seed);

  // Years ascending with index, so references to lower indices never point forward in time.
  std::vector<int> years(n);
  const int span = options.last_year - options.first_year + 1;
  for (auto& y : years) y = options.first_year + static_cast<int>(rng.below(static_cast<std::uint64_t>(span)));
  std::sort(years.begin(), years.end());

  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), std::size_t{1});
  rng.shuffle(std::span(rank));

  std::vector<PaperRecord> papers(n);
  std::vector<std::size_t> topic(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& p = papers[i];
    p.id = padded_id(i, n);
    p.year = years[i];
    p.external_citation_count =
        std::llround(options.max_citations / std::pow(static_cast<double>(rank[i]), exponent));
    topic[i] = static_cast<std::size_t>(rng.below(options.topics));
    p.title = "Synthetic study " + std::to_string(i + 1) + " (topic " + std::to_string(topic[i] + 1) + ")";
  }

  std::vector<double> weights;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t refs = std::min<std::size_t>(i, 1 + rng.below(options.max_refs_per_paper));
    for (std::size_t r = 0; r < refs; ++r) {
      const bool same_topic = rng.bernoulli(options.topic_affinity);
      weights.assign(i, 0.0);
      double total = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        if (same_topic && topic[j] != topic[i]) continue;
        if (papers[i].cited_refs.contains(papers[j].id)) continue;
        weights[j] = static_cast<double>(papers[j].external_citation_count) + 1.0;
        total += weights[j];
      }
      if (total <= 0.0) continue;
      papers[i].cited_refs.insert(papers[weighted_pick(weights, total, rng)].id);
    }
  }

  const double year_span = std::max(1, options.last_year - options.first_year);
  const std::size_t term_range = options.max_terms - std::min(options.min_terms, options.max_terms) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    auto& p = papers[i];
    for (const char* core : kCoreTerms) {
      if (rng.bernoulli(options.core_term_share)) p.terms.insert(core);
    }
    const double progress = (p.year - options.first_year) / year_span;
    const double clinical_share =
        options.clinical_share_start + (options.clinical_share_end - options.clinical_share_start) * progress;
    const std::size_t count = options.min_terms + rng.below(term_range);
    for (std::size_t t = 0; t < count; ++t) {
      const auto& pool = rng.bernoulli(clinical_share) ? kClinicalPools[topic[i]] : kBasicPools[topic[i]];
      p.terms.insert(pool[rng.below(pool.size())]);
    }
    if (!rng.bernoulli(options.missing_institution_share)) {
      // Three institutions per topic dominate, the rest appear occasionally.
      const std::size_t pick = rng.bernoulli(0.8) ? topic[i] * 3 + rng.below(3) : rng.below(std::size(kInstitutions));
      p.corr_institution = kInstitutions[pick].name;
      p.corr_country = kInstitutions[pick].country;
    }
  }

  Fixture f;
  f.corpus = Corpus::from_records(std::move(papers));
  f.vocabulary_text = fixture_vocabulary();
  f.core_terms.assign(std::begin(kCoreTerms), std::end(kCoreTerms));
  return f;
}

PlantedGraph planted_partition(std::size_t groups, std::size_t group_size, double p_in, double p_out,
                               std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = groups * group_size;
  PlantedGraph out;
  out.truth.resize(n);
  for (std::size_t u = 0; u < n; ++u) out.truth[u] = u / group_size;
  std::vector<WeightedGraph::Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const double p = out.truth[u] == out.truth[v] ? p_in : p_out;
      if (rng.bernoulli(p)) edges.push_back({static_cast<NodeIndex>(u), static_cast<NodeIndex>(v), 1.0});
    }
  }
  out.graph = WeightedGraph(n, edges);
  return out;
}

}  // namespace citemap
