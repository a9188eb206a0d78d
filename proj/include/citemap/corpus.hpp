#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace citemap {

using PaperId = std::string;
using TermId = std::string;

inline constexpr int kMinYear = 1800;
inline constexpr int kMaxYear = 2100;

struct PaperRecord {
  PaperId id;
  std::string title;
  int year = 0;
  /// Times cited according to the source index.
  long long external_citation_count = 0;
  std::set<PaperId> cited_refs;
  std::set<TermId> terms;
  std::optional<std::string> corr_institution;
  std::optional<std::string> corr_country;

  friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

/// A validated, self-contained set of papers. Every id in a cited_refs set
/// names a paper in the same corpus.
class Corpus {
public:
  Corpus() = default;

  /// Validates ids, years and self-citations, and drops references that
  /// point outside the corpus. Returns the number dropped via `dangling`.
  static Corpus from_records(std::vector<PaperRecord> papers, std::size_t* dangling = nullptr);

  const std::vector<PaperRecord>& papers() const noexcept { return papers_; }
  std::size_t size() const noexcept { return papers_.size(); }
  bool empty() const noexcept { return papers_.empty(); }
  bool contains(std::string_view id) const;
  const PaperRecord* find(std::string_view id) const;
  const PaperRecord& at(std::string_view id) const;

  /// Sub-corpus of the given ids, keeping this corpus' order and
  /// re-restricting cited_refs to the survivors.
  Corpus restrict_to(const std::set<PaperId>& keep) const;

  friend bool operator==(const Corpus& a, const Corpus& b) { return a.papers_ == b.papers_; }

private:
  std::vector<PaperRecord> papers_;
  std::map<PaperId, std::size_t, std::less<>> index_;
};

struct ParseReport {
  std::size_t records = 0;
  std::size_t dangling_references = 0;
  std::vector<std::string> warnings;
};

/// Native line format: one JSON object per non-empty line with keys id,
/// title, year, times_cited, refs, terms and optional institution, country.
/// Throws InputError (with the line number and field) on malformed records
/// and duplicate ids.
Corpus parse_corpus(std::istream& in, ParseReport* report = nullptr);
Corpus parse_corpus(std::string_view text, ParseReport* report = nullptr);

/// Inverse of parse_corpus; keys sorted, one record per line.
std::string serialize_corpus(const Corpus& corpus);

// --- Tagged citation-index export -----------------------------------------

struct RawReference {
  std::string first_author_key;
  int year = 0;
  std::string source_key;
  std::optional<std::string> doi;

  friend bool operator==(const RawReference&, const RawReference&) = default;
};

struct TaggedRecord {
  PaperRecord stub;  ///< cited_refs empty until resolution
  std::string first_author_key;
  std::string source_key;
  std::optional<std::string> doi;
  std::vector<RawReference> references;
  /// CR lines that could not be split into a RawReference.
  std::vector<std::string> unparsed_references;
};

struct TaggedExport {
  std::vector<TaggedRecord> records;
  std::vector<std::string> warnings;
};

/// Parses a two-letter-tag export (TI, PY, TC, CR, RP, ER; AU, SO, J9, DI,
/// UT and MH are also read). Continuation lines start with whitespace.
TaggedExport parse_tagged_export(std::string_view text);

/// "Author, Year, Source, ..., DOI x" -> RawReference; nullopt if neither a
/// DOI nor an author/year pair can be recovered.
std::optional<RawReference> parse_cited_reference(std::string_view line);

struct ResolveReport {
  std::size_t total = 0;
  std::size_t resolved = 0;
  std::size_t unresolved = 0;
  std::size_t ambiguous = 0;
};

/// Links raw references to corpus papers: exact DOI match first, otherwise a
/// unique (first author, year, source) match. Self-matches count as
/// unresolved. resolved + unresolved + ambiguous == total.
Corpus resolve_references(const std::vector<TaggedRecord>& records, ResolveReport* report = nullptr);

// --- Controlled vocabulary --------------------------------------------------

class VocabularyTree {
public:
  /// Header "clinical_roots: id1,id2,..." followed by lines
  /// "id<TAB>name<TAB>parent1,parent2,...". Throws InputError on undefined
  /// parents, cycles, and clinical roots that are not roots.
  static VocabularyTree parse(std::string_view text);

  bool contains(std::string_view term) const;
  const std::string& name(std::string_view term) const;
  const std::set<TermId>& parents(std::string_view term) const;
  const std::set<TermId>& roots() const noexcept { return roots_; }
  const std::set<TermId>& clinical_roots() const noexcept { return clinical_roots_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// True iff the term or one of its ancestors is a clinical root. Throws
  /// DomainError for unknown terms.
  bool is_clinical(std::string_view term) const;

private:
  struct Term {
    std::string name;
    std::set<TermId> parents;
    bool clinical = false;
  };
  const Term& term(std::string_view id) const;

  std::map<TermId, Term, std::less<>> terms_;
  std::set<TermId> roots_;
  std::set<TermId> clinical_roots_;
};

VocabularyTree load_vocabulary(std::string_view text);
bool is_clinical(std::string_view term, const VocabularyTree& vocab);

std::string read_file(const std::string& path);

}  // namespace citemap
