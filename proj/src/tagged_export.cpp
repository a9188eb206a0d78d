#include "citemap/corpus.hpp"

#include <cctype>
#include <charconv>
#include <tuple>

#include "citemap/error.hpp"
#include "citemap/text.hpp"

namespace citemap {

namespace {

using Fields = std::map<std::string, std::vector<std::string>>;

bool is_tag_char(char c) { return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'); }

std::optional<long long> parse_int(std::string_view s) {
  s = text::trim(s);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string joined(const Fields& f, const std::string& tag) {
  const auto it = f.find(tag);
  if (it == f.end()) return {};
  std::string out;
  for (const auto& part : it->second) {
    if (!out.empty()) out.push_back(' ');
    out += part;
  }
  return out;
}

const std::vector<std::string>& values(const Fields& f, const std::string& tag) {
  static const std::vector<std::string> kEmpty;
  const auto it = f.find(tag);
  return it == f.end() ? kEmpty : it->second;
}

// "Surname, I (reprint author), Inst, Dept, City, Country."
void parse_reprint_address(std::string_view rp, PaperRecord& stub) {
  std::string_view rest = text::trim(rp);
  if (rest.empty()) return;
  for (const std::string_view marker : {"author),", "author)"}) {
    if (const auto pos = rest.find(marker); pos != std::string_view::npos) {
      rest = text::trim(rest.substr(pos + marker.size()));
      break;
    }
  }
  while (!rest.empty() && rest.back() == '.') rest.remove_suffix(1);
  auto parts = text::split(rest, ',');
  for (auto& p : parts) p = std::string(text::trim(p));
  std::erase_if(parts, [](const std::string& p) { return p.empty(); });
  if (parts.empty()) return;
  stub.corr_institution = parts.front();
  if (parts.size() >= 2) {
    std::string country = parts.back();
    if (country.size() > 4 && country.ends_with(" USA")) country = "USA";
    stub.corr_country = country;
  }
}

std::optional<TaggedRecord> finish_record(const Fields& f, std::size_t ordinal, std::vector<std::string>& warnings) {
  const std::string label = "record " + std::to_string(ordinal);
  const std::string title(text::trim(joined(f, "TI")));
  if (title.empty()) {
    warnings.push_back(label + ": missing TI, skipped");
    return std::nullopt;
  }
  const std::string py = joined(f, "PY");
  if (py.empty()) {
    warnings.push_back(label + ": missing PY, skipped");
    return std::nullopt;
  }
  const auto year = parse_int(py);
  if (!year || *year < kMinYear || *year > kMaxYear) {
    warnings.push_back(label + ": invalid PY '" + py + "', skipped");
    return std::nullopt;
  }

  TaggedRecord rec;
  auto& stub = rec.stub;
  const std::string ut(text::trim(joined(f, "UT")));
  stub.id = ut.empty() ? "rec" + std::to_string(ordinal) : ut;
  stub.title = title;
  stub.year = static_cast<int>(*year);
  if (const std::string tc = joined(f, "TC"); !tc.empty()) {
    const auto count = parse_int(tc);
    if (count && *count >= 0) {
      stub.external_citation_count = *count;
    } else {
      warnings.push_back(label + ": invalid TC '" + tc + "', using 0");
    }
  }
  parse_reprint_address(joined(f, "RP"), stub);
  for (const auto& term : values(f, "MH")) {
    const auto t = text::trim(term);
    if (!t.empty()) stub.terms.emplace(t);
  }
  if (const auto& authors = values(f, "AU"); !authors.empty()) rec.first_author_key = text::author_key(authors.front());
  const std::string j9 = joined(f, "J9");
  rec.source_key = text::source_key(j9.empty() ? joined(f, "SO") : j9);
  if (const std::string di(text::trim(joined(f, "DI"))); !di.empty()) rec.doi = di;

  for (const auto& cr : values(f, "CR")) {
    if (auto ref = parse_cited_reference(cr)) {
      rec.references.push_back(std::move(*ref));
    } else {
      warnings.push_back(label + ": unparseable cited reference '" + cr + "'");
      rec.unparsed_references.push_back(cr);
    }
  }
  return rec;
}

std::string lower_doi(std::string_view doi) { return text::to_lower(text::trim(doi)); }

}  // namespace

std::optional<RawReference> parse_cited_reference(std::string_view line) {
  auto parts = text::split(line, ',');
  for (auto& p : parts) p = std::string(text::trim(p));

  RawReference ref;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    if (p.size() > 4 && (p.starts_with("DOI ") || p.starts_with("doi "))) {
      std::string_view doi = text::trim(std::string_view(p).substr(4));
      // Multi-DOI form "DOI [10.1/a, 10.1/b]" splits across parts; keep the first.
      if (!doi.empty() && doi.front() == '[') doi.remove_prefix(1);
      if (!doi.empty() && doi.back() == ']') doi.remove_suffix(1);
      doi = text::trim(doi);
      if (!doi.empty()) ref.doi = std::string(doi);
      break;
    }
  }
  if (parts.size() >= 2) {
    if (const auto year = parse_int(parts[1]); year && *year >= kMinYear && *year <= kMaxYear) {
      ref.year = static_cast<int>(*year);
      ref.first_author_key = text::author_key(parts[0]);
      if (parts.size() >= 3 && !parts[2].starts_with("DOI ")) ref.source_key = text::source_key(parts[2]);
    }
  }
  const bool keyed = !ref.first_author_key.empty() && ref.year != 0;
  if (!keyed) {
    ref.first_author_key.clear();
    ref.year = 0;
    ref.source_key.clear();
  }
  if (!keyed && !ref.doi) return std::nullopt;
  return ref;
}

TaggedExport parse_tagged_export(std::string_view input) {
  TaggedExport out;
  Fields fields;
  std::string current_tag;
  std::size_t ordinal = 0;
  bool any_er = false;
  bool open_record = false;
  std::set<PaperId> seen_ids;

  const auto lines = text::split(input, '\n');
  for (const auto& raw : lines) {
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    // A UTF-8 BOM can precede the first tag.
    if (line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (text::trim(line).empty()) continue;

    if (line.front() == ' ' || line.front() == '\t') {
      if (!current_tag.empty()) fields[current_tag].emplace_back(text::trim(line));
      continue;
    }
    if (line.size() < 2 || !is_tag_char(line[0]) || !is_tag_char(line[1]) || (line.size() > 2 && line[2] != ' ')) {
      out.warnings.push_back("unrecognized line '" + std::string(line) + "'");
      continue;
    }
    const std::string tag(line.substr(0, 2));
    const std::string_view value = line.size() > 3 ? text::trim(line.substr(3)) : std::string_view{};
    if (tag == "FN" || tag == "VR" || tag == "EF") {
      current_tag.clear();
      continue;
    }
    if (tag == "ER") {
      any_er = true;
      ++ordinal;
      if (auto rec = finish_record(fields, ordinal, out.warnings)) {
        if (seen_ids.insert(rec->stub.id).second) {
          out.records.push_back(std::move(*rec));
        } else {
          out.warnings.push_back("record " + std::to_string(ordinal) + ": duplicate id '" + rec->stub.id +
                                 "', skipped");
        }
      }
      fields.clear();
      current_tag.clear();
      open_record = false;
      continue;
    }
    current_tag = tag;
    open_record = true;
    fields[tag].emplace_back(value);
  }

  if (!any_er) out.warnings.push_back("no ER-terminated record found");
  else if (open_record) out.warnings.push_back("trailing record without ER ignored");
  return out;
}

Corpus resolve_references(const std::vector<TaggedRecord>& records, ResolveReport* report) {
  using Key = std::tuple<std::string, int, std::string>;
  std::map<std::string, std::vector<std::size_t>> by_doi;
  std::map<Key, std::vector<std::size_t>> by_key;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.doi) by_doi[lower_doi(*r.doi)].push_back(i);
    if (!r.first_author_key.empty()) by_key[{r.first_author_key, r.stub.year, r.source_key}].push_back(i);
  }

  ResolveReport rep;
  std::vector<PaperRecord> papers;
  papers.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    PaperRecord p = r.stub;
    p.cited_refs.clear();
    rep.total += r.references.size() + r.unparsed_references.size();
    rep.unresolved += r.unparsed_references.size();
    for (const auto& ref : r.references) {
      std::optional<std::size_t> target;
      bool ambiguous = false;
      if (ref.doi) {
        if (const auto it = by_doi.find(lower_doi(*ref.doi)); it != by_doi.end()) {
          if (it->second.size() == 1) target = it->second.front();
          else ambiguous = true;
        }
      }
      if (!target && !ambiguous && !ref.first_author_key.empty()) {
        if (const auto it = by_key.find({ref.first_author_key, ref.year, ref.source_key}); it != by_key.end()) {
          if (it->second.size() == 1) target = it->second.front();
          else ambiguous = true;
        }
      }
      if (ambiguous) {
        ++rep.ambiguous;
      } else if (!target || *target == i) {
        ++rep.unresolved;
      } else {
        ++rep.resolved;
        p.cited_refs.insert(records[*target].stub.id);
      }
    }
    papers.push_back(std::move(p));
  }
  if (report) *report = rep;
  return Corpus::from_records(std::move(papers));
}

}  // namespace citemap
