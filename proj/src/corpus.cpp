#include "citemap/corpus.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "citemap/error.hpp"
#include "citemap/text.hpp"

namespace citemap {

using nlohmann::json;

namespace {

void check_year(long long year, std::size_t line) {
  if (year < kMinYear || year > kMaxYear) {
    throw InputError(line, "year",
                     "year " + std::to_string(year) + " outside [" + std::to_string(kMinYear) + ", " +
                         std::to_string(kMaxYear) + "]");
  }
}

std::string require_string(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(line, key, "missing");
  if (!it->is_string()) throw InputError(line, key, "expected a string");
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw InputError(line, key, "expected a string or null");
  return it->get<std::string>();
}

long long require_integer(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(line, key, "missing");
  if (!it->is_number_integer()) throw InputError(line, key, "expected an integer");
  return it->get<long long>();
}

std::set<std::string> require_string_set(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(line, key, "missing");
  if (!it->is_array()) throw InputError(line, key, "expected an array of strings");
  std::set<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) throw InputError(line, key, "expected an array of strings");
    out.insert(v.get<std::string>());
  }
  return out;
}

PaperRecord record_from_json(const json& obj, std::size_t line) {
  if (!obj.is_object()) throw InputError(line, "record", "expected a JSON object");
  PaperRecord p;
  p.id = require_string(obj, "id", line);
  if (p.id.empty()) throw InputError(line, "id", "empty id");
  p.title = require_string(obj, "title", line);
  const long long year = require_integer(obj, "year", line);
  check_year(year, line);
  p.year = static_cast<int>(year);
  p.external_citation_count = require_integer(obj, "times_cited", line);
  if (p.external_citation_count < 0) throw InputError(line, "times_cited", "negative count");
  p.cited_refs = require_string_set(obj, "refs", line);
  p.terms = require_string_set(obj, "terms", line);
  p.corr_institution = optional_string(obj, "institution", line);
  p.corr_country = optional_string(obj, "country", line);
  return p;
}

}  // namespace

Corpus Corpus::from_records(std::vector<PaperRecord> papers, std::size_t* dangling) {
  Corpus c;
  for (std::size_t i = 0; i < papers.size(); ++i) {
    const auto& p = papers[i];
    if (p.id.empty()) throw InputError("paper #" + std::to_string(i) + " has an empty id");
    if (p.year < kMinYear || p.year > kMaxYear) {
      throw InputError("paper '" + p.id + "': year " + std::to_string(p.year) + " out of range");
    }
    if (p.external_citation_count < 0) throw InputError("paper '" + p.id + "': negative times_cited");
    if (!c.index_.emplace(p.id, i).second) throw InputError("duplicate paper id '" + p.id + "'");
  }
  std::size_t dropped = 0;
  for (auto& p : papers) {
    for (auto it = p.cited_refs.begin(); it != p.cited_refs.end();) {
      if (*it == p.id || !c.index_.contains(*it)) {
        it = p.cited_refs.erase(it);
        ++dropped;
      } else {
        ++it;
      }
    }
  }
  c.papers_ = std::move(papers);
  if (dangling) *dangling = dropped;
  return c;
}

bool Corpus::contains(std::string_view id) const { return index_.find(id) != index_.end(); }

const PaperRecord* Corpus::find(std::string_view id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? nullptr : &papers_[it->second];
}

const PaperRecord& Corpus::at(std::string_view id) const {
  const auto* p = find(id);
  if (!p) throw DomainError("unknown paper id '" + std::string(id) + "'");
  return *p;
}

Corpus Corpus::restrict_to(const std::set<PaperId>& keep) const {
  std::vector<PaperRecord> kept;
  for (const auto& p : papers_) {
    if (keep.contains(p.id)) kept.push_back(p);
  }
  return from_records(std::move(kept));
}

Corpus parse_corpus(std::istream& in, ParseReport* report) {
  std::vector<PaperRecord> records;
  std::map<PaperId, std::size_t> first_line;
  std::vector<std::string> warnings;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = text::trim(line);
    if (body.empty()) continue;
    json obj;
    try {
      obj = json::parse(body);
    } catch (const json::parse_error& e) {
      throw InputError(line_no, "record", std::string("invalid JSON: ") + e.what());
    }
    PaperRecord p = record_from_json(obj, line_no);
    if (const auto [it, inserted] = first_line.emplace(p.id, line_no); !inserted) {
      throw InputError(line_no, "id",
                       "duplicate id '" + p.id + "' (first seen on line " + std::to_string(it->second) + ")");
    }
    if (p.cited_refs.erase(p.id) > 0) {
      warnings.push_back("line " + std::to_string(line_no) + ": self-citation of '" + p.id + "' dropped");
    }
    records.push_back(std::move(p));
  }

  std::size_t dangling = 0;
  Corpus corpus = Corpus::from_records(std::move(records), &dangling);
  if (dangling > 0) warnings.push_back(std::to_string(dangling) + " dangling reference(s) dropped");
  if (report) {
    report->records = corpus.size();
    report->dangling_references = dangling;
    report->warnings = std::move(warnings);
  }
  return corpus;
}

Corpus parse_corpus(std::string_view text, ParseReport* report) {
  std::istringstream in{std::string(text)};
  return parse_corpus(in, report);
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const auto& p : corpus.papers()) {
    json obj;
    obj["id"] = p.id;
    obj["title"] = p.title;
    obj["year"] = p.year;
    obj["times_cited"] = p.external_citation_count;
    obj["refs"] = p.cited_refs;
    obj["terms"] = p.terms;
    if (p.corr_institution) obj["institution"] = *p.corr_institution;
    if (p.corr_country) obj["country"] = *p.corr_country;
    out += obj.dump();
    out.push_back('\n');
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace citemap
