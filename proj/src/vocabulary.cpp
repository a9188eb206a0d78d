#include <algorithm>
#include <functional>

#include "citemap/corpus.hpp"
#include "citemap/error.hpp"
#include "citemap/text.hpp"

namespace citemap {

namespace {

constexpr std::string_view kHeader = "clinical_roots:";

std::set<TermId> parse_id_list(std::string_view s) {
  std::set<TermId> out;
  for (const auto& part : text::split(s, ',')) {
    const auto id = text::trim(part);
    if (!id.empty()) out.emplace(id);
  }
  return out;
}

}  // namespace

VocabularyTree VocabularyTree::parse(std::string_view input) {
  VocabularyTree vocab;
  std::map<TermId, std::size_t> line_of;
  bool have_header = false;

  const auto lines = text::split(input, '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) continue;
    if (!have_header) {
      const auto head = text::trim(line);
      if (!head.starts_with(kHeader)) throw InputError(line_no, "clinical_roots", "expected header 'clinical_roots: ...'");
      vocab.clinical_roots_ = parse_id_list(head.substr(kHeader.size()));
      have_header = true;
      continue;
    }
    const auto cols = text::split(line, '\t');
    if (cols.size() < 2 || cols.size() > 3) {
      throw InputError(line_no, "term", "expected 'id<TAB>name<TAB>parents'");
    }
    const TermId id(text::trim(cols[0]));
    if (id.empty()) throw InputError(line_no, "id", "empty term id");
    Term t;
    t.name = std::string(text::trim(cols[1]));
    if (cols.size() == 3) t.parents = parse_id_list(cols[2]);
    if (t.parents.contains(id)) throw InputError(line_no, "parents", "term '" + id + "' lists itself as parent");
    if (!vocab.terms_.emplace(id, std::move(t)).second) {
      throw InputError(line_no, "id", "duplicate term id '" + id + "'");
    }
    line_of[id] = line_no;
  }
  if (!have_header) throw InputError(1, "clinical_roots", "missing header line");

  for (const auto& [id, t] : vocab.terms_) {
    for (const auto& parent : t.parents) {
      if (!vocab.terms_.contains(parent)) {
        throw InputError(line_of[id], "parents", "term '" + id + "' has undefined parent '" + parent + "'");
      }
    }
    if (t.parents.empty()) vocab.roots_.insert(id);
  }

  // Cycle check by DFS colouring; the active path names the cycle.
  enum class Mark { kNew, kActive, kDone };
  std::map<TermId, Mark, std::less<>> mark;
  for (const auto& [id, t] : vocab.terms_) mark[id] = Mark::kNew;
  std::vector<TermId> path;
  const std::function<void(const TermId&)> visit = [&](const TermId& id) {
    mark[id] = Mark::kActive;
    path.push_back(id);
    for (const auto& parent : vocab.terms_.find(id)->second.parents) {
      if (mark[parent] == Mark::kActive) {
        std::string cycle;
        auto it = std::find(path.begin(), path.end(), parent);
        for (; it != path.end(); ++it) cycle += *it + " -> ";
        cycle += parent;
        throw InputError(line_of[id], "parents", "cycle in parent relation: " + cycle);
      }
      if (mark[parent] == Mark::kNew) visit(parent);
    }
    path.pop_back();
    mark[id] = Mark::kDone;
  };
  for (const auto& [id, t] : vocab.terms_) {
    if (mark[id] == Mark::kNew) visit(id);
  }

  for (const auto& root : vocab.clinical_roots_) {
    const auto it = vocab.terms_.find(root);
    if (it == vocab.terms_.end()) throw InputError(1, "clinical_roots", "clinical root '" + root + "' is not defined");
    if (!it->second.parents.empty()) {
      throw InputError(1, "clinical_roots", "clinical root '" + root + "' is not a root (it has parents)");
    }
  }

  // Acyclic, so memoised recursion terminates; 0 = unknown, 1 = no, 2 = yes.
  std::map<TermId, int, std::less<>> memo;
  const std::function<bool(const TermId&)> clinical = [&](const TermId& id) -> bool {
    auto& m = memo[id];
    if (m != 0) return m == 2;
    bool result = vocab.clinical_roots_.contains(id);
    for (const auto& parent : vocab.terms_.find(id)->second.parents) {
      if (result) break;
      result = clinical(parent);
    }
    memo[id] = result ? 2 : 1;
    return result;
  };
  for (auto& [id, t] : vocab.terms_) t.clinical = clinical(id);
  return vocab;
}

const VocabularyTree::Term& VocabularyTree::term(std::string_view id) const {
  const auto it = terms_.find(id);
  if (it == terms_.end()) throw DomainError("unknown vocabulary term '" + std::string(id) + "'");
  return it->second;
}

bool VocabularyTree::contains(std::string_view term) const { return terms_.find(term) != terms_.end(); }

const std::string& VocabularyTree::name(std::string_view id) const { return term(id).name; }

const std::set<TermId>& VocabularyTree::parents(std::string_view id) const { return term(id).parents; }

bool VocabularyTree::is_clinical(std::string_view id) const { return term(id).clinical; }

VocabularyTree load_vocabulary(std::string_view text) { return VocabularyTree::parse(text); }

bool is_clinical(std::string_view term, const VocabularyTree& vocab) { return vocab.is_clinical(term); }

}  // namespace citemap
