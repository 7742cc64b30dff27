// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "embias/assoc.hpp"
#include "embias/embedding_table.hpp"
#include "embias/error.hpp"
#include "embias/lexicon.hpp"

namespace embias {

inline constexpr std::string_view kSlot = "_";

/// Bleached sentence templates per part of speech; each holds exactly one
/// "_" slot.
struct TemplateSet {
  std::map<Pos, std::vector<std::string>> templates;

  const std::vector<std::string>& for_pos(Pos pos) const {
    auto it = templates.find(pos);
    if (it == templates.end() || it->second.empty()) {
      throw DataError(std::string("no templates for part of speech '") + to_string(pos) + "'");
    }
    return it->second;
  }

  bool operator==(const TemplateSet&) const = default;
};

inline std::size_t count_slots(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t pos = s.find(kSlot); pos != std::string_view::npos; pos = s.find(kSlot, pos + 1)) ++n;
  return n;
}

inline void validate(const TemplateSet& set) {
  for (Pos pos : {Pos::name, Pos::common_noun, Pos::verb, Pos::adjective}) {
    auto it = set.templates.find(pos);
    if (it == set.templates.end() || it->second.empty()) {
      throw DataError(std::string("template set has no templates for '") + to_string(pos) + "'");
    }
    for (const auto& t : it->second) {
      if (count_slots(t) != 1) {
        throw DataError("template '" + t + "' must contain exactly one '_' slot");
      }
    }
  }
}

inline TemplateSet builtin_templates() {
  TemplateSet set;
  set.templates[Pos::name] = {"yeha _ hai",   "veha _ hai",   "vahan _ hai",      "yahan _ hai",
                              "_ yahan hai",  "_ vahan hai",  "iska naam _ hai",  "uska naam _ h"};
  set.templates[Pos::common_noun] = {"yeha _ hai",  "veha _ hai",  "vahan _ hai", "yahan _ hai",
                                     "_ yahan hai", "_ vahan hai", "vo _ hai",    "ye _ hai"};
  set.templates[Pos::verb] = {"yeha _ hai", "veha _ hai",  "vo _ hai",
                              "ye _ hai",   "vahan _ hai", "yahan _ hai"};
  set.templates[Pos::adjective] = {"yeha _ hai", "veha _ hai", "vo _ hai", "ye _ hai"};
  return set;
}

/// Every part of speech maps to the bare slot, which turns SEAT into WEAT.
inline TemplateSet identity_templates() {
  TemplateSet set;
  for (Pos pos : {Pos::name, Pos::common_noun, Pos::verb, Pos::adjective}) set.templates[pos] = {"_"};
  return set;
}

inline Json to_json(const TemplateSet& set) {
  Json j = Json::object();
  for (Pos pos : {Pos::name, Pos::common_noun, Pos::verb, Pos::adjective}) {
    auto it = set.templates.find(pos);
    j[to_string(pos)] = it == set.templates.end() ? std::vector<std::string>{} : it->second;
  }
  return j;
}

inline std::string dump_templates(const TemplateSet& set) { return to_json(set).dump(2) + "\n"; }

inline TemplateSet load_templates(std::istream& in) {
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("template document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("template document must be an object keyed by part of speech");
  TemplateSet set;
  for (const auto& [key, value] : doc.items()) {
    auto pos = parse_pos(key);
    if (!pos) throw DataError("template document has unknown part of speech '" + key + "'");
    set.templates[*pos] = detail::string_array(value, "templates." + key);
  }
  validate(set);
  return set;
}

inline TemplateSet load_templates_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open template file '" + path + "'");
  return load_templates(in);
}

/// Fills the slot of every template for `pos`, in template order.
inline std::vector<std::string> expand(const TemplateSet& set, std::string_view word, Pos pos) {
  if (word.find(kSlot) != std::string_view::npos) {
    throw DataError("word '" + std::string(word) + "' contains the template slot marker '_'");
  }
  std::vector<std::string> out;
  for (const auto& t : set.for_pos(pos)) {
    const auto at = t.find(kSlot);
    out.push_back(t.substr(0, at) + std::string(word) + t.substr(at + kSlot.size()));
  }
  return out;
}

enum class Pooling { mean };

/// Unweighted mean of the in-vocabulary whitespace tokens. OOV tokens are
/// skipped and appended to `skipped` when given.
inline Vector compose_sentence(const EmbeddingTable& table, std::string_view sentence,
                               Pooling pooling = Pooling::mean,
                               std::vector<std::string>* skipped = nullptr) {
  (void)pooling;
  const auto tokens = detail::split_fields(sentence);
  Vector acc;
  std::size_t count = 0;
  std::vector<std::string> missing;
  for (auto tok : tokens) {
    auto v = table.lookup(tok);
    if (!v) {
      missing.emplace_back(tok);
      continue;
    }
    ++count;
    if (count == 1) {
      acc.assign(v->begin(), v->end());
    } else {
      // Running mean: identical token vectors leave the mean bit-identical.
      const double k = static_cast<double>(count);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += ((*v)[i] - acc[i]) / k;
    }
  }
  if (count == 0) {
    std::string msg = "sentence '" + std::string(sentence) + "' has no in-vocabulary tokens:";
    for (const auto& m : missing) msg += " '" + m + "'";
    throw DataError(msg);
  }
  if (skipped) skipped->insert(skipped->end(), missing.begin(), missing.end());
  return acc;
}

namespace detail {

inline Pos pos_of(const AssociationTest& test, const std::string& word) {
  auto it = test.pos_tags.find(word);
  if (it == test.pos_tags.end()) {
    throw DataError("test '" + test.name + "': no part-of-speech tag for '" + word + "'");
  }
  return it->second;
}

/// Expands `tokens` (forms to place in the slot) using the POS of the
/// matching suite `words`.
inline std::vector<std::string> expand_list(const AssociationTest& test, const TemplateSet& set,
                                            const std::vector<std::string>& words,
                                            const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (auto& s : expand(set, tokens[i], pos_of(test, words[i]))) out.push_back(std::move(s));
  }
  return out;
}

inline bool expands(ListRole role, bool expand_attributes) {
  return role == ListRole::x || role == ListRole::y || expand_attributes;
}

}  // namespace detail

/// Sentence-level test: targets (and, by default, attributes) replaced by
/// their template expansions. The result keeps the source name.
inline AssociationTest build_seat_test(const AssociationTest& test, const TemplateSet& templates,
                                       bool expand_attributes = true) {
  if (test.kind == TestKind::seat) return test;
  AssociationTest out = test;
  out.kind = TestKind::seat;
  out.pos_tags.clear();
  for (ListRole role : kAllRoles) {
    WordList& list = out.list(role);
    list.devanagari.clear();
    if (!detail::expands(role, expand_attributes)) continue;
    list.words = detail::expand_list(test, templates, test.list(role).words, test.list(role).words);
  }
  if (out.x.words.size() != out.y.words.size()) {
    throw DataError("test '" + test.name + "': target expansions differ in size (" +
                    std::to_string(out.x.words.size()) + " vs " +
                    std::to_string(out.y.words.size()) + ")");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Precomputed sentence vectors

enum class SentenceProvenance { composed, precomputed };

/// Sentence -> vector map. Keys may contain spaces; otherwise the same
/// contract as EmbeddingTable.
class SentenceTable {
 public:
  SentenceTable(EmbeddingTable table, SentenceProvenance provenance)
      : table_(std::move(table)), provenance_(provenance) {}

  const EmbeddingTable& table() const { return table_; }
  std::size_t size() const { return table_.size(); }
  std::size_t dimension() const { return table_.dimension(); }
  SentenceProvenance provenance() const { return provenance_; }
  std::optional<VectorView> lookup(std::string_view sentence) const { return table_.lookup(sentence); }

 private:
  EmbeddingTable table_;
  SentenceProvenance provenance_;
};

/// Reads `sentence TAB v1 SP v2 ...` lines.
inline SentenceTable ingest_precomputed(std::istream& in) {
  std::vector<EmbeddingTable::Entry> entries;
  std::set<std::string> seen;
  std::optional<std::size_t> dimension;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw DataError("line " + std::to_string(line_no) + ": expected 'sentence<TAB>values'");
    }
    std::string sentence = nfc(line.substr(0, tab));
    const auto fields = detail::split_fields(std::string_view(line).substr(tab + 1));
    if (fields.empty()) throw DataError("line " + std::to_string(line_no) + ": no vector values");
    if (!dimension) dimension = fields.size();
    if (fields.size() != *dimension) {
      throw DataError("line " + std::to_string(line_no) + ": dimension " +
                      std::to_string(fields.size()) + " differs from " + std::to_string(*dimension));
    }
    if (!seen.insert(sentence).second) {
      throw DataError("line " + std::to_string(line_no) + ": duplicate sentence '" + sentence + "'");
    }
    Vector v(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) v[i] = detail::parse_real(fields[i], line_no);
    entries.push_back({std::move(sentence), std::move(v)});
  }
  if (entries.empty()) throw DataError("precomputed sentence file is empty");
  return SentenceTable(EmbeddingTable::from_entries(std::move(entries), Normalization::keep),
                       SentenceProvenance::precomputed);
}

inline SentenceTable ingest_precomputed_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open precomputed sentence file '" + path + "'");
  return ingest_precomputed(in);
}

inline void write_precomputed(const SentenceTable& sentences, std::ostream& out) {
  const auto& t = sentences.table();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.token(i).find_first_of("\t\n\r") != std::string::npos) {
      throw DataError("sentence '" + t.token(i) + "' contains a tab or newline");
    }
    out << t.token(i) << '\t';
    const auto row = t.row(i);
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? " " : "") << format_real(row[k]);
    out << '\n';
  }
}

/// All distinct sentences the test needs, in x, y, a, b order.
inline std::vector<std::string> sentences_for(const AssociationTest& test,
                                              const TemplateSet& templates,
                                              bool expand_attributes = true) {
  const AssociationTest seat = build_seat_test(test, templates, expand_attributes);
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (ListRole role : kAllRoles) {
    for (const auto& s : seat.list(role).words) {
      if (seen.insert(s).second) out.push_back(s);
    }
  }
  return out;
}

/// One sentence per line, for an external encoder to turn into the TSV that
/// ingest_precomputed reads.
inline void emit_sentences(const std::vector<AssociationTest>& tests, const TemplateSet& templates,
                           bool expand_attributes, std::ostream& out) {
  std::set<std::string> seen;
  for (const auto& t : tests) {
    for (const auto& s : sentences_for(t, templates, expand_attributes)) {
      if (seen.insert(s).second) out << s << '\n';
    }
  }
}

// ---------------------------------------------------------------------------

struct SeatOptions {
  OovPolicy policy = OovPolicy::drop_with_warning;
  Script script = Script::romanized;
  bool expand_attributes = true;
};

using SeatSource = std::variant<const EmbeddingTable*, const SentenceTable*>;

/// Composed mode: words are resolved against the table first (same policy and
/// report as WEAT), survivors are expanded, and each sentence is mean-pooled.
/// Precomputed mode: every expanded sentence must be in the sentence table.
inline ResolvedTest resolve_seat(const AssociationTest& test, const TemplateSet& templates,
                                 const SeatSource& source, const SeatOptions& options) {
  if (std::holds_alternative<const SentenceTable*>(source)) {
    const SentenceTable& sentences = *std::get<const SentenceTable*>(source);
    const AssociationTest seat = build_seat_test(test, templates, options.expand_attributes);
    return resolve_with(
        seat,
        [&sentences](const std::string& s) -> std::optional<Vector> {
          auto v = sentences.lookup(s);
          if (!v) return std::nullopt;
          return Vector(v->begin(), v->end());
        },
        OovPolicy::strict);
  }

  const EmbeddingTable& table = *std::get<const EmbeddingTable*>(source);
  if (test.kind == TestKind::seat) {
    return resolve_with(
        test,
        [&table](const std::string& s) -> std::optional<Vector> {
          std::vector<std::string> skipped;
          try {
            return compose_sentence(table, s, Pooling::mean, &skipped);
          } catch (const DataError&) {
            return std::nullopt;
          }
        },
        options.policy);
  }

  ResolvedTest words = resolve(test, table, options.policy, options.script);
  ResolvedTest out;
  out.source = test;
  out.source.kind = TestKind::seat;
  out.oov_report = words.oov_report;
  for (ListRole role : kAllRoles) {
    const ResolvedList& src = words.list(role);
    ResolvedList& dst = out.list(role);
    if (!detail::expands(role, options.expand_attributes)) {
      dst = src;
      continue;
    }
    const auto sentences = detail::expand_list(test, templates, src.words, src.tokens);
    std::set<std::string> reported;
    for (const auto& s : sentences) {
      std::vector<std::string> skipped;
      dst.vectors.push_back(compose_sentence(table, s, Pooling::mean, &skipped));
      dst.words.push_back(s);
      dst.tokens.push_back(s);
      for (const auto& tok : skipped) {
        if (reported.insert(tok).second) {
          out.oov_report.push_back({to_string(role), test.list(role).label, tok, "sentence-token"});
        }
      }
    }
  }
  if (out.x.vectors.size() != out.y.vectors.size()) {
    throw DataError("test '" + test.name + "': target expansions differ in size (" +
                    std::to_string(out.x.vectors.size()) + " vs " +
                    std::to_string(out.y.vectors.size()) + ")");
  }
  return out;
}

inline TestResult run_seat(const AssociationTest& test, const TemplateSet& templates,
                           const SeatSource& source, const PermutationPlan& plan,
                           const SeatOptions& options = {}, const Conventions& conventions = {}) {
  return run_weat(resolve_seat(test, templates, source, options), plan, conventions);
}

}  // namespace embias
