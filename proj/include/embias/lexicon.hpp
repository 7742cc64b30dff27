// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "embias/embedding_table.hpp"
#include "embias/error.hpp"
#include "embias/unicode.hpp"
#include "embias/vector_ops.hpp"

namespace embias {

using Json = nlohmann::ordered_json;

enum class TestKind { weat, seat };
enum class Category { BM, ME };
enum class Variant { translated, language_specific, custom };
enum class Pos { name, common_noun, verb, adjective };

inline const char* to_string(TestKind k) { return k == TestKind::weat ? "weat" : "seat"; }
inline const char* to_string(Category c) { return c == Category::BM ? "BM" : "ME"; }
inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::translated: return "translated";
    case Variant::language_specific: return "language-specific";
    case Variant::custom: return "custom";
  }
  return "custom";
}
inline const char* to_string(Pos p) {
  switch (p) {
    case Pos::name: return "name";
    case Pos::common_noun: return "common-noun";
    case Pos::verb: return "verb";
    case Pos::adjective: return "adjective";
  }
  return "name";
}

inline std::optional<Pos> parse_pos(std::string_view s) {
  if (s == "name") return Pos::name;
  if (s == "common-noun") return Pos::common_noun;
  if (s == "verb") return Pos::verb;
  if (s == "adjective") return Pos::adjective;
  return std::nullopt;
}

struct WordList {
  std::string label;
  std::vector<std::string> words;
  /// Either empty or parallel to `words`.
  std::vector<std::string> devanagari;

  bool operator==(const WordList&) const = default;
};

/// Which list of the quadruple an entry refers to.
enum class ListRole { x, y, a, b };
inline constexpr std::array<ListRole, 4> kAllRoles = {ListRole::x, ListRole::y, ListRole::a,
                                                      ListRole::b};
inline const char* to_string(ListRole r) {
  switch (r) {
    case ListRole::x: return "x";
    case ListRole::y: return "y";
    case ListRole::a: return "a";
    case ListRole::b: return "b";
  }
  return "x";
}

struct AssociationTest {
  std::string name;
  std::string description;
  TestKind kind = TestKind::weat;
  Category category = Category::BM;
  Variant variant = Variant::custom;
  /// True when the lists are not verbatim from a published source.
  bool reconstructed = false;
  WordList x, y, a, b;
  std::map<std::string, Pos> pos_tags;

  const WordList& list(ListRole r) const {
    switch (r) {
      case ListRole::x: return x;
      case ListRole::y: return y;
      case ListRole::a: return a;
      case ListRole::b: return b;
    }
    return x;
  }
  WordList& list(ListRole r) { return const_cast<WordList&>(std::as_const(*this).list(r)); }

  bool operator==(const AssociationTest&) const = default;
};

/// Throws DataError naming the test and the offending field.
inline void validate(const AssociationTest& test) {
  const std::string where = "test '" + test.name + "'";
  if (test.name.empty()) throw DataError("association test with an empty name");
  for (ListRole role : kAllRoles) {
    const WordList& list = test.list(role);
    const std::string field = where + " lists." + to_string(role);
    if (list.words.empty()) throw DataError(field + " is empty");
    if (!list.devanagari.empty() && list.devanagari.size() != list.words.size()) {
      throw DataError(field + ".devanagari has " + std::to_string(list.devanagari.size()) +
                      " entries for " + std::to_string(list.words.size()) + " words");
    }
    std::set<std::string> seen;
    for (const auto& w : list.words) {
      if (w.empty()) throw DataError(field + " contains an empty word");
      if (!seen.insert(nfc(w)).second) {
        throw DataError(field + " contains duplicate word '" + w + "'");
      }
    }
  }
  if (test.x.words.size() != test.y.words.size()) {
    throw DataError(where + ": target lists differ in size (|x|=" +
                    std::to_string(test.x.words.size()) + ", |y|=" +
                    std::to_string(test.y.words.size()) + ")");
  }
  if (test.category == Category::ME && test.description.empty()) {
    throw DataError(where + ": ME tests must carry a description of the retained information");
  }
}

// ---------------------------------------------------------------------------
// Suite schema

inline Json to_json(const WordList& list) {
  Json j;
  j["label"] = list.label;
  j["words"] = list.words;
  if (!list.devanagari.empty()) j["devanagari"] = list.devanagari;
  return j;
}

inline Json to_json(const AssociationTest& test) {
  Json j;
  j["name"] = test.name;
  j["description"] = test.description;
  j["kind"] = to_string(test.kind);
  j["category"] = to_string(test.category);
  j["variant"] = to_string(test.variant);
  j["reconstructed"] = test.reconstructed;
  Json lists;
  for (ListRole r : kAllRoles) lists[to_string(r)] = to_json(test.list(r));
  j["lists"] = std::move(lists);
  if (!test.pos_tags.empty()) {
    Json tags = Json::object();
    for (const auto& [word, pos] : test.pos_tags) tags[word] = to_string(pos);
    j["pos_tags"] = std::move(tags);
  }
  return j;
}

inline Json suite_to_json(const std::vector<AssociationTest>& tests) {
  Json j;
  j["version"] = 1;
  Json arr = Json::array();
  for (const auto& t : tests) arr.push_back(to_json(t));
  j["tests"] = std::move(arr);
  return j;
}

/// Canonical on-disk rendering of a suite document.
inline std::string dump_suite(const std::vector<AssociationTest>& tests) {
  return suite_to_json(tests).dump(2, ' ', false) + "\n";
}

namespace detail {

inline std::string require_string(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw DataError(where + ": field '" + key + "' must be a string");
  }
  return j[key].get<std::string>();
}

inline std::vector<std::string> string_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw DataError(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw DataError(where + " must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline WordList word_list_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw DataError(where + " must be an object");
  WordList list;
  list.label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : "";
  if (!j.contains("words")) throw DataError(where + ".words is missing");
  list.words = string_array(j["words"], where + ".words");
  if (j.contains("devanagari")) list.devanagari = string_array(j["devanagari"], where + ".devanagari");
  return list;
}

}  // namespace detail

inline AssociationTest test_from_json(const Json& j, std::size_t index) {
  const std::string anon = "tests[" + std::to_string(index) + "]";
  if (!j.is_object()) throw DataError(anon + " must be an object");
  AssociationTest t;
  t.name = detail::require_string(j, "name", anon);
  const std::string where = "test '" + t.name + "'";
  if (j.contains("description")) t.description = detail::require_string(j, "description", where);

  const std::string kind = j.contains("kind") ? detail::require_string(j, "kind", where) : "weat";
  if (kind == "weat") t.kind = TestKind::weat;
  else if (kind == "seat") t.kind = TestKind::seat;
  else throw DataError(where + ": field 'kind' must be weat or seat, got '" + kind + "'");

  const std::string category = detail::require_string(j, "category", where);
  if (category == "BM") t.category = Category::BM;
  else if (category == "ME") t.category = Category::ME;
  else throw DataError(where + ": field 'category' must be BM or ME, got '" + category + "'");

  const std::string variant =
      j.contains("variant") ? detail::require_string(j, "variant", where) : "custom";
  if (variant == "translated") t.variant = Variant::translated;
  else if (variant == "language-specific") t.variant = Variant::language_specific;
  else if (variant == "custom") t.variant = Variant::custom;
  else throw DataError(where + ": field 'variant' has unknown value '" + variant + "'");

  if (j.contains("reconstructed")) {
    if (!j["reconstructed"].is_boolean()) throw DataError(where + ": 'reconstructed' must be boolean");
    t.reconstructed = j["reconstructed"].get<bool>();
  }

  if (!j.contains("lists") || !j["lists"].is_object()) {
    throw DataError(where + ": field 'lists' must be an object with x, y, a, b");
  }
  for (ListRole r : kAllRoles) {
    const char* key = to_string(r);
    if (!j["lists"].contains(key)) throw DataError(where + ": lists." + key + " is missing");
    t.list(r) = detail::word_list_from_json(j["lists"][key], where + " lists." + key);
  }

  if (j.contains("pos_tags")) {
    if (!j["pos_tags"].is_object()) throw DataError(where + ": pos_tags must be an object");
    for (const auto& [word, tag] : j["pos_tags"].items()) {
      if (!tag.is_string()) throw DataError(where + ": pos_tags['" + word + "'] must be a string");
      auto pos = parse_pos(tag.get<std::string>());
      if (!pos) {
        throw DataError(where + ": pos_tags['" + word + "'] has unknown tag '" +
                        tag.get<std::string>() + "'");
      }
      t.pos_tags.emplace(word, *pos);
    }
  }
  validate(t);
  return t;
}

inline std::vector<AssociationTest> suite_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("tests") || !doc["tests"].is_array()) {
    throw DataError("suite document must be an object with a 'tests' array");
  }
  std::vector<AssociationTest> tests;
  std::set<std::string> names;
  for (std::size_t i = 0; i < doc["tests"].size(); ++i) {
    auto t = test_from_json(doc["tests"][i], i);
    if (!names.insert(t.name).second) throw DataError("duplicate test name '" + t.name + "'");
    tests.push_back(std::move(t));
  }
  if (tests.empty()) throw DataError("suite document contains no tests");
  return tests;
}

inline std::vector<AssociationTest> load_suite(std::istream& in) {
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("suite document is not valid JSON: ") + e.what());
  }
  return suite_from_json(doc);
}

inline std::vector<AssociationTest> load_suite_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open suite file '" + path + "'");
  return load_suite(in);
}

// ---------------------------------------------------------------------------
// Resolution against a vocabulary

enum class OovPolicy { strict, drop_with_warning };
enum class Script { romanized, devanagari };

inline const char* to_string(OovPolicy p) {
  return p == OovPolicy::strict ? "strict" : "drop-with-warning";
}
inline const char* to_string(Script s) { return s == Script::romanized ? "romanized" : "devanagari"; }

struct OovEntry {
  std::string list;   // x | y | a | b
  std::string label;  // the list's label
  std::string token;
  std::string reason;  // oov | truncated | sentence-token

  bool operator==(const OovEntry&) const = default;
};

struct ResolvedList {
  std::vector<std::string> words;   // surviving list words as written in the suite
  std::vector<std::string> tokens;  // the form actually looked up (script-dependent)
  std::vector<Vector> vectors;

  bool operator==(const ResolvedList&) const = default;
};

struct ResolvedTest {
  AssociationTest source;
  ResolvedList x, y, a, b;
  std::vector<OovEntry> oov_report;

  const ResolvedList& list(ListRole r) const {
    switch (r) {
      case ListRole::x: return x;
      case ListRole::y: return y;
      case ListRole::a: return a;
      case ListRole::b: return b;
    }
    return x;
  }
  ResolvedList& list(ListRole r) { return const_cast<ResolvedList&>(std::as_const(*this).list(r)); }
};

using VectorLookup = std::function<std::optional<Vector>(const std::string&)>;

/// Resolves every list through `lookup`. Under drop-with-warning, OOV tokens
/// are removed and reported, then the longer target list is truncated from
/// the end until |x| == |y|. A list that loses more than half its words, or
/// shrinks below two entries, is an error.
inline ResolvedTest resolve_with(const AssociationTest& test, const VectorLookup& lookup,
                                 OovPolicy policy, Script script = Script::romanized) {
  ResolvedTest out;
  out.source = test;
  std::vector<OovEntry> missing;

  for (ListRole role : kAllRoles) {
    const WordList& list = test.list(role);
    ResolvedList& dst = out.list(role);
    for (std::size_t i = 0; i < list.words.size(); ++i) {
      std::string token = list.words[i];
      if (script == Script::devanagari) {
        token = list.devanagari.empty() ? std::string() : list.devanagari[i];
      }
      std::optional<Vector> v;
      if (!token.empty()) v = lookup(token);
      if (!v) {
        missing.push_back({to_string(role), list.label, token.empty() ? list.words[i] : token, "oov"});
        continue;
      }
      dst.words.push_back(list.words[i]);
      dst.tokens.push_back(std::move(token));
      dst.vectors.push_back(std::move(*v));
    }
  }

  if (policy == OovPolicy::strict && !missing.empty()) {
    std::string msg = "test '" + test.name + "': " + std::to_string(missing.size()) +
                      " out-of-vocabulary token(s):";
    for (const auto& m : missing) msg += " " + m.list + ":'" + m.token + "'";
    throw DataError(msg);
  }
  out.oov_report = std::move(missing);

  auto truncate = [&](ListRole role) {
    ResolvedList& longer = out.list(role);
    const std::size_t target = std::min(out.x.words.size(), out.y.words.size());
    while (longer.words.size() > target) {
      out.oov_report.push_back({to_string(role), test.list(role).label, longer.tokens.back(), "truncated"});
      longer.words.pop_back();
      longer.tokens.pop_back();
      longer.vectors.pop_back();
    }
  };
  if (out.x.words.size() > out.y.words.size()) truncate(ListRole::x);
  if (out.y.words.size() > out.x.words.size()) truncate(ListRole::y);

  for (ListRole role : kAllRoles) {
    const std::size_t original = test.list(role).words.size();
    const std::size_t kept = out.list(role).words.size();
    const std::size_t lost = original - kept;
    const bool too_small = kept < std::min<std::size_t>(2, original);
    if (too_small || 2 * lost > original) {
      throw DataError("test '" + test.name + "': list " + to_string(role) + " ('" +
                      test.list(role).label + "') kept " + std::to_string(kept) + " of " +
                      std::to_string(original) + " words after resolution");
    }
  }
  return out;
}

inline ResolvedTest resolve(const AssociationTest& test, const EmbeddingTable& table,
                            OovPolicy policy, Script script = Script::romanized) {
  return resolve_with(
      test,
      [&table](const std::string& token) -> std::optional<Vector> {
        auto v = table.lookup(token);
        if (!v) return std::nullopt;
        return Vector(v->begin(), v->end());
      },
      policy, script);
}

}  // namespace embias
