// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "embias/builtin_data.hpp"
#include "embias/embedding_table.hpp"
#include "embias/error.hpp"
#include "embias/lexicon.hpp"
#include "embias/vector_ops.hpp"

namespace embias {

enum class DirectionMethod { pair, pca_pairs, pca_list };

inline const char* to_string(DirectionMethod m) {
  switch (m) {
    case DirectionMethod::pair: return "pair";
    case DirectionMethod::pca_pairs: return "pca-pairs";
    case DirectionMethod::pca_list: return "pca-list";
  }
  return "pair";
}

inline std::optional<DirectionMethod> parse_direction_method(std::string_view s) {
  if (s == "pair") return DirectionMethod::pair;
  if (s == "pca-pairs") return DirectionMethod::pca_pairs;
  if (s == "pca-list") return DirectionMethod::pca_list;
  return std::nullopt;
}

struct ParentDirection {
  std::string label;
  Vector vector;
};

/// A labeled unit direction. `parents` is non-empty only when the direction
/// was orthogonalized, and lists the removed directions in order.
struct BiasDirection {
  std::string label;
  Vector vector;
  DirectionMethod method = DirectionMethod::pair;
  std::vector<ParentDirection> parents;
  std::vector<std::string> warnings;

  bool orthogonalized() const { return !parents.empty(); }

  std::string provenance() const {
    if (parents.empty()) return to_string(method);
    std::string out = "orthogonalized(";
    for (std::size_t i = 0; i < parents.size(); ++i) out += (i ? "," : "") + parents[i].label;
    return out + ")";
  }
};

// ---------------------------------------------------------------------------
// PCA kernel

namespace detail {

using Matrix = std::vector<Vector>;

inline Matrix gram(const Matrix& rows) {
  const std::size_t k = rows.size();
  Matrix g(k, Vector(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) g[i][j] = g[j][i] = dot(rows[i], rows[j]);
  }
  return g;
}

inline Vector multiply(const Matrix& m, const Vector& x) {
  Vector out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], x);
  return out;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t k = a.size();
  Matrix out(k, Vector(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      for (std::size_t j = 0; j < k; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

inline double max_abs(const Matrix& m) {
  double out = 0.0;
  for (const auto& r : m) {
    for (double x : r) out = std::max(out, std::abs(x));
  }
  return out;
}

inline bool scale_to_unit(Vector& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) return false;
  for (double& x : v) x /= n;
  return true;
}

/// Dominant eigenvector of a symmetric positive semidefinite matrix by power
/// iteration. Repeated squaring first separates the dominant eigenvalue so
/// the plain iteration converges in few steps.
inline Vector dominant_eigenvector(const Matrix& g, Vector x) {
  Matrix p = g;
  for (int s = 0; s < 6; ++s) {
    const double m = max_abs(p);
    if (!(m > 0.0)) break;
    for (auto& r : p) {
      for (double& v : r) v /= m;
    }
    p = multiply(p, p);
  }
  if (!scale_to_unit(x)) throw ComputationError("power iteration started from a zero vector");
  for (int it = 0; it < 200; ++it) {
    Vector y = multiply(p, x);
    if (!scale_to_unit(y)) break;
    x = std::move(y);
  }
  for (int it = 0; it < 1'000'000; ++it) {
    Vector y = multiply(g, x);
    if (!scale_to_unit(y)) throw ComputationError("power iteration collapsed to zero");
    double diff = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) diff = std::max(diff, std::abs(y[i] - x[i]));
    x = std::move(y);
    if (diff <= 1e-15) break;
  }
  return x;
}

}  // namespace detail

/// Unit top right-singular vector of the row matrix (optionally mean
/// centered). The sign gives a non-negative dot product with the first row
/// that is not orthogonal to the result.
inline Vector top_principal_component(const std::vector<Vector>& rows, bool center) {
  if (rows.size() < 2) throw ComputationError("principal component needs at least two vectors");
  const std::size_t d = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != d) throw ComputationError("principal component inputs differ in dimension");
  }
  detail::Matrix m = rows;
  double raw_scale = 0.0;
  for (const auto& r : rows) raw_scale = std::max(raw_scale, norm(r));
  if (center) {
    Vector mean(d, 0.0);
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < d; ++i) mean[i] += r[i];
    }
    for (double& x : mean) x /= static_cast<double>(rows.size());
    for (auto& r : m) {
      for (std::size_t i = 0; i < d; ++i) r[i] -= mean[i];
    }
  }

  std::size_t largest = 0;
  double largest_norm = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double n = norm(m[i]);
    if (n > largest_norm) {
      largest_norm = n;
      largest = i;
    }
  }
  if (!(largest_norm > 1e-12 * std::max(1.0, raw_scale))) {
    throw ComputationError(center ? "vectors have zero variance" : "all vectors are zero");
  }

  const detail::Matrix g = detail::gram(m);
  Vector start = g[largest];
  const double shift = 1e-3 * norm(start) / std::sqrt(static_cast<double>(start.size()));
  for (double& x : start) x += shift;
  const Vector u = detail::dominant_eigenvector(g, std::move(start));

  Vector v(d, 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) v[k] += u[i] * m[i][k];
  }
  if (!detail::scale_to_unit(v)) throw ComputationError("principal component vanished");

  // Residual of (M^T M) v = lambda v.
  const Vector mv = detail::multiply(m, v);
  Vector cv(d, 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) cv[k] += mv[i] * m[i][k];
  }
  const double lambda = dot(cv, v);
  double residual = 0.0;
  for (std::size_t k = 0; k < d; ++k) residual += (cv[k] - lambda * v[k]) * (cv[k] - lambda * v[k]);
  residual = std::sqrt(residual);
  if (!(lambda > 0.0) || residual > 1e-8 * lambda) {
    throw ComputationError("principal component did not converge (relative residual " +
                           std::to_string(lambda > 0.0 ? residual / lambda : residual) + ")");
  }

  for (const auto& r : m) {
    const double s = dot(r, v);
    if (std::abs(s) > 1e-12 * norm(r)) {
      if (s < 0.0) {
        for (double& x : v) x = -x;
      }
      break;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Directions

namespace detail {

inline Vector lookup_or_throw(const EmbeddingTable& table, const std::string& word,
                              const std::string& what) {
  auto v = table.lookup(word);
  if (!v) throw DataError(what + ": '" + word + "' is not in the vocabulary");
  return Vector(v->begin(), v->end());
}

}  // namespace detail

inline BiasDirection direction_from_pair(const EmbeddingTable& table, const std::string& word_a,
                                         const std::string& word_b, std::string label = "d_pair") {
  const Vector a = detail::lookup_or_throw(table, word_a, "direction pair");
  const Vector b = detail::lookup_or_throw(table, word_b, "direction pair");
  const Vector diff = subtract(a, b);
  if (norm(diff) == 0.0) {
    throw ComputationError("direction pair '" + word_a + "' / '" + word_b + "' has zero difference");
  }
  return {std::move(label), normalized(diff), DirectionMethod::pair, {}, {}};
}

/// Top principal component of the uncentered difference vectors. Pairs with
/// an out-of-vocabulary side are dropped with a warning.
inline BiasDirection direction_from_pairs_pca(const EmbeddingTable& table,
                                              const builtin::WordPairs& pairs,
                                              std::string label = "d_pca") {
  std::vector<Vector> diffs;
  std::vector<std::string> warnings;
  for (const auto& [a, b] : pairs) {
    auto va = table.lookup(a);
    auto vb = table.lookup(b);
    if (!va || !vb) {
      warnings.push_back("pair '" + a + "' / '" + b + "' dropped: '" + (va ? b : a) +
                         "' is not in the vocabulary");
      continue;
    }
    diffs.push_back(subtract(*va, *vb));
  }
  if (diffs.size() < 2) {
    throw DataError("direction '" + label + "': PCA over pairs needs at least 2 resolvable pairs (got " +
                    std::to_string(diffs.size()) + "); use a single-pair direction instead");
  }
  Vector v;
  try {
    v = top_principal_component(diffs, false);
  } catch (const ComputationError& e) {
    throw ComputationError("direction '" + label + "': " + e.what());
  }
  return {std::move(label), std::move(v), DirectionMethod::pca_pairs, {}, std::move(warnings)};
}

/// Top principal component of the mean-centered word vectors. OOV words are
/// dropped with a warning.
inline BiasDirection direction_from_list_pca(const EmbeddingTable& table,
                                             const std::vector<std::string>& words,
                                             std::string label = "d_list") {
  std::vector<Vector> rows;
  std::vector<std::string> warnings;
  for (const auto& w : words) {
    auto v = table.lookup(w);
    if (!v) {
      warnings.push_back("word '" + w + "' dropped: not in the vocabulary");
      continue;
    }
    rows.emplace_back(v->begin(), v->end());
  }
  if (rows.size() < 3) {
    throw DataError("direction '" + label + "': PCA over a word list needs at least 3 resolvable words (got " +
                    std::to_string(rows.size()) + ")");
  }
  Vector v;
  try {
    v = top_principal_component(rows, true);
  } catch (const ComputationError& e) {
    throw ComputationError("direction '" + label + "': " + e.what());
  }
  return {std::move(label), std::move(v), DirectionMethod::pca_list, {}, std::move(warnings)};
}

/// Removes every parent from `direction` and renormalizes. Parents are first
/// orthonormalized in the given order, so the result is orthogonal to each
/// of them even when they are not orthogonal to one another.
inline BiasDirection orthogonalize(const BiasDirection& direction,
                                   const std::vector<BiasDirection>& against,
                                   std::optional<std::string> label = std::nullopt) {
  for (const auto& g : against) require_same_dimension(direction.vector, g.vector);

  std::vector<Vector> basis;
  for (const auto& g : against) {
    Vector q = g.vector;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) q = reject(q, b);
    }
    const double n = norm(q);
    if (n > 1e-10 * std::max(1.0, norm(g.vector))) {
      for (double& x : q) x /= n;
      basis.push_back(std::move(q));
    }
  }

  Vector d = direction.vector;
  for (const auto& b : basis) d = reject(d, b);
  const double residual = norm(d);
  if (residual < 1e-6) {
    throw ComputationError("direction '" + direction.label +
                           "' lies in the span of the directions it is orthogonalized against "
                           "(residual " + std::to_string(residual) + ")");
  }
  for (const auto& b : basis) d = reject(d, b);
  d = normalized(d);

  BiasDirection out;
  out.label = label.value_or(direction.label);
  out.vector = std::move(d);
  out.method = direction.method;
  out.parents = direction.parents;
  for (const auto& g : against) out.parents.push_back({g.label, g.vector});
  out.warnings = direction.warnings;
  return out;
}

// ---------------------------------------------------------------------------
// Direction specs

/// `{label, method, words | pairs, orthogonal_to: [spec...]}`. `words` may
/// name a bundled list ("builtin:<name>"); `pairs` may mix bundled list names
/// and explicit [a, b] pairs.
struct DirectionSpec {
  std::string label;
  DirectionMethod method = DirectionMethod::pair;
  std::vector<std::string> words;
  builtin::WordPairs pairs;
  std::vector<DirectionSpec> orthogonal_to;
};

namespace detail {

inline builtin::WordPairs builtin_pairs(const std::string& name) {
  if (name == "builtin:gender") return builtin::gender_word_pairs();
  if (name == "builtin:verbs") return builtin::verb_pairs();
  if (name == "builtin:adjectives") return builtin::adjective_pairs();
  if (name == "builtin:titles") return builtin::title_pairs();
  if (name == "builtin:entities") return builtin::entity_pairs();
  if (name == "builtin:equalize") return builtin::default_equalize_pairs();
  throw DataError("unknown bundled pair list '" + name + "'");
}

inline std::vector<std::string> builtin_words(const std::string& name) {
  if (name == "builtin:caste-names") return builtin::caste_names();
  if (name == "builtin:religious-entities") return builtin::religious_entity_words();
  if (name == "builtin:lastnames") {
    auto out = builtin::hindu_lastnames().words;
    for (const auto& w : builtin::muslim_lastnames().words) out.push_back(w);
    return out;
  }
  if (name == "builtin:hindu-lastnames") return builtin::hindu_lastnames().words;
  if (name == "builtin:muslim-lastnames") return builtin::muslim_lastnames().words;
  if (name == "builtin:preserve") return builtin::default_preserve_set();
  throw DataError("unknown bundled word list '" + name + "'");
}

inline std::vector<std::string> words_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) return builtin_words(j.get<std::string>());
  return string_array(j, where);
}

inline builtin::WordPairs pairs_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) return builtin_pairs(j.get<std::string>());
  if (!j.is_array()) throw DataError(where + " must be an array of [a, b] pairs or a bundled list name");
  builtin::WordPairs out;
  for (const auto& p : j) {
    if (p.is_string()) {
      for (auto& pair : builtin_pairs(p.get<std::string>())) out.push_back(std::move(pair));
      continue;
    }
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
      throw DataError(where + " entries must be [string, string] pairs or bundled list names");
    }
    out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return out;
}

}  // namespace detail

inline DirectionSpec direction_spec_from_json(const Json& j, const std::string& where = "direction") {
  if (!j.is_object()) throw DataError(where + " must be an object");
  DirectionSpec spec;
  spec.label = detail::require_string(j, "label", where);
  const std::string method = detail::require_string(j, "method", where);
  auto m = parse_direction_method(method);
  if (!m) throw DataError(where + ": unknown method '" + method + "' (pair | pca-pairs | pca-list)");
  spec.method = *m;
  const std::string at = where + " '" + spec.label + "'";
  if (spec.method == DirectionMethod::pca_list) {
    if (!j.contains("words")) throw DataError(at + ": method pca-list needs 'words'");
    spec.words = detail::words_from_json(j["words"], at + ".words");
  } else {
    if (!j.contains("pairs")) throw DataError(at + ": method " + method + " needs 'pairs'");
    spec.pairs = detail::pairs_from_json(j["pairs"], at + ".pairs");
    if (spec.method == DirectionMethod::pair && spec.pairs.size() != 1) {
      throw DataError(at + ": method pair needs exactly one pair");
    }
  }
  if (j.contains("orthogonal_to")) {
    if (!j["orthogonal_to"].is_array()) throw DataError(at + ".orthogonal_to must be an array");
    for (std::size_t i = 0; i < j["orthogonal_to"].size(); ++i) {
      spec.orthogonal_to.push_back(direction_spec_from_json(
          j["orthogonal_to"][i], at + ".orthogonal_to[" + std::to_string(i) + "]"));
    }
  }
  return spec;
}

/// A spec document is a single spec, an array of specs, or
/// `{"directions": [...]}`.
inline std::vector<DirectionSpec> direction_specs_from_json(const Json& doc) {
  const Json* list = &doc;
  if (doc.is_object() && doc.contains("directions")) list = &doc["directions"];
  std::vector<DirectionSpec> out;
  if (list->is_object()) {
    out.push_back(direction_spec_from_json(*list));
  } else if (list->is_array()) {
    for (std::size_t i = 0; i < list->size(); ++i) {
      out.push_back(direction_spec_from_json((*list)[i], "directions[" + std::to_string(i) + "]"));
    }
  } else {
    throw DataError("direction spec document must be an object or an array");
  }
  if (out.empty()) throw DataError("direction spec document lists no directions");
  std::set<std::string> labels;
  for (const auto& s : out) {
    if (!labels.insert(s.label).second) throw DataError("duplicate direction label '" + s.label + "'");
  }
  return out;
}

inline std::vector<DirectionSpec> load_direction_specs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open direction spec file '" + path + "'");
  try {
    return direction_specs_from_json(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("direction spec file '" + path + "' is not valid JSON: " + e.what());
  }
}

inline BiasDirection compute_direction(const EmbeddingTable& table, const DirectionSpec& spec) {
  BiasDirection base;
  switch (spec.method) {
    case DirectionMethod::pair:
      base = direction_from_pair(table, spec.pairs.at(0).first, spec.pairs.at(0).second, spec.label);
      break;
    case DirectionMethod::pca_pairs:
      base = direction_from_pairs_pca(table, spec.pairs, spec.label);
      break;
    case DirectionMethod::pca_list:
      base = direction_from_list_pca(table, spec.words, spec.label);
      break;
  }
  if (spec.orthogonal_to.empty()) return base;
  std::vector<BiasDirection> parents;
  for (const auto& p : spec.orthogonal_to) parents.push_back(compute_direction(table, p));
  return orthogonalize(base, parents);
}

/// GloVe text, one line per direction in the given order, label as token.
inline void write_directions(const std::vector<BiasDirection>& directions, std::ostream& out) {
  for (const auto& d : directions) {
    if (d.label.empty() || d.label.find_first_of(" \t\n\r") != std::string::npos) {
      throw DataError("direction label '" + d.label + "' cannot be written as a GloVe token");
    }
    out << d.label;
    for (double x : d.vector) out << ' ' << format_real(x);
    out << '\n';
  }
}

}  // namespace embias
