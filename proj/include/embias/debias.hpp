// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "embias/assoc.hpp"
#include "embias/builtin_data.hpp"
#include "embias/embedding_table.hpp"
#include "embias/error.hpp"
#include "embias/lexicon.hpp"
#include "embias/runner.hpp"
#include "embias/subspace.hpp"
#include "embias/vector_ops.hpp"

namespace embias {

enum class DebiasMethod { linear, hard, lpsg };
enum class Scope { all_vocabulary, listed_words };

inline const char* to_string(DebiasMethod m) {
  switch (m) {
    case DebiasMethod::linear: return "linear";
    case DebiasMethod::hard: return "hard";
    case DebiasMethod::lpsg: return "lpsg";
  }
  return "linear";
}
inline const char* to_string(Scope s) {
  return s == Scope::all_vocabulary ? "all-vocabulary" : "listed-words";
}

struct DebiasPlan {
  DebiasMethod method = DebiasMethod::linear;
  DirectionSpec direction;
  Scope scope = Scope::all_vocabulary;
  std::vector<std::string> words;  // listed-words scope
  builtin::WordPairs equalize_pairs;
  std::vector<std::string> preserve;
  std::vector<DirectionSpec> grammatical_directions;
};

inline void validate(const DebiasPlan& plan) {
  if (plan.scope == Scope::listed_words && plan.words.empty()) {
    throw DataError("plan scope 'listed-words' needs a non-empty 'words' list");
  }
  if (plan.method == DebiasMethod::hard) {
    if (plan.equalize_pairs.empty()) throw DataError("hard debias plan needs non-empty 'equalize_pairs'");
    std::set<std::string> seen;
    for (const auto& [a, b] : plan.equalize_pairs) {
      if (nfc(a) == nfc(b)) throw DataError("equalize pair '" + a + "' / '" + b + "' has identical sides");
      for (const auto& w : {a, b}) {
        if (!seen.insert(nfc(w)).second) {
          throw DataError("word '" + w + "' appears in more than one equalize pair");
        }
      }
    }
  }
  if (plan.method == DebiasMethod::lpsg) {
    if (plan.grammatical_directions.empty()) {
      throw DataError("lpsg plan needs at least one grammatical direction");
    }
    if (plan.direction.method != DirectionMethod::pca_pairs) {
      throw DataError("lpsg plan direction must use method pca-pairs");
    }
    for (const auto& g : plan.grammatical_directions) {
      if (g.method != DirectionMethod::pca_pairs) {
        throw DataError("lpsg grammatical direction '" + g.label + "' must use method pca-pairs");
      }
    }
  }
}

inline DebiasPlan plan_from_json(const Json& j) {
  if (!j.is_object()) throw DataError("debias plan must be an object");
  DebiasPlan plan;
  const std::string method = detail::require_string(j, "method", "plan");
  if (method == "linear") plan.method = DebiasMethod::linear;
  else if (method == "hard") plan.method = DebiasMethod::hard;
  else if (method == "lpsg") plan.method = DebiasMethod::lpsg;
  else throw DataError("plan: unknown method '" + method + "' (linear | hard | lpsg)");

  if (!j.contains("direction")) throw DataError("plan: missing 'direction'");
  plan.direction = direction_spec_from_json(j["direction"], "plan.direction");

  if (j.contains("scope")) {
    const std::string scope = detail::require_string(j, "scope", "plan");
    if (scope == "all-vocabulary") plan.scope = Scope::all_vocabulary;
    else if (scope == "listed-words") plan.scope = Scope::listed_words;
    else throw DataError("plan: unknown scope '" + scope + "' (all-vocabulary | listed-words)");
  }
  if (j.contains("words")) plan.words = detail::words_from_json(j["words"], "plan.words");
  if (j.contains("equalize_pairs")) {
    plan.equalize_pairs = detail::pairs_from_json(j["equalize_pairs"], "plan.equalize_pairs");
  }
  if (j.contains("preserve")) plan.preserve = detail::words_from_json(j["preserve"], "plan.preserve");
  if (j.contains("grammatical_directions")) {
    const Json& g = j["grammatical_directions"];
    if (!g.is_array()) throw DataError("plan.grammatical_directions must be an array");
    for (std::size_t i = 0; i < g.size(); ++i) {
      plan.grammatical_directions.push_back(
          direction_spec_from_json(g[i], "plan.grammatical_directions[" + std::to_string(i) + "]"));
    }
  }
  validate(plan);
  return plan;
}

inline DebiasPlan load_plan_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open plan file '" + path + "'");
  try {
    return plan_from_json(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("plan file '" + path + "' is not valid JSON: " + e.what());
  }
}

struct DebiasResult {
  EmbeddingTable table;
  BiasDirection direction;  // the direction actually projected out
  std::vector<std::string> warnings;
};

namespace detail {

inline void require_unit(const BiasDirection& d, std::size_t dimension) {
  if (d.vector.size() != dimension) {
    throw ComputationError("direction '" + d.label + "' has dimension " + std::to_string(d.vector.size()) +
                           ", table has " + std::to_string(dimension));
  }
  if (std::abs(norm(d.vector) - 1.0) > 1e-9) {
    throw ComputationError("direction '" + d.label + "' is not unit norm");
  }
}

inline std::set<std::string> nfc_set(const std::vector<std::string>& words) {
  std::set<std::string> out;
  for (const auto& w : words) out.insert(nfc(w));
  return out;
}

}  // namespace detail

/// w' = w - <w, v> v for every in-scope word; other rows are copied. The
/// output is not renormalized.
inline EmbeddingTable linear_project(const EmbeddingTable& table, const BiasDirection& direction,
                                     Scope scope = Scope::all_vocabulary,
                                     const std::vector<std::string>& words = {},
                                     std::vector<std::string>* warnings = nullptr) {
  detail::require_unit(direction, table.dimension());
  const std::set<std::string> listed = detail::nfc_set(words);
  if (scope == Scope::listed_words && warnings) {
    for (const auto& w : listed) {
      if (!table.contains(w)) warnings->push_back("scope word '" + w + "' is not in the vocabulary");
    }
  }
  return table.transformed(
      [&](const std::string& token, VectorView row) {
        if (scope == Scope::listed_words && listed.count(token) == 0) return Vector(row.begin(), row.end());
        return reject(row, direction.vector);
      },
      Normalization::keep);
}

/// Neutralize every word outside `preserve` and the equalize pairs, then
/// place each pair symmetrically about the direction on the unit sphere.
inline DebiasResult hard_debias(const EmbeddingTable& table, const BiasDirection& direction,
                                const builtin::WordPairs& equalize_pairs,
                                const std::vector<std::string>& preserve) {
  detail::require_unit(direction, table.dimension());
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (std::abs(norm(table.row(i)) - 1.0) > 1e-6) {
      throw DataError("hard debias needs a unit-normalized table ('" + table.token(i) + "' is not unit norm)");
    }
  }
  const VectorView v = direction.vector;
  std::set<std::string> skip = detail::nfc_set(preserve);
  std::map<std::string, Vector> equalized;
  std::vector<std::string> warnings;

  for (const auto& [a, b] : equalize_pairs) {
    const Vector w1 = detail::lookup_or_throw(table, a, "equalize pair");
    const Vector w2 = detail::lookup_or_throw(table, b, "equalize pair");
    skip.insert(nfc(a));
    skip.insert(nfc(b));
    const double p1 = dot(w1, v);
    const double p2 = dot(w2, v);
    if (p1 == p2) {
      warnings.push_back("equalize pair '" + a + "' / '" + b +
                         "' has equal projections on the direction; left unchanged");
      continue;
    }
    Vector mu(w1.size());
    for (std::size_t k = 0; k < mu.size(); ++k) mu[k] = (w1[k] + w2[k]) / 2.0;
    const double pm = dot(mu, v);
    const Vector nu = reject(mu, v);
    const double nn = dot(nu, nu);
    if (nn > 1.0) {
      throw ComputationError("equalize pair '" + a + "' / '" + b + "': orthogonal mean has norm above 1");
    }
    const double scale = std::sqrt(1.0 - nn);
    auto place = [&](double p) {
      const double sign = p - pm > 0.0 ? 1.0 : -1.0;
      Vector out = nu;
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += scale * sign * v[k];
      return out;
    };
    equalized[nfc(a)] = place(p1);
    equalized[nfc(b)] = place(p2);
  }

  EmbeddingTable out = table.transformed(
      [&](const std::string& token, VectorView row) {
        if (auto it = equalized.find(token); it != equalized.end()) return it->second;
        if (skip.count(token) != 0) return Vector(row.begin(), row.end());
        Vector n = reject(row, v);
        const double len = norm(n);
        if (len == 0.0) {
          throw ComputationError("word '" + token + "' lies on the bias direction and cannot be neutralized");
        }
        for (double& x : n) x /= len;
        return n;
      },
      Normalization::assert_unit);
  return {std::move(out), direction, std::move(warnings)};
}

/// d_s = d_PCA with every grammatical direction removed, then projected out.
inline DebiasResult lpsg_debias(const EmbeddingTable& table, const DirectionSpec& pca_pairs,
                                const std::vector<DirectionSpec>& grammatical,
                                Scope scope = Scope::all_vocabulary,
                                const std::vector<std::string>& words = {}) {
  if (grammatical.empty()) throw DataError("lpsg needs at least one grammatical direction");
  BiasDirection d_pca = compute_direction(table, pca_pairs);
  std::vector<BiasDirection> parents;
  std::vector<std::string> warnings = d_pca.warnings;
  for (const auto& g : grammatical) {
    parents.push_back(compute_direction(table, g));
    for (const auto& w : parents.back().warnings) warnings.push_back(parents.back().label + ": " + w);
  }
  BiasDirection d_s = orthogonalize(d_pca, parents, "d_s");
  EmbeddingTable out = linear_project(table, d_s, scope, words, &warnings);
  return {std::move(out), std::move(d_s), std::move(warnings)};
}

/// d_last' : lastname direction with the entity direction removed.
inline BiasDirection religion_direction(const EmbeddingTable& table,
                                        const std::vector<std::string>& hindu_lastnames,
                                        const std::vector<std::string>& muslim_lastnames,
                                        const std::vector<std::string>& entity_words) {
  std::vector<std::string> lastnames = hindu_lastnames;
  lastnames.insert(lastnames.end(), muslim_lastnames.begin(), muslim_lastnames.end());
  const BiasDirection d_last = direction_from_list_pca(table, lastnames, "d_last");
  const BiasDirection d_ent = direction_from_list_pca(table, entity_words, "d_ent");
  return orthogonalize(d_last, {d_ent}, "d_last'");
}

inline DebiasResult apply_plan(const EmbeddingTable& table, const DebiasPlan& plan) {
  validate(plan);
  switch (plan.method) {
    case DebiasMethod::linear: {
      BiasDirection d = compute_direction(table, plan.direction);
      std::vector<std::string> warnings = d.warnings;
      EmbeddingTable out = linear_project(table, d, plan.scope, plan.words, &warnings);
      return {std::move(out), std::move(d), std::move(warnings)};
    }
    case DebiasMethod::hard: {
      BiasDirection d = compute_direction(table, plan.direction);
      DebiasResult r = hard_debias(table, d, plan.equalize_pairs, plan.preserve);
      r.warnings.insert(r.warnings.begin(), d.warnings.begin(), d.warnings.end());
      return r;
    }
    case DebiasMethod::lpsg:
      return lpsg_debias(table, plan.direction, plan.grammatical_directions, plan.scope, plan.words);
  }
  throw DataError("unknown debias method");
}

// ---------------------------------------------------------------------------
// Before / after evaluation

struct ComparisonRow {
  TestOutcome before;
  TestOutcome after;
  bool information_retention = false;  // ME test: the association should survive
};

inline std::vector<ComparisonRow> evaluate_before_after(const EmbeddingTable& before,
                                                        const EmbeddingTable& after,
                                                        const std::vector<AssociationTest>& suite,
                                                        const PermutationPlan& plan,
                                                        OovPolicy policy = OovPolicy::drop_with_warning,
                                                        const Conventions& conventions = {},
                                                        std::size_t threads = 1) {
  if (before.dimension() != after.dimension()) {
    throw DataError("before/after tables differ in dimension");
  }
  auto runner = [&](const EmbeddingTable& table) -> TestRunner {
    return [&table, &plan, policy, &conventions](const AssociationTest& t) {
      return run_weat(resolve(t, table, policy), plan, conventions);
    };
  };
  auto b = run_tests(suite, runner(before), threads);
  auto a = run_tests(suite, runner(after), threads);
  std::vector<ComparisonRow> rows;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    rows.push_back({std::move(b[i]), std::move(a[i]), suite[i].category == Category::ME});
  }
  return rows;
}

}  // namespace embias
