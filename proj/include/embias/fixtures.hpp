// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "embias/builtin_data.hpp"
#include "embias/embedding_table.hpp"
#include "embias/lexicon.hpp"
#include "embias/seat.hpp"
#include "embias/vector_ops.hpp"

namespace embias::fixtures {

struct PlantedOptions {
  std::size_t dimension = 50;
  std::size_t words_per_list = 8;
  double strength = 0.8;       // component along u
  double noise = 0.1;          // per-component standard deviation
  double grammatical = 0.0;    // >0 adds the grammatical direction g and an ME test
  std::uint64_t seed = 42;
};

/// Synthetic table with a planted bias direction u = e0. X and A words sit at
/// +strength u, Y and B words at -strength u, each plus Gaussian noise.
/// With `grammatical` > 0, A/B also carry +-grammatical/2 along g = e1 and
/// the ME pairs m_i = base_i + strength g, f_i = base_i - strength g differ
/// only along g.
struct PlantedFixture {
  EmbeddingTable table;
  Vector u;
  Vector g;
  AssociationTest bm;
  AssociationTest me;  // empty lists unless grammatical > 0
  builtin::WordPairs bm_pairs;  // (a_i, b_i)
  builtin::WordPairs me_pairs;  // (m_i, f_i)
};

inline std::string indexed(const char* prefix, std::size_t i) { return prefix + std::to_string(i); }

inline PlantedFixture planted(const PlantedOptions& options = {}) {
  const std::size_t d = options.dimension;
  const std::size_t n = options.words_per_list;
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss(0.0, options.noise);

  Vector u(d, 0.0);
  u[0] = 1.0;
  Vector g(d, 0.0);
  g[1] = 1.0;

  std::vector<EmbeddingTable::Entry> entries;
  auto noisy = [&](double along_u, double along_g) {
    Vector v(d);
    for (double& x : v) x = gauss(rng);
    for (std::size_t k = 0; k < d; ++k) v[k] += along_u * u[k] + along_g * g[k];
    return v;
  };

  AssociationTest bm;
  bm.name = "planted-bm";
  bm.description = "planted bias along u";
  bm.category = Category::BM;
  bm.variant = Variant::custom;
  bm.x.label = "X";
  bm.y.label = "Y";
  bm.a.label = "A";
  bm.b.label = "B";

  const double s = options.strength;
  const double half_g = options.grammatical / 2.0;
  struct Spec {
    const char* prefix;
    WordList* list;
    double along_u;
    double along_g;
  };
  for (const Spec& spec : {Spec{"x", &bm.x, s, 0.0}, Spec{"y", &bm.y, -s, 0.0},
                           Spec{"a", &bm.a, s, half_g}, Spec{"b", &bm.b, -s, -half_g}}) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::string w = indexed(spec.prefix, i);
      spec.list->words.push_back(w);
      entries.push_back({w, noisy(spec.along_u, spec.along_g)});
    }
  }

  builtin::WordPairs bm_pairs;
  builtin::WordPairs me_pairs;
  AssociationTest me;
  for (std::size_t i = 0; i < n; ++i) bm_pairs.emplace_back(bm.a.words[i], bm.b.words[i]);

  if (options.grammatical > 0.0) {
    me.name = "planted-me";
    me.description = "pairs differing only along g";
    me.category = Category::ME;
    me.variant = Variant::custom;
    me.x.label = "M";
    me.y.label = "F";
    me.a = bm.a;
    me.b = bm.b;
    for (std::size_t i = 0; i < n; ++i) {
      const Vector base = noisy(0.0, 0.0);
      Vector m = base;
      Vector f = base;
      for (std::size_t k = 0; k < d; ++k) {
        m[k] += s * g[k];
        f[k] -= s * g[k];
      }
      const std::string mw = indexed("m", i);
      const std::string fw = indexed("f", i);
      me.x.words.push_back(mw);
      me.y.words.push_back(fw);
      entries.push_back({mw, std::move(m)});
      entries.push_back({fw, std::move(f)});
      me_pairs.emplace_back(mw, fw);
    }
  }

  return {EmbeddingTable::from_entries(std::move(entries), Normalization::unit),
          std::move(u),
          std::move(g),
          std::move(bm),
          std::move(me),
          std::move(bm_pairs),
          std::move(me_pairs)};
}

/// Every token a builtin or translated suite, a builtin template or a bundled
/// plan can look up, in first-seen order.
inline std::vector<std::string> builtin_vocabulary() {
  std::vector<std::string> out;
  std::set<std::string> seen;
  auto add = [&](const std::string& w) {
    if (seen.insert(w).second) out.push_back(w);
  };
  for (const auto& suite : {builtin::suites(), builtin::translated_suites()}) {
    for (const auto& t : suite) {
      for (ListRole role : kAllRoles) {
        for (const auto& w : t.list(role).words) add(w);
        for (const auto& w : t.list(role).devanagari) add(w);
      }
    }
  }
  for (const char* w : {"naari", "nar", "ghasiya", "pandit", "desai", "acharya", "nasir"}) add(w);
  for (const auto& [pos, templates] : builtin_templates().templates) {
    for (const auto& t : templates) {
      for (auto tok : detail::split_fields(t)) {
        if (tok != kSlot) add(std::string(tok));
      }
    }
  }
  return out;
}

/// Gaussian table over the builtin vocabulary. Each builtin test i plants its
/// own axis e_(i mod dim): X and A words move by +strength, Y and B words by
/// -strength.
inline EmbeddingTable synthetic_builtin_table(std::size_t dimension = 50, std::uint64_t seed = 42,
                                              double strength = 0.3) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(static_cast<double>(dimension)));
  const auto vocab = builtin_vocabulary();
  std::vector<EmbeddingTable::Entry> entries;
  std::map<std::string, std::size_t> index;
  for (const auto& w : vocab) {
    Vector v(dimension);
    for (double& x : v) x = gauss(rng);
    index[w] = entries.size();
    entries.push_back({w, std::move(v)});
  }
  const auto tests = builtin::suites();
  for (std::size_t i = 0; i < tests.size(); ++i) {
    const std::size_t axis = i % dimension;
    for (ListRole role : kAllRoles) {
      const double sign = role == ListRole::x || role == ListRole::a ? 1.0 : -1.0;
      const WordList& list = tests[i].list(role);
      for (const auto* words : {&list.words, &list.devanagari}) {
        for (const auto& w : *words) entries[index.at(w)].vector[axis] += sign * strength;
      }
    }
  }
  return EmbeddingTable::from_entries(std::move(entries), Normalization::keep);
}

}  // namespace embias::fixtures
