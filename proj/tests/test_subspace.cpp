// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "support.hpp"

using namespace embias;

namespace {

BiasDirection unit(std::string label, Vector v) {
  BiasDirection d;
  d.label = std::move(label);
  d.vector = normalized(v);
  return d;
}

Vector random_vector(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> g;
  Vector v(d);
  for (auto& x : v) x = g(rng);
  return v;
}

// Top eigenvector of M^T M (optionally mean-centered) from a full eigendecomposition.
Eigen::VectorXd oracle_component(const std::vector<Vector>& rows, bool center) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto d = static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd m(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < d; ++k) m(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
  }
  if (center) m.rowwise() -= m.colwise().mean();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.transpose() * m);
  return solver.eigenvectors().col(d - 1);
}

}  // namespace

TEST(DirectionFromPair, NormalizedDifference) {
  const auto table = support::table({{"a", {3, 0}}, {"b", {1, 0}}});
  const auto d = direction_from_pair(table, "a", "b");
  EXPECT_EQ(d.vector, (Vector{1, 0}));
  EXPECT_EQ(d.method, DirectionMethod::pair);
  EXPECT_EQ(d.provenance(), "pair");
}

TEST(DirectionFromPair, SameWordIsZeroDifference) {
  const auto table = support::table({{"a", {3, 0}}});
  EXPECT_THROW(direction_from_pair(table, "a", "a"), ComputationError);
}

TEST(DirectionFromPair, OovIsDataError) {
  const auto table = support::table({{"a", {3, 0}}});
  EXPECT_THROW(direction_from_pair(table, "a", "zz"), DataError);
}

TEST(DirectionFromPairsPca, RankOneDifferences) {
  const auto table = support::table({{"a", {3, 0}}, {"b", {1, 0}}, {"c", {1, 1}}, {"e", {0, 1}}});
  const auto d = direction_from_pairs_pca(table, {{"a", "b"}, {"c", "e"}});
  EXPECT_NEAR(d.vector[0], 1.0, 1e-12);
  EXPECT_NEAR(d.vector[1], 0.0, 1e-12);
  EXPECT_EQ(d.provenance(), "pca-pairs");
}

TEST(DirectionFromPairsPca, SignAnchoredToFirstDifference) {
  const auto table = support::table({{"a", {1, 0}}, {"b", {0, 0}}, {"c", {0, 0.5}}});
  const auto d = direction_from_pairs_pca(table, {{"a", "b"}, {"b", "a"}});
  EXPECT_NEAR(d.vector[0], 1.0, 1e-12);
  const auto flipped = direction_from_pairs_pca(table, {{"b", "a"}, {"a", "b"}});
  EXPECT_NEAR(flipped.vector[0], -1.0, 1e-12);
}

TEST(DirectionFromPairsPca, SinglePairRejected) {
  const auto table = support::table({{"a", {1, 0}}, {"b", {0, 0}}});
  try {
    direction_from_pairs_pca(table, {{"a", "b"}, {"a", "zz"}});
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("single-pair"), std::string::npos);
  }
}

TEST(DirectionFromPairsPca, OovPairsDroppedWithWarning) {
  const auto table = support::table({{"a", {3, 0}}, {"b", {1, 0}}, {"c", {1, 1}}, {"e", {0, 1}}});
  const auto d = direction_from_pairs_pca(table, {{"a", "b"}, {"zz", "e"}, {"c", "e"}});
  ASSERT_EQ(d.warnings.size(), 1u);
  EXPECT_NE(d.warnings[0].find("'zz'"), std::string::npos);
}

TEST(DirectionFromPairsPca, RankOneEqualsPairDirection) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector base = random_vector(rng, 30);
    const Vector diff = random_vector(rng, 30);
    std::vector<std::pair<std::string, Vector>> rows;
    builtin::WordPairs pairs;
    std::uniform_real_distribution<double> scale(0.2, 3.0);
    for (int i = 0; i < 4; ++i) {
      const double s = scale(rng);
      Vector a = base;
      for (std::size_t k = 0; k < a.size(); ++k) a[k] += s * diff[k];
      rows.push_back({"a" + std::to_string(i), a});
      rows.push_back({"b" + std::to_string(i), base});
      pairs.emplace_back("a" + std::to_string(i), "b" + std::to_string(i));
    }
    const auto table = support::table(rows);
    const auto pca = direction_from_pairs_pca(table, pairs);
    const auto pair = direction_from_pair(table, "a2", "b2");
    for (std::size_t k = 0; k < 30; ++k) EXPECT_NEAR(pca.vector[k], pair.vector[k], 1e-9);
  }
}

TEST(DirectionFromListPca, DominantVarianceAxis) {
  const auto table = support::table({{"p", {1, 0}}, {"q", {-1, 0}}, {"r", {0, 0.1}}, {"s", {0, -0.1}}});
  const auto d = direction_from_list_pca(table, {"p", "q", "r", "s"});
  EXPECT_NEAR(d.vector[0], 1.0, 1e-12);
  EXPECT_NEAR(d.vector[1], 0.0, 1e-12);
  EXPECT_EQ(d.provenance(), "pca-list");
}

TEST(DirectionFromListPca, IdenticalVectorsHaveZeroVariance) {
  const auto table = support::table({{"p", {1, 2}}, {"q", {1, 2}}, {"r", {1, 2}}});
  EXPECT_THROW(direction_from_list_pca(table, {"p", "q", "r"}), ComputationError);
}

TEST(DirectionFromListPca, TooFewWords) {
  const auto table = support::table({{"p", {1, 2}}, {"q", {0, 2}}});
  EXPECT_THROW(direction_from_list_pca(table, {"p", "q", "zz"}), DataError);
}

TEST(TopPrincipalComponent, RankOneUncentered) {
  const auto v = top_principal_component({{1, 0}, {2, 0}}, false);
  EXPECT_NEAR(v[0], 1.0, 1e-12);
  EXPECT_NEAR(v[1], 0.0, 1e-12);
}

TEST(TopPrincipalComponent, SymmetricPairCentered) {
  const auto v = top_principal_component({{1, 1}, {-1, -1}}, true);
  EXPECT_NEAR(std::abs(v[0]), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(v[0], v[1], 1e-12);
}

TEST(TopPrincipalComponent, ZeroRowsRejected) {
  EXPECT_THROW(top_principal_component({{0, 0}, {0, 0}}, false), ComputationError);
  EXPECT_THROW(top_principal_component({{1, 0}}, false), ComputationError);
}

TEST(TopPrincipalComponent, MatchesEigenOracleOnRandomFiveByFive) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Vector> rows;
    for (int i = 0; i < 5; ++i) rows.push_back(random_vector(rng, 5));
    for (bool center : {false, true}) {
      const Vector got = top_principal_component(rows, center);
      const Eigen::VectorXd want = oracle_component(rows, center);
      double same = 0.0;
      double flipped = 0.0;
      for (int k = 0; k < 5; ++k) {
        same = std::max(same, std::abs(got[static_cast<std::size_t>(k)] - want(k)));
        flipped = std::max(flipped, std::abs(got[static_cast<std::size_t>(k)] + want(k)));
      }
      EXPECT_LE(std::min(same, flipped), 1e-6) << "trial " << trial << " center " << center;
      EXPECT_NEAR(norm(got), 1.0, 1e-9);
    }
  }
}

TEST(TopPrincipalComponent, MatchesOracleOnTallRows) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vector> rows;
    for (int i = 0; i < 12; ++i) rows.push_back(random_vector(rng, 40));
    const Vector got = top_principal_component(rows, true);
    const Eigen::VectorXd want = oracle_component(rows, true);
    double overlap = 0.0;
    for (int k = 0; k < 40; ++k) overlap += got[static_cast<std::size_t>(k)] * want(k);
    EXPECT_NEAR(std::abs(overlap), 1.0, 1e-10);
  }
}

TEST(Orthogonalize, HandGramSchmidt) {
  const auto d = orthogonalize(unit("d", {1, 1}), {unit("g", {1, 0})});
  EXPECT_NEAR(d.vector[0], 0.0, 1e-15);
  EXPECT_NEAR(d.vector[1], 1.0, 1e-15);
  EXPECT_EQ(d.provenance(), "orthogonalized(g)");
  EXPECT_EQ(d.label, "d");
}

TEST(Orthogonalize, AlreadyOrthogonalUnchanged) {
  const auto in = unit("d", {0, 3, 4});
  const auto d = orthogonalize(in, {unit("g", {1, 0, 0})}, "d_s");
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(d.vector[k], in.vector[k], 1e-9);
  EXPECT_EQ(d.label, "d_s");
}

TEST(Orthogonalize, ParallelParentRejected) {
  EXPECT_THROW(orthogonalize(unit("d", {2, 0}), {unit("g", {-1, 0})}), ComputationError);
}

TEST(Orthogonalize, SpanOfParentsRejected) {
  EXPECT_THROW(orthogonalize(unit("d", {1, 1, 0}), {unit("g", {1, 0, 0}), unit("h", {1, 2, 0})}),
               ComputationError);
}

TEST(Orthogonalize, DimensionMismatchRejected) {
  EXPECT_ANY_THROW(orthogonalize(unit("d", {1, 1}), {unit("g", {1, 0, 0})}));
}

TEST(Orthogonalize, ProvenanceRecordsParentsInOrder) {
  const auto d = orthogonalize(unit("d_pca", {1, 1, 1, 1}),
                               {unit("d_v", {1, 0, 0, 0}), unit("d_a", {0, 1, 0, 0}), unit("d_t", {0, 0, 1, 0})},
                               "d_s");
  EXPECT_EQ(d.provenance(), "orthogonalized(d_v,d_a,d_t)");
  ASSERT_EQ(d.parents.size(), 3u);
  EXPECT_EQ(d.parents[1].label, "d_a");
  EXPECT_NEAR(d.vector[3], 1.0, 1e-12);
}

TEST(Orthogonalize, OrthogonalToNonOrthogonalParentsInHighDimension) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 4);
    const Vector shared = random_vector(rng, 300);
    std::vector<BiasDirection> parents;
    for (std::size_t i = 0; i < k; ++i) {
      Vector p = random_vector(rng, 300);
      for (std::size_t j = 0; j < 300; ++j) p[j] += 2.0 * shared[j];
      parents.push_back(unit("g" + std::to_string(i), p));
    }
    Vector dv = random_vector(rng, 300);
    for (std::size_t j = 0; j < 300; ++j) dv[j] += 3.0 * shared[j];
    const auto d = orthogonalize(unit("d", dv), parents);
    EXPECT_NEAR(norm(d.vector), 1.0, 1e-9);
    for (const auto& p : parents) EXPECT_LE(std::abs(dot(d.vector, p.vector)), 1e-8);
  }
}

TEST(DirectionSpecs, ParseAndCompute) {
  const auto table = support::table({{"naari", {3, 0.1}}, {"nar", {1, 0.1}}, {"p", {0, 1}}, {"q", {0, -1}},
                                     {"r", {0.1, 0}}});
  const Json doc = Json::parse(R"({"directions":[
      {"label":"d_g","method":"pair","pairs":[["naari","nar"]]},
      {"label":"d_l","method":"pca-list","words":["p","q","r"],
       "orthogonal_to":[{"label":"d_g","method":"pair","pairs":[["naari","nar"]]}]}]})");
  const auto specs = direction_specs_from_json(doc);
  ASSERT_EQ(specs.size(), 2u);
  const auto d_g = compute_direction(table, specs[0]);
  EXPECT_NEAR(d_g.vector[0], 1.0, 1e-12);
  const auto d_l = compute_direction(table, specs[1]);
  EXPECT_EQ(d_l.provenance(), "orthogonalized(d_g)");
  EXPECT_LE(std::abs(dot(d_l.vector, d_g.vector)), 1e-12);
}

TEST(DirectionSpecs, BuiltinPairNamesResolve) {
  const auto spec = direction_spec_from_json(
      Json::parse(R"({"label":"d_pca","method":"pca-pairs","pairs":["builtin:verbs",["naari","nar"]]})"));
  EXPECT_EQ(spec.pairs.size(), detail::builtin_pairs("builtin:verbs").size() + 1);
  EXPECT_EQ(spec.pairs.back(), (std::pair<std::string, std::string>{"naari", "nar"}));
}

TEST(DirectionSpecs, Errors) {
  auto bad = [](const char* text) { return direction_specs_from_json(Json::parse(text)); };
  EXPECT_THROW(bad(R"({"label":"x","method":"svd","pairs":[["a","b"]]})"), DataError);
  EXPECT_THROW(bad(R"({"label":"x","method":"pair","pairs":[["a","b"],["c","d"]]})"), DataError);
  EXPECT_THROW(bad(R"({"label":"x","method":"pca-list"})"), DataError);
  EXPECT_THROW(bad(R"({"method":"pair","pairs":[["a","b"]]})"), DataError);
  EXPECT_THROW(bad(R"([{"label":"x","method":"pair","pairs":[["a","b"]]},
                       {"label":"x","method":"pair","pairs":[["a","c"]]}])"),
               DataError);
  EXPECT_THROW(bad(R"({"label":"x","method":"pca-pairs","pairs":"builtin:nope"})"), DataError);
  EXPECT_THROW(bad("[]"), DataError);
}

TEST(DirectionSpecs, ShippedSpecsLoadAndStayOrthogonal) {
  const auto table = fixtures::synthetic_builtin_table();
  for (const char* name : {"gender", "religion", "caste"}) {
    const auto specs = load_direction_specs_file(support::source_dir() + "/data/specs/" + name + ".json");
    for (const auto& spec : specs) {
      const auto d = compute_direction(table, spec);
      EXPECT_NEAR(norm(d.vector), 1.0, 1e-9) << d.label;
      for (const auto& p : d.parents) EXPECT_LE(std::abs(dot(d.vector, p.vector)), 1e-8) << d.label;
    }
  }
}

TEST(WriteDirections, GloveRoundTrip) {
  const auto a = unit("d_g", {1, 2, 3});
  const auto b = unit("d_s", {0, -1, 0.5});
  std::ostringstream out;
  write_directions({a, b}, out);
  const auto back = support::load(out.str());
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.token(0), "d_g");
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(back.row(1)[k], b.vector[k]);
  std::ostringstream bad;
  EXPECT_THROW(write_directions({unit("has space", {1, 0})}, bad), DataError);
}
