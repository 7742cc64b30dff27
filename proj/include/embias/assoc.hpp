// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "embias/error.hpp"
#include "embias/lexicon.hpp"
#include "embias/vector_ops.hpp"

namespace embias {

using VectorList = std::span<const Vector>;

enum class StddevConvention { population, sample };
enum class TiePolicy { strict, non_strict };
enum class PermutationMode { exact, sampled };

inline const char* to_string(StddevConvention c) {
  return c == StddevConvention::population ? "population" : "sample";
}
inline const char* to_string(TiePolicy t) { return t == TiePolicy::strict ? "strict" : "non-strict"; }
inline const char* to_string(PermutationMode m) {
  return m == PermutationMode::exact ? "exact" : "sampled";
}

struct PermutationPlan {
  /// Unset: exact when C(2n, n) <= exact_threshold, otherwise sampled.
  std::optional<PermutationMode> mode;
  std::size_t sample_count = 10000;
  std::uint64_t seed = 0;
  std::uint64_t exact_threshold = 20000;
  TiePolicy tie_policy = TiePolicy::strict;
};

struct Conventions {
  StddevConvention stddev = StddevConvention::population;
};

struct PValue {
  double p = 0.0;
  std::size_t permutations_used = 0;
  PermutationMode mode = PermutationMode::exact;
};

struct TestResult {
  std::string test_name;
  Category category = Category::BM;
  Variant variant = Variant::custom;
  double statistic = 0.0;
  /// Empty when the pooled standard deviation is zero.
  std::optional<double> effect_size;
  double p_value = 0.0;
  std::size_t permutations_used = 0;
  PermutationMode mode = PermutationMode::exact;
  TiePolicy tie_policy = TiePolicy::strict;
  StddevConvention stddev = StddevConvention::population;
  std::array<std::size_t, 4> sizes{};  // |X|, |Y|, |A|, |B| after resolution
  std::vector<OovEntry> oov_report;

  bool degenerate() const { return !effect_size.has_value(); }
};

// ---------------------------------------------------------------------------
// Statistic

/// s(w, A, B): mean cosine to A minus mean cosine to B.
inline double word_association(VectorView w, VectorList A, VectorList B) {
  if (A.empty() || B.empty()) throw ComputationError("attribute list is empty");
  double sum_a = 0.0;
  for (const auto& a : A) sum_a += cosine(w, a);
  double sum_b = 0.0;
  for (const auto& b : B) sum_b += cosine(w, b);
  return sum_a / static_cast<double>(A.size()) - sum_b / static_cast<double>(B.size());
}

inline std::vector<double> association_scores(VectorList words, VectorList A, VectorList B) {
  std::vector<double> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(word_association(w, A, B));
  return out;
}

namespace detail {

inline void check_targets(VectorList X, VectorList Y) {
  if (X.empty() || Y.empty()) throw ComputationError("target list is empty");
  if (X.size() != Y.size()) {
    throw ComputationError("target lists differ in size (" + std::to_string(X.size()) + " vs " +
                           std::to_string(Y.size()) + ")");
  }
}

/// Sum over members minus sum over non-members, both in index order. Every
/// split (including the observed one) goes through this so ties compare
/// exactly.
inline double split_statistic(std::span<const double> scores, const std::vector<char>& in_x) {
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (in_x[i]) sx += scores[i];
    else sy += scores[i];
  }
  return sx - sy;
}

inline std::vector<char> identity_split(std::size_t n) {
  std::vector<char> in_x(2 * n, 0);
  std::fill(in_x.begin(), in_x.begin() + static_cast<std::ptrdiff_t>(n), 1);
  return in_x;
}

}  // namespace detail

/// s(X, Y, A, B) = sum_x s(x, A, B) - sum_y s(y, A, B).
inline double test_statistic(VectorList X, VectorList Y, VectorList A, VectorList B) {
  detail::check_targets(X, Y);
  auto scores = association_scores(X, A, B);
  const auto sy = association_scores(Y, A, B);
  scores.insert(scores.end(), sy.begin(), sy.end());
  return detail::split_statistic(scores, detail::identity_split(X.size()));
}

/// Effect size from pooled scores (first half X, second half Y). Empty when
/// the standard deviation is (numerically) zero.
inline std::optional<double> effect_size_from_scores(std::span<const double> scores,
                                                     StddevConvention convention) {
  const std::size_t n = scores.size() / 2;
  double sum_x = 0.0;
  double sum_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum_x += scores[i];
  for (std::size_t i = n; i < 2 * n; ++i) sum_y += scores[i];
  const double mean_x = sum_x / static_cast<double>(n);
  const double mean_y = sum_y / static_cast<double>(n);

  const double mean = (sum_x + sum_y) / static_cast<double>(scores.size());
  double ss = 0.0;
  for (double s : scores) ss += (s - mean) * (s - mean);
  const double denom = convention == StddevConvention::population
                           ? static_cast<double>(scores.size())
                           : static_cast<double>(scores.size() - 1);
  const double sigma = std::sqrt(ss / denom);
  if (!(sigma > 1e-12)) return std::nullopt;
  return (mean_x - mean_y) / sigma;
}

inline std::optional<double> effect_size(VectorList X, VectorList Y, VectorList A, VectorList B,
                                         StddevConvention convention = StddevConvention::population) {
  detail::check_targets(X, Y);
  auto scores = association_scores(X, A, B);
  const auto sy = association_scores(Y, A, B);
  scores.insert(scores.end(), sy.begin(), sy.end());
  return effect_size_from_scores(scores, convention);
}

// ---------------------------------------------------------------------------
// Permutation test

/// C(2n, n), saturating at uint64 max.
inline std::uint64_t central_binomial(std::size_t n) {
  std::uint64_t c = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    // c * (n + k) / k stays integral at every step.
    const std::uint64_t num = static_cast<std::uint64_t>(n + k);
    if (c > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    c = c * num / k;
  }
  return c;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Generator seed for one named test, so tests can run in any order or in
/// parallel and still draw the same splits.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view test_name) {
  return splitmix64(seed ^ fnv1a64(test_name));
}

namespace detail {

/// Uniform integer in [0, bound) by rejection; avoids the
/// implementation-defined std::uniform_int_distribution.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

inline bool exceeds(double value, double observed, TiePolicy policy) {
  return policy == TiePolicy::strict ? value > observed : value >= observed;
}

}  // namespace detail

/// Permutation p-value over equal splits of the pooled target scores.
/// Exact mode enumerates every split once (the identity split included);
/// sampled mode draws `sample_count` uniform splits with replacement.
inline PValue p_value_from_scores(std::span<const double> scores, const PermutationPlan& plan) {
  const std::size_t n = scores.size() / 2;
  if (n == 0 || scores.size() != 2 * n) throw ComputationError("p-value needs two equal target lists");
  const double observed = detail::split_statistic(scores, detail::identity_split(n));

  PermutationMode mode;
  if (plan.mode) {
    mode = *plan.mode;
  } else {
    mode = central_binomial(n) <= plan.exact_threshold ? PermutationMode::exact
                                                       : PermutationMode::sampled;
  }

  std::size_t hits = 0;
  std::size_t total = 0;
  if (mode == PermutationMode::exact) {
    if (central_binomial(n) > 50'000'000ULL) {
      throw ComputationError("exact enumeration of C(" + std::to_string(2 * n) + ", " +
                             std::to_string(n) + ") splits is too large");
    }
    // Walk every n-subset of 2n in lexicographic order, starting from the
    // identity split.
    std::vector<char> in_x = detail::identity_split(n);
    do {
      ++total;
      if (detail::exceeds(detail::split_statistic(scores, in_x), observed, plan.tie_policy)) ++hits;
    } while (std::prev_permutation(in_x.begin(), in_x.end()));
  } else {
    if (plan.sample_count == 0) throw ComputationError("sampled permutation test needs sample_count >= 1");
    std::mt19937_64 rng(plan.seed);
    std::vector<std::size_t> idx(2 * n);
    std::vector<char> in_x(2 * n);
    for (std::size_t draw = 0; draw < plan.sample_count; ++draw) {
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      // Partial Fisher-Yates: the first n positions become X_i.
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(detail::bounded(rng, 2 * n - i));
        std::swap(idx[i], idx[j]);
      }
      std::fill(in_x.begin(), in_x.end(), 0);
      for (std::size_t i = 0; i < n; ++i) in_x[idx[i]] = 1;
      ++total;
      if (detail::exceeds(detail::split_statistic(scores, in_x), observed, plan.tie_policy)) ++hits;
    }
  }
  return {static_cast<double>(hits) / static_cast<double>(total), total, mode};
}

inline PValue p_value(VectorList X, VectorList Y, VectorList A, VectorList B,
                      const PermutationPlan& plan) {
  detail::check_targets(X, Y);
  auto scores = association_scores(X, A, B);
  const auto sy = association_scores(Y, A, B);
  scores.insert(scores.end(), sy.begin(), sy.end());
  return p_value_from_scores(scores, plan);
}

/// Full WEAT for a resolved test. The sampling generator is seeded from
/// (plan.seed, test name).
inline TestResult run_weat(const ResolvedTest& test, const PermutationPlan& plan,
                           const Conventions& conventions = {}) {
  const VectorList X = test.x.vectors;
  const VectorList Y = test.y.vectors;
  const VectorList A = test.a.vectors;
  const VectorList B = test.b.vectors;
  detail::check_targets(X, Y);
  if (A.empty() || B.empty()) throw ComputationError("attribute list is empty");

  auto scores = association_scores(X, A, B);
  const auto sy = association_scores(Y, A, B);
  scores.insert(scores.end(), sy.begin(), sy.end());

  PermutationPlan seeded = plan;
  seeded.seed = derive_seed(plan.seed, test.source.name);

  TestResult r;
  r.test_name = test.source.name;
  r.category = test.source.category;
  r.variant = test.source.variant;
  r.statistic = detail::split_statistic(scores, detail::identity_split(X.size()));
  r.effect_size = effect_size_from_scores(scores, conventions.stddev);
  const PValue p = p_value_from_scores(scores, seeded);
  r.p_value = p.p;
  r.permutations_used = p.permutations_used;
  r.mode = p.mode;
  r.tie_policy = plan.tie_policy;
  r.stddev = conventions.stddev;
  r.sizes = {X.size(), Y.size(), A.size(), B.size()};
  r.oov_report = test.oov_report;
  return r;
}

}  // namespace embias
