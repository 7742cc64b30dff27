// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_map>
#include <utility>
#include <vector>

#include "embias/error.hpp"
#include "embias/unicode.hpp"
#include "embias/vector_ops.hpp"

namespace embias {

enum class EmbeddingFormat { auto_detect, glove_text, word2vec_text };

enum class Normalization {
  keep,         // store vectors as given
  unit,         // rescale every vector to unit L2 norm
  assert_unit,  // vectors must already be unit norm (within 1e-6)
};

/// Immutable token -> vector map with a single dimension. Tokens are stored
/// in NFC; rows keep insertion order.
class EmbeddingTable {
 public:
  struct Entry {
    std::string token;
    Vector vector;
  };

  static EmbeddingTable from_entries(std::vector<Entry> entries, Normalization mode);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  bool normalized() const { return normalized_; }

  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& token(std::size_t i) const { return tokens_[i]; }
  VectorView row(std::size_t i) const {
    return VectorView(data_.data() + i * dimension_, dimension_);
  }

  /// NFC-normalizes the query first; absence is a value, not an error.
  std::optional<VectorView> lookup(std::string_view token) const {
    auto it = index_.find(nfc(token));
    if (it == index_.end()) return std::nullopt;
    return row(it->second);
  }
  bool contains(std::string_view token) const { return lookup(token).has_value(); }

  /// Load-time diagnostics (duplicate tokens, header mismatches).
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// New table with every row replaced by fn(token, row).
  EmbeddingTable transformed(const std::function<Vector(const std::string&, VectorView)>& fn,
                             Normalization mode) const {
    std::vector<Entry> entries;
    entries.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) entries.push_back({tokens_[i], fn(tokens_[i], row(i))});
    return from_entries(std::move(entries), mode);
  }

 private:
  EmbeddingTable() = default;
  friend EmbeddingTable load_embeddings(std::istream&, EmbeddingFormat, bool);

  std::size_t dimension_ = 0;
  bool normalized_ = false;
  std::vector<std::string> tokens_;
  std::vector<double> data_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> warnings_;
};

inline EmbeddingTable EmbeddingTable::from_entries(std::vector<Entry> entries,
                                                   Normalization mode) {
  EmbeddingTable table;
  if (entries.empty()) throw DataError("embedding table has no entries");
  table.dimension_ = entries.front().vector.size();
  if (table.dimension_ == 0) throw DataError("embedding dimension must be positive");
  table.normalized_ = mode != Normalization::keep;
  table.tokens_.reserve(entries.size());
  table.data_.reserve(entries.size() * table.dimension_);

  for (auto& entry : entries) {
    if (entry.vector.size() != table.dimension_) {
      throw DataError("token '" + entry.token + "' has dimension " +
                      std::to_string(entry.vector.size()) + ", expected " +
                      std::to_string(table.dimension_));
    }
    if (!all_finite(entry.vector)) {
      throw DataError("token '" + entry.token + "' has a non-finite component");
    }
    std::string key = nfc(entry.token);
    if (table.index_.count(key) != 0) {
      table.warnings_.push_back("duplicate token '" + key + "' ignored (first occurrence kept)");
      continue;
    }
    if (mode == Normalization::unit) {
      if (norm(entry.vector) == 0.0) {
        throw DataError("token '" + key + "' is a zero vector and cannot be normalized");
      }
      entry.vector = embias::normalized(entry.vector);
    } else if (mode == Normalization::assert_unit) {
      if (std::abs(norm(entry.vector) - 1.0) > 1e-6) {
        throw ComputationError("token '" + key + "' is not unit norm");
      }
    }
    table.index_.emplace(key, table.tokens_.size());
    table.tokens_.push_back(std::move(key));
    table.data_.insert(table.data_.end(), entry.vector.begin(), entry.vector.end());
  }
  return table;
}

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

inline double parse_real(std::string_view field, std::size_t line_no) {
  std::string_view digits = field;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || !std::isfinite(value)) {
    throw DataError("line " + std::to_string(line_no) + ": cannot parse '" +
                    std::string(field) + "' as a finite real number");
  }
  return value;
}

inline bool parse_count(std::string_view field, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

inline void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace detail

/// Parses GloVe text (`token v1 ... vD` per line) or word2vec text (same,
/// preceded by a `V D` header). auto_detect treats a first line of exactly
/// two integer fields as a word2vec header.
inline EmbeddingTable load_embeddings(std::istream& in, EmbeddingFormat format, bool normalize) {
  std::vector<EmbeddingTable::Entry> entries;
  std::vector<std::string> warnings;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> header_count;
  std::optional<std::size_t> dimension;
  bool first_content = true;

  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_cr(line);
    const auto fields = detail::split_fields(line);
    if (fields.empty()) continue;

    if (first_content) {
      first_content = false;
      std::size_t v = 0;
      std::size_t d = 0;
      const bool looks_like_header = fields.size() == 2 && detail::parse_count(fields[0], v) &&
                                     detail::parse_count(fields[1], d);
      if (format == EmbeddingFormat::word2vec_text && !looks_like_header) {
        throw DataError("line 1: expected word2vec header 'V D'");
      }
      if (looks_like_header && format != EmbeddingFormat::glove_text) {
        if (d == 0) throw DataError("line 1: header declares dimension 0");
        header_count = v;
        dimension = d;
        continue;
      }
    }

    if (fields.size() < 2) {
      throw DataError("line " + std::to_string(line_no) + ": expected a token followed by values");
    }
    const std::size_t d = fields.size() - 1;
    if (!dimension) dimension = d;
    if (d != *dimension) {
      throw DataError("line " + std::to_string(line_no) + ": dimension " + std::to_string(d) +
                      " differs from " + std::to_string(*dimension));
    }
    Vector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = detail::parse_real(fields[i + 1], line_no);
    entries.push_back({std::string(fields[0]), std::move(v)});
  }
  if (in.bad()) throw DataError("I/O error while reading embeddings");
  if (entries.empty()) throw DataError("embedding file is empty");
  if (header_count && *header_count != entries.size()) {
    warnings.push_back("word2vec header declares " + std::to_string(*header_count) +
                       " entries, found " + std::to_string(entries.size()));
  }

  auto table = EmbeddingTable::from_entries(std::move(entries),
                                            normalize ? Normalization::unit : Normalization::keep);
  table.warnings_.insert(table.warnings_.begin(), warnings.begin(), warnings.end());
  return table;
}

inline EmbeddingTable load_embeddings_file(const std::string& path, EmbeddingFormat format,
                                           bool normalize) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open embeddings file '" + path + "'");
  return load_embeddings(in, format, normalize);
}

/// Shortest decimal that parses back to the same double.
inline std::string format_real(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw ComputationError("cannot format real number");
  return std::string(buf, ptr);
}

/// GloVe text writer: LF endings, tokens in byte-wise sorted order.
inline void write_embeddings(const EmbeddingTable& table, std::ostream& out) {
  if (table.empty()) throw DataError("refusing to write an empty embedding table");
  std::vector<std::size_t> order(table.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i : order) {
    const std::string& token = table.token(i);
    if (token.empty() || token.find_first_of(" \t\n\r") != std::string::npos) {
      throw DataError("token '" + token + "' contains whitespace and cannot be written as GloVe text");
    }
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return table.token(a) < table.token(b); });
  for (std::size_t i : order) {
    out << table.token(i);
    for (double x : table.row(i)) out << ' ' << format_real(x);
    out << '\n';
  }
  if (!out) throw DataError("I/O error while writing embeddings");
}

inline void write_embeddings_file(const EmbeddingTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  write_embeddings(table, out);
  out.flush();
  if (!out) throw DataError("I/O error while writing '" + path + "'");
}

}  // namespace embias
