// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "embias/embias.hpp"

namespace support {

using embias::EmbeddingTable;
using embias::Vector;

inline EmbeddingTable table(std::vector<std::pair<std::string, Vector>> rows,
                            embias::Normalization mode = embias::Normalization::keep) {
  std::vector<EmbeddingTable::Entry> entries;
  for (auto& [t, v] : rows) entries.push_back({t, v});
  return EmbeddingTable::from_entries(std::move(entries), mode);
}

inline EmbeddingTable load(const std::string& text, bool normalize = false,
                           embias::EmbeddingFormat format = embias::EmbeddingFormat::auto_detect) {
  std::istringstream in(text);
  return embias::load_embeddings(in, format, normalize);
}


inline std::vector<Vector> vectors(std::initializer_list<Vector> v) { return v; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

/// Fresh scratch directory under the system temp dir.
inline std::string scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("embias_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

struct Run {
  int code = -1;
  std::string out;
};

/// Runs a shell command and captures its stdout.
inline Run run(const std::string& command) {
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string cli() { return EMBIAS_CLI; }
inline std::string source_dir() { return EMBIAS_SOURCE_DIR; }

}  // namespace support
