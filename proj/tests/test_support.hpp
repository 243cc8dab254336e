// Copyright 2026 The HeadTags Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <unistd.h>

#include <array>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "headtags/segmenter.hpp"
#include "headtags/stemmer.hpp"

namespace headtags::testing {

/// Published per-language record counts of the full corpus (415,117 total).
inline constexpr std::array<std::pair<const char*, std::size_t>, 20> kReferenceLanguageCounts = {{
    {"en", 200813}, {"pt", 4112},  {"es", 28406}, {"ru", 28272}, {"uk", 16997},
    {"pa", 8195},   {"gu", 7218},  {"hi", 7191},  {"mr", 9396},  {"bn", 12954},
    {"fr", 6344},   {"tr", 5031},  {"ar", 6922},  {"zh", 12279}, {"te", 9579},
    {"ta", 9973},   {"ne", 6185},  {"fa", 8830},  {"ur", 13469}, {"id", 12951},
}};

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(HEADTAGS_TEST_DATA_DIR) / name;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Tab-separated rows of a fixture, skipping blank and '#' lines.
inline std::vector<std::vector<std::string>> read_tsv(
    const std::filesystem::path& path) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(path, std::ios::binary);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> row;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != std::string::npos;
         start = tab + 1) {
      row.push_back(line.substr(start, tab - start));
    }
    row.push_back(line.substr(start));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline const Segmenter& shared_segmenter() {
  static const Segmenter segmenter = Segmenter::load_default();
  return segmenter;
}

inline const Stemmer& shared_stemmer() {
  static const Stemmer stemmer = Stemmer::load_default();
  return stemmer;
}

/// Per-test scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("headtags_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace headtags::testing
