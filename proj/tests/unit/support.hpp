// Copyright 2026 The helper-audit Authors
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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "helper_audit/corpus_io.hpp"
#include "helper_audit/ir.hpp"
#include "json.hpp"

namespace test_support {

// Wraps a JSON array of classes into a corpus document.
inline std::string document(const nlohmann::json& classes, const nlohmann::json& externals = nlohmann::json::array(),
                            const nlohmann::json& callbacks = nlohmann::json::array()) {
  nlohmann::json doc = {{"version", 1}, {"externals", externals}, {"classes", classes}, {"callback_edges", callbacks}};
  return doc.dump();
}

inline helper_audit::Corpus corpus(const nlohmann::json& classes,
                                   const nlohmann::json& externals = nlohmann::json::array(),
                                   const nlohmann::json& callbacks = nlohmann::json::array()) {
  return helper_audit::parse_corpus(document(classes, externals, callbacks));
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("helper_audit_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string data_file(const std::string& name) { return std::string(HELPER_AUDIT_TEST_DATA) + "/" + name; }

}  // namespace test_support
