#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#ifndef COVNET_DATA_DIR
#error "COVNET_DATA_DIR must point at the bundled data directory"
#endif

namespace test_data {

inline std::string data_path(const std::string& name) { return std::string(COVNET_DATA_DIR) + "/" + name; }
inline std::string reference_edges() { return data_path("reference_edges.txt"); }
inline std::string reference_roles() { return data_path("reference_roles.csv"); }
inline std::string chiapas_target() { return data_path("chiapas_target.json"); }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("covnet-test-" + std::to_string(rd()) + "-" +
                                                       std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace test_data
