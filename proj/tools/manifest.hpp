#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace dglab::cli {

std::uint32_t file_crc32(const std::filesystem::path& path);

// Tracks files written under one output directory and emits manifest.json.
class RunManifest {
 public:
  RunManifest(std::string subcommand, std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path path(const std::string& relative) const { return root_ / relative; }

  nlohmann::ordered_json& config() { return config_; }
  nlohmann::ordered_json& summary() { return summary_; }

  // Call after the file is closed.
  void add_file(const std::string& relative);

  void write(int exit_code, double wall_seconds, const std::string& status) const;

 private:
  std::string subcommand_;
  std::filesystem::path root_;
  nlohmann::ordered_json config_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json summary_ = nlohmann::ordered_json::object();
  std::vector<std::string> files_;
};

}  // namespace dglab::cli
