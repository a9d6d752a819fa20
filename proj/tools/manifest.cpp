#include "manifest.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "dglab/errors.hpp"
#include "dglab/version.hpp"

namespace dglab::cli {

std::uint32_t file_crc32(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  uLong crc = crc32(0L, Z_NULL, 0);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const auto n = in.gcount();
    if (n > 0) crc = crc32(crc, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(n));
  }
  return static_cast<std::uint32_t>(crc);
}

RunManifest::RunManifest(std::string subcommand, std::filesystem::path root)
    : subcommand_(std::move(subcommand)), root_(std::move(root)) {}

void RunManifest::add_file(const std::string& relative) {
  if (std::find(files_.begin(), files_.end(), relative) == files_.end()) files_.push_back(relative);
}

void RunManifest::write(int exit_code, double wall_seconds, const std::string& status) const {
  nlohmann::ordered_json j;
  j["subcommand"] = subcommand_;
  j["version"] = std::string(kVersion);
  j["status"] = status;
  j["exit_code"] = exit_code;
  j["wall_clock_seconds"] = wall_seconds;
  j["config"] = config_;
  j["summary"] = summary_;
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const auto& rel : files_) {
    const auto p = root_ / rel;
    if (!std::filesystem::exists(p)) continue;
    char hex[9];
    std::snprintf(hex, sizeof hex, "%08x", file_crc32(p));
    files.push_back({{"path", rel}, {"size", std::filesystem::file_size(p)}, {"crc32", hex}});
  }
  j["files"] = files;
  std::ofstream out(root_ / "manifest.json");
  out << j.dump(2) << '\n';
}

}  // namespace dglab::cli
