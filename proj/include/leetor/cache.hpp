#ifndef LEETOR_CACHE_HPP
#define LEETOR_CACHE_HPP

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>

#include "leetor/errors.hpp"

namespace leetor {

inline constexpr std::string_view kToolVersion = "leetor 0.1.0";

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::Io, "sha256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

/// File-per-record cache of serialized reports, keyed by a content hash of
/// (pd, kind of computation, tool version).
class ReportCache {
 public:
  explicit ReportCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  static std::string key(std::string_view pd, std::string_view kind) {
    std::string material;
    material += pd;
    material += '\n';
    material += kind;
    material += '\n';
    material += kToolVersion;
    return sha256_hex(material);
  }

  std::optional<std::string> get(const std::string& key) const {
    std::ifstream in(dir_ / (key + ".json"), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
  }

  void put(const std::string& key, const std::string& text) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create cache directory " + dir_.string());
    const auto final_path = dir_ / (key + ".json");
    const auto tmp =
        dir_ / (key + ".json." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
      out << text;
    }
    std::filesystem::rename(tmp, final_path, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot move cache record into place");
  }

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace leetor

#endif  // LEETOR_CACHE_HPP
