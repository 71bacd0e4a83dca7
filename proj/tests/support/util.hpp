#pragma once

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "aaosl/aaosl.hpp"

namespace testutil {

using namespace aaosl;

inline ByteView bytes(const std::string& s) {
  return ByteView(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

/// Self-deleting scratch directory for log files.
class TempDir {
 public:
  TempDir() {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / "aaosl-test-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

/// Fresh log with `entries` appended entries (size = entries + 1).
inline LogStore build_log(const std::filesystem::path& file, Index entries,
                          AuthScheme scheme = {}) {
  LogStore store = LogStore::init(file, bytes("genesis"), std::move(scheme));
  for (Index k = 1; k <= entries; ++k)
    store.append(bytes("entry-" + std::to_string(k)));
  return store;
}

/// Deliberately weak hash: 16 bits of state smeared over 32 bytes.
/// Collides quickly, which is the point.
inline Digest toy_hash(ByteView data) {
  std::uint16_t h = 0x9dc5;
  for (std::uint8_t b : data)
    h = static_cast<std::uint16_t>((h ^ b) * 0x0193);
  Digest d{};
  d[30] = static_cast<std::uint8_t>(h >> 8);
  d[31] = static_cast<std::uint8_t>(h & 0xff);
  return d;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline Digest random_digest(std::mt19937_64& g) {
  Digest d;
  for (auto& b : d) b = static_cast<std::uint8_t>(g());
  return d;
}

/// Independent oracle for the single-hop choice: highest level whose target
/// does not overshoot.
inline Level shl_scan(const HopRelation& rel, Index from, Index to) {
  Level best = 0;
  for (Level l = 1; l <= rel.max_level(from); ++l)
    if (rel.hop_target(from, l) >= to) best = l;
  return best;
}

}  // namespace testutil
