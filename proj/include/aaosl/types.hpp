#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace aaosl {

/// 0-based log position. Index 0 is the genesis entry.
using Index = std::uint64_t;

/// 1-based skip level. A hop from j at level l lands on j - 2^(l-1).
using Level = std::uint32_t;

/// Fixed-width hash output; the unit of all authentication.
using Digest = std::array<std::uint8_t, 32>;

constexpr std::size_t kDigestSize = 32;

using ByteView = std::span<const std::uint8_t>;
using ByteBuf = std::vector<std::uint8_t>;

enum class Errc {
  // hop relation / arithmetic
  level_out_of_range,
  invalid_range,
  // authenticator
  arity_mismatch,
  genesis_not_authable,
  // log store
  out_of_range,
  already_initialized,
  storage_io,
  storage_corrupt,
  log_locked,
  // proofs
  endpoint_mismatch,
  not_visited,
  genesis_membership,
  malformed_broken_chain,
  malformed_level_range,
  malformed_nonmonotone,
  // verification
  missing_dependency,
  strict_view_conflict,
  // wire decoding
  truncated,
  trailing_bytes,
  bad_magic,
  bad_version,
  bad_kind,
  bad_scheme,
  unsorted_view,
  duplicate_view_index,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg, std::uint64_t index = 0)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code),
        index_(index) {}

  Errc code() const { return code_; }

  /// Offending index, when the error concerns one (e.g. missing_dependency).
  std::uint64_t index() const { return index_; }

 private:
  Errc code_;
  std::uint64_t index_;
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::level_out_of_range: return "level-out-of-range";
    case Errc::invalid_range: return "invalid-range";
    case Errc::arity_mismatch: return "arity-mismatch";
    case Errc::genesis_not_authable: return "genesis-not-authable";
    case Errc::out_of_range: return "out-of-range";
    case Errc::already_initialized: return "already-initialized";
    case Errc::storage_io: return "storage-io";
    case Errc::storage_corrupt: return "storage-corrupt";
    case Errc::log_locked: return "log-locked";
    case Errc::endpoint_mismatch: return "endpoint-mismatch";
    case Errc::not_visited: return "not-visited";
    case Errc::genesis_membership: return "genesis-membership";
    case Errc::malformed_broken_chain: return "malformed(broken-chain)";
    case Errc::malformed_level_range: return "malformed(level-out-of-range)";
    case Errc::malformed_nonmonotone: return "malformed(nonmonotone)";
    case Errc::missing_dependency: return "missing-dependency";
    case Errc::strict_view_conflict: return "strict-view-conflict";
    case Errc::truncated: return "truncated";
    case Errc::trailing_bytes: return "trailing-bytes";
    case Errc::bad_magic: return "bad-magic";
    case Errc::bad_version: return "bad-version";
    case Errc::bad_kind: return "bad-kind";
    case Errc::bad_scheme: return "bad-scheme";
    case Errc::unsorted_view: return "unsorted-view";
    case Errc::duplicate_view_index: return "duplicate-view-index";
  }
  return "unknown";
}

inline std::string to_hex(const Digest& d) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(2 * kDigestSize);
  for (std::uint8_t b : d) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0x0f]);
  }
  return out;
}

inline int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

inline Digest digest_from_hex(const std::string& hex) {
  if (hex.size() != 2 * kDigestSize)
    throw Error(Errc::invalid_range, "digest hex must be 64 chars");
  Digest d{};
  for (std::size_t i = 0; i < kDigestSize; ++i) {
    int hi = hex_nibble(hex[2 * i]);
    int lo = hex_nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0)
      throw Error(Errc::invalid_range, "digest hex has non-hex character");
    d[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return d;
}

}  // namespace aaosl
