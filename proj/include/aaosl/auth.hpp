#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "aaosl/hash.hpp"
#include "aaosl/hoprel.hpp"
#include "aaosl/types.hpp"

namespace aaosl {

enum class AuthKind : std::uint8_t {
  simple = 0x01,          // one hash over index, datum digest, dependency digests
  maniatis_baker = 0x02,  // hash of per-level partial authenticators
};

/// Authenticator construction: which composition to use and which hash
/// backs it. Both variants are injective in the datum digest and the
/// dependency digests, modulo hash collisions.
struct AuthScheme {
  AuthKind kind = AuthKind::simple;
  HashFn hash = sha256;
};

/// 8-byte big-endian encoding; fixed width keeps the preimage layout
/// injective.
inline void append_be64(ByteBuf& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>(v >> shift));
}

inline ByteBuf encode_index(Index j) {
  ByteBuf out;
  out.reserve(8);
  append_be64(out, j);
  return out;
}

inline void append_digest(ByteBuf& out, const Digest& d) {
  out.insert(out.end(), d.begin(), d.end());
}

namespace detail {

inline void check_auth_args(const HopRelation& rel, Index j,
                            std::size_t n_deps) {
  if (j == 0)
    throw Error(Errc::genesis_not_authable,
                "genesis has no authenticator; its digest is agreed out of band");
  Level m = rel.max_level(j);
  if (n_deps != m)
    throw Error(Errc::arity_mismatch,
                "index " + std::to_string(j) + " needs " + std::to_string(m) +
                    " dependency digests, got " + std::to_string(n_deps));
}

}  // namespace detail

/// Preimage of the simple authenticator:
/// index, datum digest, then the dependency digests in level order.
inline ByteBuf simple_preimage(Index j, const Digest& datum_digest,
                               std::span<const Digest> lvl_digests) {
  ByteBuf pre;
  pre.reserve(8 + kDigestSize * (1 + lvl_digests.size()));
  append_be64(pre, j);
  append_digest(pre, datum_digest);
  for (const Digest& d : lvl_digests) append_digest(pre, d);
  return pre;
}

inline Digest auth_simple(const AuthScheme& scheme, const HopRelation& rel,
                          Index j, const Digest& datum_digest,
                          std::span<const Digest> lvl_digests) {
  detail::check_auth_args(rel, j, lvl_digests.size());
  return scheme.hash(simple_preimage(j, datum_digest, lvl_digests));
}

/// Original construction: per level l (1-based), the partial authenticator
/// hashes index, level, datum digest and the level's dependency digest; the
/// result hashes the concatenation of all partials in level order.
inline Digest auth_mb(const AuthScheme& scheme, const HopRelation& rel,
                      Index j, const Digest& datum_digest,
                      std::span<const Digest> lvl_digests) {
  detail::check_auth_args(rel, j, lvl_digests.size());
  ByteBuf concat;
  concat.reserve(kDigestSize * lvl_digests.size());
  ByteBuf pre;
  for (std::size_t idx = 0; idx < lvl_digests.size(); ++idx) {
    pre.clear();
    append_be64(pre, j);
    append_be64(pre, static_cast<std::uint64_t>(idx + 1));
    append_digest(pre, datum_digest);
    append_digest(pre, lvl_digests[idx]);
    append_digest(concat, scheme.hash(pre));
  }
  return scheme.hash(concat);
}

/// Authenticator for index j from its datum digest and the digests at
/// deps_of(j), under the scheme's variant.
inline Digest authenticate(const AuthScheme& scheme, const HopRelation& rel,
                           Index j, const Digest& datum_digest,
                           std::span<const Digest> lvl_digests) {
  switch (scheme.kind) {
    case AuthKind::simple:
      return auth_simple(scheme, rel, j, datum_digest, lvl_digests);
    case AuthKind::maniatis_baker:
      return auth_mb(scheme, rel, j, datum_digest, lvl_digests);
  }
  throw Error(Errc::bad_scheme, "unknown auth scheme");
}

inline const char* auth_kind_name(AuthKind k) {
  return k == AuthKind::simple ? "simple" : "mb";
}

}  // namespace aaosl
