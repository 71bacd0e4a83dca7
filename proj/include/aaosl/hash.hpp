#pragma once

#include <functional>

#include <openssl/evp.h>

#include "aaosl/types.hpp"

namespace aaosl {

/// Pluggable cryptographic hash: arbitrary bytes to a 32-byte digest.
using HashFn = std::function<Digest(ByteView)>;

inline Digest sha256(ByteView data) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len != kDigestSize) {
    throw Error(Errc::storage_io, "sha256 failed");
  }
  return out;
}

inline HashFn default_hash() { return sha256; }

/// h_star: the digest of the genesis datum, agreed out of band.
inline Digest genesis_digest(ByteView genesis_datum,
                             const HashFn& hash = sha256) {
  return hash(genesis_datum);
}

}  // namespace aaosl
