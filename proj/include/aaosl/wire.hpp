#pragma once

#include <cstdint>
#include <cstring>
#include <string>

#include "aaosl/auth.hpp"
#include "aaosl/proofs.hpp"
#include "aaosl/types.hpp"
#include "aaosl/verify.hpp"

namespace aaosl {

/// Canonical binary envelope shared by all wire objects:
/// magic "AOSL", version, kind, scheme, then the body. Fixed-width integers
/// throughout; view entries sorted ascending with duplicates forbidden;
/// trailing bytes rejected. The full layout is documented in FORMAT.md.
namespace wire {

constexpr std::uint8_t kVersion = 0x01;

enum class Kind : std::uint8_t {
  adv_bundle = 0x01,
  membership_bundle = 0x02,
  anchor = 0x03,
};

struct DecodedBundle {
  AuthKind scheme;
  ProofBundle bundle;
};

namespace detail {

inline void append_be32(ByteBuf& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>(v >> shift));
}

inline void append_envelope(ByteBuf& out, Kind kind, AuthKind scheme) {
  out.push_back('A');
  out.push_back('O');
  out.push_back('S');
  out.push_back('L');
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(kind));
  out.push_back(static_cast<std::uint8_t>(scheme));
}

class Reader {
 public:
  explicit Reader(ByteView bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | bytes_[pos_++];
    return v;
  }

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | bytes_[pos_++];
    return v;
  }

  Digest digest() {
    need(kDigestSize);
    Digest d;
    std::memcpy(d.data(), bytes_.data() + pos_, kDigestSize);
    pos_ += kDigestSize;
    return d;
  }

  void finish() const {
    if (pos_ != bytes_.size())
      throw Error(Errc::trailing_bytes,
                  std::to_string(bytes_.size() - pos_) + " bytes after body");
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n)
      throw Error(Errc::truncated, "input ends inside a field");
  }

  ByteView bytes_;
  std::size_t pos_ = 0;
};

inline void check_envelope(Reader& r, Kind& kind, AuthKind& scheme) {
  char magic[4];
  for (char& c : magic) c = static_cast<char>(r.u8());
  if (std::memcmp(magic, "AOSL", 4) != 0)
    throw Error(Errc::bad_magic, "bad envelope magic");
  std::uint8_t version = r.u8();
  if (version != kVersion)
    throw Error(Errc::bad_version,
                "unsupported version " + std::to_string(version));
  std::uint8_t k = r.u8();
  if (k != 0x01 && k != 0x02 && k != 0x03)
    throw Error(Errc::bad_kind, "unknown kind " + std::to_string(k));
  kind = static_cast<Kind>(k);
  std::uint8_t s = r.u8();
  if (s != 0x01 && s != 0x02)
    throw Error(Errc::bad_scheme, "unknown scheme " + std::to_string(s));
  scheme = static_cast<AuthKind>(s);
}

}  // namespace detail

inline ByteBuf encode_bundle(const ProofBundle& bundle, AuthKind scheme) {
  ByteBuf out;
  Kind kind =
      bundle.is_membership() ? Kind::membership_bundle : Kind::adv_bundle;
  detail::append_envelope(out, kind, scheme);
  append_be64(out, bundle.path.src());
  append_be64(out, bundle.path.tgt());
  detail::append_be32(out, static_cast<std::uint32_t>(bundle.path.hops().size()));
  for (const PathHop& h : bundle.path.hops()) {
    out.push_back(static_cast<std::uint8_t>(h.level));
    append_digest(out, h.datum_digest);
  }
  detail::append_be32(out, static_cast<std::uint32_t>(bundle.view.size()));
  for (const auto& [index, digest] : bundle.view) {  // map iterates ascending
    append_be64(out, index);
    append_digest(out, digest);
  }
  if (bundle.is_membership()) append_digest(out, *bundle.member_datum);
  return out;
}

/// Parses and validates an untrusted bundle. Hop sources are derived from
/// the declared path source and the hop levels, then the whole path goes
/// through validate_path.
inline DecodedBundle decode_bundle(ByteView bytes, const HopRelation& rel) {
  detail::Reader r(bytes);
  Kind kind{};
  AuthKind scheme{};
  detail::check_envelope(r, kind, scheme);
  if (kind == Kind::anchor)
    throw Error(Errc::bad_kind, "anchor given where a bundle was expected");

  RawPath raw;
  raw.src = r.u64();
  raw.tgt = r.u64();
  std::uint32_t n_hops = r.u32();
  // no reserve: a hostile count must run into `truncated`, not the allocator
  Index source = raw.src;
  for (std::uint32_t i = 0; i < n_hops; ++i) {
    PathHop h;
    h.source = source;
    h.level = r.u8();
    h.datum_digest = r.digest();
    raw.hops.push_back(h);
    if (h.level >= 1 && h.level <= rel.max_level(source))
      source = rel.hop_target(source, h.level);
    // out-of-range levels are left for validate_path to reject
  }

  View view;
  std::uint32_t n_view = r.u32();
  bool have_prev = false;
  Index prev = 0;
  for (std::uint32_t i = 0; i < n_view; ++i) {
    Index index = r.u64();
    Digest digest = r.digest();
    if (have_prev) {
      if (index == prev)
        throw Error(Errc::duplicate_view_index,
                    "view index " + std::to_string(index) + " repeats", index);
      if (index < prev)
        throw Error(Errc::unsorted_view, "view indexes must ascend", index);
    }
    prev = index;
    have_prev = true;
    view.emplace(index, digest);
  }

  std::optional<Digest> member;
  if (kind == Kind::membership_bundle) member = r.digest();
  r.finish();

  return DecodedBundle{scheme,
                       ProofBundle{validate_path(raw, rel), std::move(view),
                                   std::move(member)}};
}

inline ByteBuf encode_anchor(const TrustAnchor& anchor, AuthKind scheme) {
  ByteBuf out;
  detail::append_envelope(out, Kind::anchor, scheme);
  append_be64(out, anchor.index);
  append_digest(out, anchor.digest);
  return out;
}

inline TrustAnchor decode_anchor(ByteView bytes) {
  detail::Reader r(bytes);
  Kind kind{};
  AuthKind scheme{};
  detail::check_envelope(r, kind, scheme);
  if (kind != Kind::anchor)
    throw Error(Errc::bad_kind, "bundle given where an anchor was expected");
  TrustAnchor anchor;
  anchor.index = r.u64();
  anchor.digest = r.digest();
  r.finish();
  return anchor;
}

}  // namespace wire
}  // namespace aaosl
