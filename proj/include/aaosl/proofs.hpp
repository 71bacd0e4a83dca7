#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aaosl/hoprel.hpp"
#include "aaosl/log.hpp"
#include "aaosl/types.hpp"

namespace aaosl {

/// Partial map index -> digest carrying the off-path authenticators a proof
/// needs; at most one digest per index.
using View = std::map<Index, Digest>;

struct PathHop {
  Index source = 0;
  Level level = 0;
  Digest datum_digest{};  // datum digest of the hop's source

  bool operator==(const PathHop&) const = default;
};

/// Untrusted path structure, as decoded from the wire or assembled by hand.
struct RawPath {
  Index src = 0;
  Index tgt = 0;
  std::vector<PathHop> hops;
};

class AdvPath;
AdvPath validate_path(const RawPath& raw, const HopRelation& rel);

/// Well-formed advancement path from src down to tgt: each hop's level is in
/// range for its source and lands exactly on the next hop's source (or on
/// tgt for the last hop). Only validate_path constructs one, so every
/// AdvPath in circulation satisfies the invariants.
class AdvPath {
 public:
  Index src() const { return src_; }
  Index tgt() const { return tgt_; }
  std::span<const PathHop> hops() const { return hops_; }
  bool empty() const { return hops_.empty(); }

  /// The Done proof at index at.
  static AdvPath done(Index at) { return AdvPath(at, at, {}); }

  bool visits(Index k) const {
    if (k == src_ || k == tgt_) return true;
    if (k > src_ || k < tgt_) return false;
    return std::any_of(hops_.begin(), hops_.end(),
                       [k](const PathHop& h) { return h.source == k; });
  }

  std::vector<Index> visited() const {
    std::vector<Index> v;
    v.reserve(hops_.size() + 1);
    for (const PathHop& h : hops_) v.push_back(h.source);
    v.push_back(tgt_);
    return v;  // strictly decreasing
  }

  RawPath raw() const { return RawPath{src_, tgt_, hops_}; }

  bool operator==(const AdvPath& other) const {
    return src_ == other.src_ && tgt_ == other.tgt_ && hops_ == other.hops_;
  }

 private:
  AdvPath(Index src, Index tgt, std::vector<PathHop> hops)
      : src_(src), tgt_(tgt), hops_(std::move(hops)) {}

  friend AdvPath validate_path(const RawPath&, const HopRelation&);

  Index src_;
  Index tgt_;
  std::vector<PathHop> hops_;
};

/// Checks the AdvPath invariants on untrusted input. Rejects levels out of
/// range, hops that do not land on the next declared source, and source
/// sequences that fail to descend.
inline AdvPath validate_path(const RawPath& raw, const HopRelation& rel) {
  if (raw.hops.empty()) {
    if (raw.src != raw.tgt)
      throw Error(Errc::malformed_broken_chain,
                  "empty path must have equal endpoints");
    return AdvPath(raw.src, raw.tgt, {});
  }
  Index expect = raw.src;
  for (std::size_t i = 0; i < raw.hops.size(); ++i) {
    const PathHop& h = raw.hops[i];
    if (h.source != expect)
      throw Error(Errc::malformed_broken_chain,
                  "hop " + std::to_string(i) + " declares source " +
                      std::to_string(h.source) + ", chain reaches " +
                      std::to_string(expect));
    if (h.level < 1 || h.level > rel.max_level(h.source))
      throw Error(Errc::malformed_level_range,
                  "hop " + std::to_string(i) + " level " +
                      std::to_string(h.level) + " out of range for index " +
                      std::to_string(h.source));
    Index next = rel.hop_target(h.source, h.level);
    if (next >= h.source)
      throw Error(Errc::malformed_nonmonotone, "hop fails to descend");
    expect = next;
  }
  if (expect != raw.tgt)
    throw Error(Errc::malformed_broken_chain,
                "chain lands at " + std::to_string(expect) + ", not tgt " +
                    std::to_string(raw.tgt));
  return AdvPath(raw.src, raw.tgt, raw.hops);
}

/// Advancement or membership proof plus the off-path digests it needs.
/// member_datum carries the claimed datum digest for membership bundles.
struct ProofBundle {
  AdvPath path;
  View view;
  std::optional<Digest> member_datum;

  bool is_membership() const { return member_datum.has_value(); }
};

namespace detail {

/// Collects the off-path dependency digests of one hop into the view;
/// genesis is omitted (its digest is known in advance).
inline void add_off_path_deps(const LogStore& store, Index source,
                              Level on_path_level, View& view) {
  const HopRelation& rel = store.hop_relation();
  Level m = rel.max_level(source);
  for (Level l = 1; l <= m; ++l) {
    if (l == on_path_level) continue;
    Index dep = rel.hop_target(source, l);
    if (dep == 0) continue;
    view.emplace(dep, store.lookup_digest(dep));
  }
}

inline ProofBundle build_adv(const LogStore& store, Index i, Index j,
                             bool normalized) {
  if (j >= store.size() || i > j)
    throw Error(Errc::out_of_range, "need i <= j < size");
  const HopRelation& rel = store.hop_relation();
  RawPath raw{j, i, {}};
  View view;
  Index cur = j;
  while (cur != i) {
    Level l = normalized ? rel.single_hop_level(cur, i) : Level{1};
    raw.hops.push_back({cur, l, store.datum_digest(cur)});
    add_off_path_deps(store, cur, l, view);
    cur = rel.hop_target(cur, l);
  }
  return ProofBundle{validate_path(raw, rel), std::move(view), std::nullopt};
}

}  // namespace detail

/// Normalized advancement proof from j down to i: takes the single-hop
/// level at each step, yielding the shortest path. The view holds exactly
/// the off-path dependency digests, deduplicated, genesis omitted.
inline ProofBundle mk_adv(const LogStore& store, Index i, Index j) {
  return detail::build_adv(store, i, j, /*normalized=*/true);
}

/// Advancement proof using only level-1 hops; visits every index in [i, j].
inline ProofBundle degenerate_adv(const LogStore& store, Index i, Index j) {
  return detail::build_adv(store, i, j, /*normalized=*/false);
}

/// Concatenates a (j -> k) with b (k -> i) into a path j -> i.
inline AdvPath compose(const AdvPath& a, const AdvPath& b,
                       const HopRelation& rel = pow2_relation()) {
  if (a.tgt() != b.src())
    throw Error(Errc::endpoint_mismatch,
                "compose needs a.tgt == b.src, got " + std::to_string(a.tgt()) +
                    " and " + std::to_string(b.src()));
  RawPath raw{a.src(), b.tgt(), {}};
  raw.hops.reserve(a.hops().size() + b.hops().size());
  raw.hops.insert(raw.hops.end(), a.hops().begin(), a.hops().end());
  raw.hops.insert(raw.hops.end(), b.hops().begin(), b.hops().end());
  return validate_path(raw, rel);
}

/// Splits a at a visited index k into (j -> k, k -> i); composing the parts
/// reproduces a exactly.
inline std::pair<AdvPath, AdvPath> split_at(const AdvPath& a, Index k,
                                            const HopRelation& rel =
                                                pow2_relation()) {
  if (!a.visits(k))
    throw Error(Errc::not_visited,
                "index " + std::to_string(k) + " is not visited", k);
  RawPath upper{a.src(), k, {}};
  RawPath lower{k, a.tgt(), {}};
  for (const PathHop& h : a.hops())
    (h.source > k ? upper.hops : lower.hops).push_back(h);
  return {validate_path(upper, rel), validate_path(lower, rel)};
}

/// Greatest index visited by a that is strictly below k. pre: i < k <= j.
inline Index last_bef(const AdvPath& a, Index k) {
  if (!(a.tgt() < k && k <= a.src()))
    throw Error(Errc::invalid_range, "last_bef needs tgt < k <= src");
  Index best = a.tgt();
  for (const PathHop& h : a.hops())
    if (h.source < k && h.source > best) best = h.source;
  return best;
}

/// Least index visited by a that is strictly above k. pre: i <= k < j.
inline Index first_aft(const AdvPath& a, Index k) {
  if (!(a.tgt() <= k && k < a.src()))
    throw Error(Errc::invalid_range, "first_aft needs tgt <= k < src");
  Index best = a.src();
  for (const PathHop& h : a.hops())
    if (h.source > k && h.source < best) best = h.source;
  return best;
}

/// Membership proof for the datum at tgt relative to a trusted digest at j:
/// an advancement path j -> tgt, the claimed datum digest, and a view that
/// additionally carries the digests at tgt's dependencies.
inline ProofBundle mk_membership(const LogStore& store, Index tgt, Index j) {
  if (tgt == 0)
    throw Error(Errc::genesis_membership,
                "genesis has no membership proof");
  if (j >= store.size() || tgt > j)
    throw Error(Errc::out_of_range, "need 0 < tgt <= j < size");
  ProofBundle bundle = mk_adv(store, tgt, j);
  bundle.member_datum = store.datum_digest(tgt);
  for (Index dep : store.hop_relation().deps_of(tgt)) {
    if (dep == 0) continue;
    bundle.view.emplace(dep, store.lookup_digest(dep));
  }
  return bundle;
}

}  // namespace aaosl
