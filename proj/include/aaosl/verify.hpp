#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aaosl/auth.hpp"
#include "aaosl/log.hpp"
#include "aaosl/proofs.hpp"
#include "aaosl/types.hpp"

namespace aaosl {

/// A digest the verifier already knows and trusts for an index.
struct TrustAnchor {
  Index index = 0;
  Digest digest{};
};

enum class RejectReason {
  malformed,
  missing_dependency,
  digest_mismatch,
  endpoint_mismatch,
  genesis_membership,
  scheme_mismatch,
  kind_mismatch,
  strict_view_conflict,
};

inline const char* reject_reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::malformed: return "malformed";
    case RejectReason::missing_dependency: return "missing-dependency";
    case RejectReason::digest_mismatch: return "digest-mismatch";
    case RejectReason::endpoint_mismatch: return "endpoint-mismatch";
    case RejectReason::genesis_membership: return "genesis-membership";
    case RejectReason::scheme_mismatch: return "scheme-mismatch";
    case RejectReason::kind_mismatch: return "kind-mismatch";
    case RejectReason::strict_view_conflict: return "strict-view-conflict";
  }
  return "unknown";
}

struct VerifyResult {
  bool accepted = false;
  RejectReason reason = RejectReason::malformed;
  std::string detail;

  static VerifyResult accept() { return {true, RejectReason::malformed, ""}; }
  static VerifyResult reject(RejectReason r, std::string detail = "") {
    return {false, r, std::move(detail)};
  }
  explicit operator bool() const { return accepted; }
};

/// Shadowing: rebuilt on-path values silently overwrite provided view
/// bindings. Strict additionally rejects when a provided binding for an
/// on-path index disagrees with the rebuilt value.
enum class RebuildMode { shadow, strict };

/// Recomputes the authenticator at every hop source of the path, walking
/// from the lowest source upward and drawing dependency digests from the
/// evolving view. Each computed value is inserted at its index. The caller
/// seeds the view with the trusted digest at the path's target (and the
/// genesis digest at 0 when the path can reach it).
///
/// Throws Error(missing_dependency) when the view lacks a required digest,
/// and Error(strict_view_conflict) in strict mode on a shadowing conflict.
inline View rebuild(const AdvPath& path, View view, const AuthScheme& scheme,
                    const HopRelation& rel,
                    RebuildMode mode = RebuildMode::shadow) {
  auto hops = path.hops();
  std::vector<Digest> deps;
  for (auto it = hops.rbegin(); it != hops.rend(); ++it) {
    Index s = it->source;
    Level m = rel.max_level(s);
    deps.clear();
    for (Level l = 1; l <= m; ++l) {
      Index dep = rel.hop_target(s, l);
      auto found = view.find(dep);
      if (found == view.end())
        throw Error(Errc::missing_dependency,
                    "view lacks digest for index " + std::to_string(dep), dep);
      deps.push_back(found->second);
    }
    Digest computed = authenticate(scheme, rel, s, it->datum_digest, deps);
    auto existing = view.find(s);
    if (existing != view.end()) {
      // hop sources are distinct, so a preexisting value was provided
      if (mode == RebuildMode::strict && existing->second != computed)
        throw Error(Errc::strict_view_conflict,
                    "provided digest at on-path index " + std::to_string(s) +
                        " disagrees with rebuilt value",
                    s);
      existing->second = computed;
    } else {
      view.emplace(s, computed);
    }
  }
  return view;
}

namespace detail {

inline VerifyResult map_rebuild_error(const Error& e) {
  switch (e.code()) {
    case Errc::missing_dependency:
      return VerifyResult::reject(RejectReason::missing_dependency, e.what());
    case Errc::strict_view_conflict:
      return VerifyResult::reject(RejectReason::strict_view_conflict, e.what());
    default:
      return VerifyResult::reject(RejectReason::malformed, e.what());
  }
}

}  // namespace detail

/// Accepts iff the bundle's path runs expected.index -> anchor.index and
/// rebuilding over the bundle's view, seeded with the anchor and the genesis
/// digest, reproduces expected.digest.
inline VerifyResult verify_advancement(const ProofBundle& bundle,
                                       const TrustAnchor& anchor,
                                       const TrustAnchor& expected,
                                       const LogParams& params,
                                       RebuildMode mode = RebuildMode::shadow) {
  if (bundle.is_membership())
    return VerifyResult::reject(RejectReason::kind_mismatch,
                                "membership bundle given to verify_advancement");
  if (bundle.path.tgt() != anchor.index || bundle.path.src() != expected.index)
    return VerifyResult::reject(
        RejectReason::endpoint_mismatch,
        "path runs " + std::to_string(bundle.path.src()) + "->" +
            std::to_string(bundle.path.tgt()));
  View view = bundle.view;
  view[0] = params.genesis;
  view[anchor.index] = anchor.digest;
  View rebuilt;
  try {
    rebuilt = rebuild(bundle.path, std::move(view), params.scheme,
                      *params.rel, mode);
  } catch (const Error& e) {
    return detail::map_rebuild_error(e);
  }
  if (rebuilt.at(expected.index) != expected.digest)
    return VerifyResult::reject(RejectReason::digest_mismatch,
                                "rebuilt digest at " +
                                    std::to_string(expected.index) +
                                    " differs from expected");
  return VerifyResult::accept();
}

/// Accepts iff the claimed datum digest at the path's target, authenticated
/// from the view's dependency digests, rebuilds along the path to
/// root.digest at root.index.
inline VerifyResult verify_membership(const ProofBundle& bundle,
                                      const TrustAnchor& root,
                                      const LogParams& params,
                                      RebuildMode mode = RebuildMode::shadow) {
  if (!bundle.is_membership())
    return VerifyResult::reject(RejectReason::kind_mismatch,
                                "advancement bundle given to verify_membership");
  Index tgt = bundle.path.tgt();
  if (tgt == 0)
    return VerifyResult::reject(RejectReason::genesis_membership,
                                "genesis has no membership proof");
  if (bundle.path.src() != root.index)
    return VerifyResult::reject(
        RejectReason::endpoint_mismatch,
        "path source " + std::to_string(bundle.path.src()) +
            " differs from trusted root index " + std::to_string(root.index));
  View view = bundle.view;
  view[0] = params.genesis;
  View rebuilt;
  try {
    // insertAuth: compute the authenticator at tgt from the claimed datum
    // digest and tgt's dependencies, then rebuild the path on top of it
    std::vector<Digest> deps;
    for (Index dep : params.rel->deps_of(tgt)) {
      auto found = view.find(dep);
      if (found == view.end())
        throw Error(Errc::missing_dependency,
                    "view lacks digest for dependency " + std::to_string(dep) +
                        " of the membership target",
                    dep);
      deps.push_back(found->second);
    }
    view[tgt] = authenticate(params.scheme, *params.rel, tgt,
                             *bundle.member_datum, deps);
    rebuilt =
        rebuild(bundle.path, std::move(view), params.scheme, *params.rel, mode);
  } catch (const Error& e) {
    return detail::map_rebuild_error(e);
  }
  if (rebuilt.at(root.index) != root.digest)
    return VerifyResult::reject(RejectReason::digest_mismatch,
                                "rebuilt digest at root differs from trusted");
  return VerifyResult::accept();
}

struct AgreementRow {
  Index index = 0;
  Digest first{};
  Digest second{};

  bool agree() const { return first == second; }
};

/// Rebuilds two bundles ending at the same source index over their own
/// views (seeded with the given anchors and genesis) and reports the
/// rebuilt digests at every commonly visited index, the shared source
/// included.
inline std::vector<AgreementRow> agreement_probe(
    const ProofBundle& a1, const TrustAnchor& anchor1, const ProofBundle& a2,
    const TrustAnchor& anchor2, const LogParams& params) {
  if (a1.path.src() != a2.path.src())
    throw Error(Errc::endpoint_mismatch,
                "agreement probe needs both paths to end at the same index");
  auto run = [&params](const ProofBundle& b, const TrustAnchor& anchor) {
    View view = b.view;
    view[0] = params.genesis;
    view[anchor.index] = anchor.digest;
    return rebuild(b.path, std::move(view), params.scheme, *params.rel);
  };
  View r1 = run(a1, anchor1);
  View r2 = run(a2, anchor2);
  std::vector<AgreementRow> rows;
  for (Index k : a1.path.visited()) {
    if (!a2.path.visits(k)) continue;
    rows.push_back({k, r1.at(k), r2.at(k)});
  }
  return rows;
}

}  // namespace aaosl
